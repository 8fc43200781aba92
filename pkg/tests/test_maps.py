import random

import pytest
from hypothesis import given, settings, strategies as st

from seventerm.fixtures import build
from seventerm.maps import (HomNT, PreconditionError, compare_fiber_vs_out, compare_naive_semidirect,
                            d2_fiber_product, delta_out_construction, exactness, random_coboundary,
                            rho, rho_from_cocycle, seven_term, tr_normalizer, well_definedness)
from seventerm.verdicts import FAIL, PASS, SKIPPED

from conftest import context

FIXES = ["fix-a", "fix-b", "fix-c", "fix-d", "fix-e", "fix-f", "fix-g"]
DEGENERATE = ["deg-n-trivial", "deg-n-whole"]


def test_tr_examples():
    a = context("fix-a")
    assert [a.tr(u) for u in a.h1n_inv.group.elements()] == [(0,), (1,)]
    c = context("fix-c")
    assert c.h2q.group.is_trivial() and c.tr.image().is_trivial()
    for name in FIXES:
        ctx = context(name)
        zero = ctx.invariant_cocycle(ctx.h1n_inv.group.zero())
        assert tr_normalizer(ctx, zero) == ctx.h2q.group.zero()


def test_tr_fix_f_is_an_isomorphism():
    f = context("fix-f")
    assert f.tr.is_isomorphism()


def test_delta_out_examples():
    ctx = context("deg-n-whole")
    for u in ctx.h1n_inv.group.elements():
        assert delta_out_construction(ctx, ctx.invariant_cocycle(u))[1] == ()
    a = context("fix-a")
    gen = a.invariant_cocycle((1,))
    assert delta_out_construction(a, gen)[1] == (1,)


@pytest.mark.parametrize("name", FIXES + DEGENERATE)
def test_three_constructions_agree(name):
    ctx = context(name)
    for u in ctx.h1n_inv.group.elements():
        phi = ctx.invariant_cocycle(u)
        a = tr_normalizer(ctx, phi)
        assert delta_out_construction(ctx, phi)[1] == a
        assert d2_fiber_product(ctx, phi) == a


@pytest.mark.parametrize("name", ["fix-a", "fix-c", "fix-d", "fix-f", "fix-g"])
def test_explicit_isomorphisms(name):
    ctx = context(name)
    for u in ctx.h1n_inv.group.elements():
        phi = ctx.invariant_cocycle(u)
        assert compare_fiber_vs_out(ctx, phi).status == PASS
        assert compare_naive_semidirect(ctx, phi).status == PASS


@pytest.mark.parametrize("name", FIXES)
def test_derivation_checks(name):
    ctx = context(name)
    for u in ctx.h1n_inv.group.elements():
        hom = HomNT(ctx, ctx.invariant_cocycle(u))
        assert all(v.status == PASS for v in hom.check_derivation())


def test_non_invariant_class_rejected():
    # S3 with N = A3 and M = Z/3 trivial: Q inverts H^1(A3, Z/3)
    from seventerm.groups import GModule, builtin_group, make_extension
    from seventerm.linalg import FgAbGroup
    from seventerm.maps import SevenTermContext
    S3 = builtin_group("S3")
    ctx = SevenTermContext(make_extension(S3, [0, 3, 4]),
                           GModule.trivial(S3, FgAbGroup.from_invariants([3])))
    assert ctx.h1n.group.torsion == (3,) and ctx.h1n_inv.group.is_trivial()
    phi = ctx.h1n.representative((1,))
    with pytest.raises(PreconditionError, match="not Q-invariant"):
        tr_normalizer(ctx, phi)


def test_rho_examples():
    for name in FIXES + DEGENERATE:
        ctx = context(name)
        assert rho(ctx, ctx.h2g_1.group.zero()) == ctx.h1q_h1n.group.zero()
    t = context("deg-n-trivial")
    assert t.h1q_h1n.group.is_trivial() and t.rho.image().is_trivial()
    b = context("fix-b")
    assert b.rho.image().order() == 2
    d = context("fix-d")
    assert d.rho.image().order() == d.oracle.d2(1, 1).kernel().order()


@settings(max_examples=20, deadline=None)
@given(st.sampled_from(["fix-b", "fix-d", "fix-g"]), st.integers(0, 10 ** 6))
def test_rho_ignores_coboundaries_and_section(name, seed):
    ctx = context(name)
    rng = random.Random(seed)
    u = rng.choice(ctx.h2g_1.group.elements())
    z = ctx.h2g_1_cocycle(u)
    b = random_coboundary(ctx.cx_g, 2, rng)
    z2 = ctx.cx_g.cochains(2).reduce([x + y for x, y in zip(z, b)])
    assert rho_from_cocycle(ctx, z2).cls == ctx.rho(u)


@settings(max_examples=20, deadline=None)
@given(st.sampled_from(["fix-a", "fix-d", "fix-f"]), st.integers(0, 10 ** 6))
def test_tr_ignores_coboundaries(name, seed):
    ctx = context(name)
    rng = random.Random(seed)
    u = rng.choice(ctx.h1n_inv.group.elements())
    phi = ctx.invariant_cocycle(u)
    b = random_coboundary(ctx.cx_n, 1, rng)
    phi2 = ctx.cx_n.cochains(1).reduce([x + y for x, y in zip(phi, b)])
    assert tr_normalizer(ctx, phi2) == ctx.tr(u)


@pytest.mark.parametrize("name", FIXES + DEGENERATE)
def test_exactness(name):
    for v in exactness(context(name)):
        assert v.status == PASS, (v.name, v.witness)


@pytest.mark.parametrize("name", ["fix-a", "fix-c"])
def test_well_definedness(name):
    for v in well_definedness(context(name), seed=7):
        assert v.status == PASS, (v.name, v.witness)


@pytest.mark.parametrize("name", ["fix-a", "deg-n-trivial", "deg-n-whole"])
def test_seven_term_full(name):
    ext, M = build(name)
    report = seven_term(ext, M, ctx=context(name))
    assert report.ok, [(v.name, v.witness) for v in report.verdicts() if not v.ok]
    assert report.sign["agree"] == report.sign["domain"]


def test_seven_term_degree_two_skips_last_junction():
    ext, M = build("fix-a")
    report = seven_term(ext, M, checks="exactness", degree_max=2)
    last = report.junctions[-1]
    assert last.status == SKIPPED and "degree cap" in last.detail
    assert report.coincidence == [] and report.ok


def test_zero_module():
    from seventerm.groups import GModule, builtin_group, make_extension
    from seventerm.linalg import FgAbGroup
    G = builtin_group("D8")
    report = seven_term(make_extension(G, [0, 2]), GModule.trivial(G, FgAbGroup.trivial()))
    assert report.ok
    assert all(g.is_trivial() for g in report.groups.values())


def test_failing_junction_reports_witness():
    ctx = context("fix-a")
    from seventerm.maps import _subgroup_verdict
    v = _subgroup_verdict("probe", ctx.inf1.image(), ctx.inf1.kernel())
    assert v.status == FAIL and v.witness["in_image_not_kernel"] is not None
