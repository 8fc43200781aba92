import pytest
from hypothesis import given, settings, strategies as st

from seventerm.cohomology import (BarComplex, CohomologyError, NotACocycleError, bar_differential,
                                  class_of_group_extension, cocycle_to_module_extension,
                                  cohomology, module_extension_to_cocycle, q_action_on_h1,
                                  realize_extension_from_2cocycle, restriction, restriction_map)
from seventerm.fixtures import build
from seventerm.groups import GModule, builtin_group, cyclic, direct_product, make_extension
from seventerm.linalg import FgAbGroup

from conftest import context

Z2 = FgAbGroup.from_invariants([2])
FIXES = ["fix-a", "fix-b", "fix-c", "fix-d", "fix-e"]


def trivial(G, m=2):
    return GModule.trivial(G, FgAbGroup.from_invariants([m]))


def test_d0_trivial_module_is_zero():
    D = bar_differential(builtin_group("S3"), trivial(builtin_group("S3")), 0)
    assert all(x == 0 for x in D.entries)


def test_nontrivial_hom_is_cocycle():
    C2 = cyclic(2)
    D = bar_differential(C2, trivial(C2), 1)
    assert D @ [1] == [2]  # phi(g) + phi(g) - phi(1) = 2 = 0 mod 2
    assert BarComplex(C2, trivial(C2)).is_cocycle(1, [1])


@pytest.mark.parametrize("name", FIXES)
def test_d_squared_zero(name):
    ext, M = build(name)
    cx = BarComplex(ext.G, M)
    for n in range(3):
        for v in cx.cochains(n).basis():
            assert not any(cx.d(n + 1, cx.d(n, v)))


def test_known_values():
    C2 = cyclic(2)
    for n in (1, 2, 3):
        assert cohomology(C2, trivial(C2), n).group.torsion == (2,)
    V = builtin_group("V4")
    assert cohomology(V, trivial(V), 2).group.torsion == (2, 2, 2)


@pytest.mark.parametrize("name", FIXES)
def test_h0_is_invariants(name):
    ext, M = build(name)
    from seventerm.groups import invariants
    assert cohomology(ext.G, M, 0).order() == invariants(M, list(ext.G.elements())).group.order()


def test_size_limit():
    G = direct_product(cyclic(4), cyclic(4))
    M = GModule.trivial(G, FgAbGroup.from_invariants([2, 2, 2, 2]))
    with pytest.raises(CohomologyError, match="size limit"):
        cohomology(G, M, 3)  # 16^4 * 4 > 250 000
    with pytest.raises(CohomologyError, match="not supported"):
        BarComplex(G, M).d_columns(5)


@pytest.mark.parametrize("name", FIXES)
def test_classify_roundtrip(name):
    ctx = context(name)
    for h in (ctx.h1g, ctx.h2g, ctx.h1n, ctx.h2q, ctx.h3q):
        for c in h.elements():
            rep = h.representative(c)
            assert h.complex.is_cocycle(h.n, rep)
            assert h.classify(rep) == c


@settings(max_examples=25, deadline=None)
@given(st.sampled_from(FIXES), st.data())
def test_classify_ignores_coboundaries(name, data):
    ctx = context(name)
    h = ctx.h2g
    c = data.draw(st.sampled_from(h.elements()))
    C1 = ctx.cx_g.cochains(1)
    w = [data.draw(st.integers(0, m - 1)) for m in C1.moduli]
    z = [a + b for a, b in zip(h.representative(c), ctx.cx_g.d(1, w))]
    assert h.classify(z) == c


def test_classify_rejects_non_cocycle():
    C2 = cyclic(2)
    h = cohomology(C2, GModule.trivial(C2, FgAbGroup.from_invariants([4])), 1)
    with pytest.raises(NotACocycleError):
        h.classify([1])


def test_restriction_examples():
    ctx = context("fix-a")
    gen = ctx.h1g.cls(ctx.h1g.group.gens()[0])
    assert restriction(gen, ctx.h1n, ctx.ext.N).is_zero()
    full = restriction_map(ctx.h1g, ctx.h1g, list(ctx.G.elements()))
    assert full.equals(type(full).identity(ctx.h1g.group))
    G = ctx.G
    trivial_sub = make_extension(G, [0]).N_group
    h = cohomology(trivial_sub, ctx.module.restrict([0], trivial_sub), 1)
    assert restriction(gen, h, [0]).is_zero()


@pytest.mark.parametrize("name", FIXES)
def test_res_after_inf_is_zero(name):
    ctx = context(name)
    assert (ctx.res1 @ ctx.inf1).image().is_trivial()
    assert (ctx.res2 @ ctx.inf2).image().is_trivial()


def test_inflation_examples():
    ctx = context("fix-a")
    assert ctx.inf1.is_injective()
    assert ctx.inf1(ctx.h1q.group.zero()) == ctx.h1g.group.zero()
    ctx1 = context("deg-n-trivial")
    assert ctx1.inf1.is_isomorphism() and ctx1.inf2.is_isomorphism()


@pytest.mark.parametrize("name", FIXES + ["deg-n-whole"])
def test_q_action_independent_of_lifts(name):
    ctx = context(name)
    q_action_on_h1(ctx.ext, ctx.module, ctx.h1n)  # raises if two lifts disagree


def test_q_action_examples():
    assert context("fix-b").h1n_module.is_trivial_action()
    c = context("fix-c")
    assert c.h1n.group.torsion == (3,) and c.h1n_module.is_trivial_action()
    assert context("deg-n-whole").h1n_module.group.order == 1


def test_class_of_extension_examples():
    ext = make_extension(cyclic(4), [0, 2])
    A = trivial(ext.Q)
    assert class_of_group_extension(cyclic(4), [0, 2], ext.pi, A).coords == (1,)
    V = builtin_group("V4")
    extv = make_extension(V, [0, 1])
    assert class_of_group_extension(V, [0, 1], extv.pi, trivial(extv.Q)).coords == (0,)


@pytest.mark.parametrize("name", FIXES + ["fix-f", "fix-g"])
def test_realize_roundtrip(name):
    ctx = context(name)
    h = ctx.h2q
    for c in h.elements():
        f = h.representative(c)
        E = realize_extension_from_2cocycle(f, h.cochains)
        got = class_of_group_extension(E.group, E.embed, E.proj, E.module, h)
        assert got.coords == c


def test_realize_examples():
    C2 = cyclic(2)
    h = cohomology(C2, trivial(C2), 2)
    assert realize_extension_from_2cocycle([0], h.cochains).group.exponent() == 2
    assert realize_extension_from_2cocycle([1], h.cochains).group.exponent() == 4
    with pytest.raises(NotACocycleError):
        G = cyclic(3)
        hh = cohomology(G, trivial(G, 3), 2)
        realize_extension_from_2cocycle([1, 0, 0, 0], hh.cochains)


def test_h2_g_m_1_examples():
    assert context("deg-n-trivial").h2g_1.group.order() == context("deg-n-trivial").h2g.order()
    assert context("deg-n-whole").h2g_1.group.is_trivial()
    b = context("fix-b")
    assert b.h2g.group.torsion == (2, 2, 2) and b.h2g_1.group.order() == 4


@pytest.mark.parametrize("name", FIXES)
def test_module_extension_roundtrip(name):
    ctx = context(name)
    h = ctx.h1n
    for gen in h.sq.cycles.generators() + [[0] * h.cochains.dim]:
        e = cocycle_to_module_extension(gen, h.cochains)
        assert module_extension_to_cocycle(e) == h.cochains.reduce(gen)


def test_module_extension_example():
    ctx = context("fix-a")
    phi = ctx.h1n.representative((1,))
    e = cocycle_to_module_extension(phi, ctx.h1n.cochains)
    assert e.act(1, (0,), 1) == ((1,), 1)
    with pytest.raises(NotACocycleError):
        C2 = cyclic(2)
        h = cohomology(C2, GModule.trivial(C2, FgAbGroup.from_invariants([4])), 1)
        cocycle_to_module_extension([1], h.cochains)
