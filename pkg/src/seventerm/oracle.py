"""Hochschild-Serre filtration of the normalized bar complex and its low pages.

Everything lives in the cochain coordinates of ``C^n(G,M)``. ``F^p C^n``
consists of cochains that depend on the first ``n-p`` arguments and only on
the cosets of the last ``p`` (hence vanish when a trailing argument is in
N). Pages use

    Z_r^p = F^p  meet  d^-1(F^(p+r))
    E_r^{p,q} = Z_r^p / (Z_(r-1)^(p+1) + d Z_(r-1)^(p-r+1))

with ``F^p = C`` for ``p <= 0`` and ``F^p C^n = 0`` for ``p > n``.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field

from .cohomology import NotACocycleError, inflation_cochain, pullback_cochain
from .groups import GroupError
from .linalg import (AbHom, Lattice, LinearSolver, NotInSubgroupError, Subgroup, Subquotient,
                     kernel_lattice, reduce_vec)
from .verdicts import FAIL, PASS, Verdict

SUPPORTED = {(0, 0), (1, 0), (0, 1), (2, 0), (1, 1), (0, 2), (3, 0)}
D2_SUPPORTED = {(0, 1), (1, 1)}
STABLE = 4  # r at which every page with p + q <= 2 has stabilized


class OracleError(ValueError):
    pass


@dataclass
class SpectralPage:
    r: int
    p: int
    q: int
    sq: Subquotient = field(repr=False)

    @property
    def group(self):
        return self.sq.group

    def project(self, vec) -> tuple[int, ...]:
        return self.sq.project(vec)

    def lift(self, c) -> list[int]:
        return self.sq.lift(c)


class LHSOracle:
    """Pages ``E_r^{p,q}`` for ``p + q <= 3`` and the differentials needed by the sequence."""

    def __init__(self, ctx):
        self.ctx = ctx
        self.ext = ctx.ext
        self.cx = ctx.cx_g
        self.k = ctx.module.dims
        self._basis = {}
        self._z = {}
        self._pages = {}
        self._d2 = {}
        self.fibers = [[g for g in self.ext.G.elements() if self.ext.pi[g] == q]
                       for q in self.ext.Q.elements()]

    # filtration ------------------------------------------------------------

    def filtration_basis(self, n: int, p: int) -> list[list[int]]:
        """Generators of ``F^p C^n``: indicator cochains of (prefix, trailing cosets, coordinate)."""
        key = (n, p)
        if key in self._basis:
            return self._basis[key]
        C = self.cx.cochains(n)
        if p <= 0:
            out = C.basis()
        elif p > n:
            out = []
        else:
            G, Q = self.ext.G, self.ext.Q
            out = []
            for prefix in itertools.product(range(1, G.order), repeat=n - p):
                for qs in itertools.product(range(1, Q.order), repeat=p):
                    tuples = [prefix + tail
                              for tail in itertools.product(*(self.fibers[q] for q in qs))]
                    for j in range(self.k):
                        v = [0] * C.dim
                        for t in tuples:
                            v[C.index(t) * self.k + j] = 1
                        out.append(v)
        self._basis[key] = out
        return out

    def filtration_moduli(self, n: int, p: int) -> list[int]:
        """Coefficient moduli for the generators returned by :meth:`filtration_basis`."""
        mods = self.ctx.module.moduli
        return [mods[i % self.k] for i in range(len(self.filtration_basis(n, p)))]

    def defect(self, n: int, p: int, vec) -> list[int]:
        """Vanishes exactly on ``F^p C^n``."""
        C = self.cx.cochains(n)
        if p <= 0:
            return [0] * C.dim
        if p > n:
            return C.reduce(vec)
        pi, sigma, k = self.ext.pi, self.ext.sigma, self.k
        out = [0] * C.dim
        for t in C.tuples():
            i = C.index(t) * k
            tail = t[n - p:]
            if any(pi[g] == 0 for g in tail):
                out[i:i + k] = vec[i:i + k]
                continue
            star = t[:n - p] + tuple(sigma[pi[g]] for g in tail)
            if star == t:
                continue
            j = C.index(star) * k
            out[i:i + k] = [a - b for a, b in zip(vec[i:i + k], vec[j:j + k])]
        return C.reduce(out)

    def in_filtration(self, n: int, p: int, vec) -> bool:
        return not any(self.defect(n, p, vec))

    def filtration_lattice(self, n: int, p: int) -> Lattice:
        return Lattice.span(self.filtration_basis(n, p), self.cx.cochains(n).moduli)

    def z(self, r: int, p: int, n: int) -> Lattice:
        """``Z_r^p`` in ``C^n``."""
        level = min(max(p + r, 0), n + 2)  # F^level C^(n+1); 0 = no condition, n+2 = zero
        p = max(p, 0)
        key = (p, level, n)
        if key in self._z:
            return self._z[key]
        C = self.cx.cochains(n) if n >= 0 else None
        if n < 0:
            lat = Lattice.zero(())
        elif p > n:
            lat = Lattice.zero(C.moduli)
        elif level == 0:
            lat = Lattice.span(self.filtration_basis(n, p), C.moduli)
        else:
            basis = self.filtration_basis(n, p)
            images = [self.defect(n + 1, level, self.cx.d(n, b)) for b in basis]
            ker = kernel_lattice(images, self.filtration_moduli(n, p),
                                 self.cx.cochains(n + 1).moduli)
            gens = []
            for coeffs in ker.generators():
                v = [0] * C.dim
                for c, b in zip(coeffs, basis):
                    if c:
                        for i, x in enumerate(b):
                            if x:
                                v[i] += c * x
                gens.append(v)
            lat = Lattice.span(gens, C.moduli)
        self._z[key] = lat
        return lat

    # pages ------------------------------------------------------------------

    def page(self, r: int, p: int, q: int) -> SpectralPage:
        if (p, q) not in SUPPORTED:
            raise OracleError(f"E_r^{{{p},{q}}} is not supported; use one of {sorted(SUPPORTED)}")
        if r < 1:
            raise OracleError("page index r must be at least 1")
        key = (r, p, q)
        if key not in self._pages:
            n = p + q
            Z = self.z(r, p, n)
            B = self.z(r - 1, p + 1, n)
            if n >= 1:
                src = self.z(r - 1, p - r + 1, n - 1)
                B = B + Lattice.span([self.cx.d(n - 1, g) for g in src.generators()],
                                     Z.moduli)
            self._pages[key] = SpectralPage(r, p, q, Subquotient(Z, B))
        return self._pages[key]

    def e2_page(self, p: int, q: int) -> SpectralPage:
        return self.page(2, p, q)

    def d2(self, p: int, q: int) -> AbHom:
        """``d_2: E_2^{p,q} -> E_2^{p+2,q-1}`` on lifted representatives."""
        if (p, q) not in D2_SUPPORTED:
            raise OracleError(f"d_2 is only computed out of {sorted(D2_SUPPORTED)}")
        if (p, q) not in self._d2:
            src, tgt = self.page(2, p, q), self.page(2, p + 2, q - 1)
            images = [self._d2_lifted(src, tgt, src.lift(g)) for g in src.group.gens()]
            self._d2[(p, q)] = AbHom.from_images(src.group, tgt.group, images)
        return self._d2[(p, q)]

    def _d2_lifted(self, src: SpectralPage, tgt: SpectralPage, x) -> tuple[int, ...]:
        n = src.p + src.q
        dx = self.cx.d(n, x)
        try:
            return tgt.project(dx)
        except NotInSubgroupError:
            raise OracleError(f"d of a representative of E_2^{{{src.p},{src.q}}} "
                              f"does not land in F^{src.p + 2}") from None

    def d2_well_defined(self, p: int, q: int, rng: random.Random, trials: int = 3) -> Verdict:
        name = f"d2^{{{p},{q}}} well defined"
        src, tgt = self.page(2, p, q), self.page(2, p + 2, q - 1)
        hom = self.d2(p, q)
        bgens = src.sq.boundaries.generators()
        count = 0
        for c in src.group.elements():
            x = src.lift(c)
            for _ in range(trials):
                y = list(x)
                for b in bgens:
                    t = rng.randrange(5)
                    y = [u + t * v for u, v in zip(y, b)]
                y = reduce_vec(y, src.sq.moduli)
                count += 1
                if self._d2_lifted(src, tgt, y) != hom(c):
                    return Verdict(name, FAIL, "perturbed representative changes d2", c)
        return Verdict(name, PASS, f"{count} perturbed representatives", data={"trials": count})

    # edges --------------------------------------------------------------------

    def row_edge(self, p: int) -> AbHom:
        """``H^p(Q,M^N) -> E_2^{p,0}`` by inflation."""
        ctx = self.ctx
        hq = {2: ctx.h2q, 3: ctx.h3q}.get(p) or ctx.cx_q.cohomology(p)
        page = self.page(2, p, 0)
        images = []
        for g in hq.group.gens():
            vec = inflation_cochain(self.ext, hq.representative(g), hq.cochains,
                                    self.cx.cochains(p), ctx.mn_incl)
            images.append(page.project(vec))
        return AbHom.from_images(hq.group, page.group, images)

    def col_edge(self) -> AbHom:
        """``E_2^{0,1} -> H^1(N,M)^Q`` by restriction to N."""
        ctx = self.ctx
        page = self.page(2, 0, 1)
        images = []
        for g in page.group.gens():
            vec = pullback_cochain(page.lift(g), self.cx.cochains(1), ctx.cx_n.cochains(1),
                                   self.ext.N)
            images.append(ctx.h1n_inv.project(ctx.h1n.classify(vec)))
        return AbHom.from_images(page.group, ctx.h1n_inv.group, images)

    def edge_identifications(self):
        return self.row_edge(2), self.row_edge(3), self.col_edge()

    def col_edge_inverse(self) -> dict:
        col = self.col_edge()
        if not col.is_isomorphism():
            raise OracleError("column edge map is not an isomorphism")
        return {col(e): e for e in col.source.elements()}

    # E_infinity -----------------------------------------------------------------

    def einfty_11(self) -> Subquotient:
        """``E_inf^{1,1} = ker d_2^{1,1}`` inside ``E_2^{1,1}``."""
        return self.d2(1, 1).kernel().presentation()

    def h2_filtration(self, p: int) -> Subgroup:
        """``F^p H^2(G,M)``: classes of cocycles in ``F^p C^2``."""
        h2 = self.ctx.h2g
        gens = [h2.classify(v) for v in self.z(STABLE, p, 2).generators()]
        return Subgroup.generated(h2.group, gens)

    def f1_adjust(self, z) -> list[int]:
        """``z + d w`` lying in ``F^1 C^2``, for a cocycle ``z`` whose class restricts to 0 on N."""
        if not hasattr(self, "_f1_solver"):
            C1 = self.cx.cochains(1)
            images = [self.defect(2, 1, self.cx.d(1, b)) for b in C1.basis()]
            self._f1_solver = LinearSolver(images, self.cx.cochains(2).moduli, C1.moduli)
        w = self._f1_solver.solve([-a for a in self.defect(2, 1, z)])
        if w is None:
            raise OracleError("class cannot be moved into F^1 C^2; it does not restrict to 0 on N")
        return self.cx.cochains(2).reduce([a + b for a, b in zip(z, self.cx.d(1, w))])

    def f1_representative_class(self, u) -> tuple[int, ...]:
        """Element of ``E_2^{1,1}`` for ``u`` in ``H^2(G,M)_1`` (its own coordinates)."""
        return self.f1_class_of_cocycle(self.ctx.h2g_1_cocycle(u))

    def f1_class_of_cocycle(self, z) -> tuple[int, ...]:
        return self.page(2, 1, 1).project(self.f1_adjust(z))

    def f1_map(self) -> AbHom:
        dom = self.ctx.h2g_1.group
        return AbHom.from_images(dom, self.page(2, 1, 1).group,
                                 [self.f1_representative_class(u) for u in dom.gens()])


# ---------------------------------------------------------------------------
# comparison


@dataclass
class ComparisonReport:
    verdicts: list
    self_checks: list
    twist: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(v.ok for v in self.verdicts + self.self_checks)


def hs_filtration(ctx) -> LHSOracle:
    """The filtered complex of ``ctx``'s extension (lazy; bases are built on demand)."""
    return ctx.oracle


def e2_page(ctx, p: int, q: int) -> SpectralPage:
    return ctx.oracle.page(2, p, q)


def d2_oracle(ctx, p: int, q: int) -> AbHom:
    return ctx.oracle.d2(p, q)


def edge_identifications(ctx):
    return ctx.oracle.edge_identifications()


def einfty_11(ctx) -> Subquotient:
    return ctx.oracle.einfty_11()


def f1_representative_class(ctx, u) -> tuple[int, ...]:
    return ctx.oracle.f1_representative_class(u)


def transgression_vs_d2(ctx, mutate=None) -> tuple[Verdict, dict]:
    """Criterion (a): ``row o tr = d2^{0,1} o col^-1`` on every element of ``H^1(N,M)^Q``."""
    from .maps import tr_normalizer
    name = "row o tr = d2^{0,1} o col^-1"
    orc = ctx.oracle
    row, d2 = orc.row_edge(2), orc.d2(0, 1)
    col_inv = orc.col_edge_inverse()
    E = row.target
    agree = twisted = 0
    witness = None
    dom = ctx.h1n_inv.group.elements()
    for u in dom:
        try:
            t = tr_normalizer(ctx, ctx.invariant_cocycle(u), mutate=mutate)
        except (NotACocycleError, GroupError) as e:
            return Verdict(name, FAIL, f"tr failed: {e}",
                           {"class": u, "error": str(e)}), {}
        lhs = row(t)
        rhs = d2(col_inv[u])
        if lhs == rhs:
            agree += 1
        elif witness is None:
            witness = {"class": u, "row(tr)": lhs, "d2(col^-1)": rhs}
        if lhs == E.neg(rhs):
            twisted += 1
    n = len(dom)
    twist = {"agree": agree, "agree_with_minus_d2": twisted, "domain": n,
             "sign_visible": any(E.neg(d2(c)) != d2(c) for c in d2.source.elements())}
    v = Verdict.check(name, agree == n, f"{agree}/{n} elements agree", witness, **twist)
    return v, twist


def rho_vs_einfty(ctx) -> list[Verdict]:
    orc = ctx.oracle
    rho, f1 = ctx.rho, orc.f1_map()
    ker_d2 = orc.d2(1, 1).kernel()
    out = [
        Verdict.check("|im rho| = |E_inf^{1,1}|", rho.image().order() == ker_d2.order(),
                      f"{rho.image().order()} vs {ker_d2.order()}",
                      (rho.image().order(), ker_d2.order())),
        Verdict.check("ker rho = ker f1", rho.kernel() == f1.kernel(), "",
                      (rho.kernel().generators(), f1.kernel().generators())),
        Verdict.check("im f1 = E_inf^{1,1}", f1.image() == ker_d2, "",
                      (f1.image().generators(), ker_d2.generators())),
    ]
    incl = ctx.h2g_1.inclusion()
    ker_rho = rho.kernel().image_under(incl)
    im_inf = ctx.inf2.image().intersection(ctx.res2.kernel())
    out.append(Verdict.check("ker rho = im inf meet H^2(G,M)_1", ker_rho == im_inf, "",
                             (ker_rho.generators(), im_inf.generators())))
    return out


def f1_well_defined(ctx, rng: random.Random, trials: int = 3) -> Verdict:
    orc = ctx.oracle
    name = "f1 independent of representative and adjustment"
    Z10 = orc.z(1, 0, 1).generators()  # w with d w in F^1
    count = 0
    for u in ctx.h2g_1.group.elements():
        z = ctx.h2g_1_cocycle(u)
        base = orc.f1_class_of_cocycle(z)
        for _ in range(trials):
            from .maps import random_coboundary
            z2 = [a + b for a, b in zip(z, random_coboundary(ctx.cx_g, 2, rng))]
            w = [0] * ctx.cx_g.cochains(1).dim
            for g in Z10:
                c = rng.randrange(3)
                w = [a + c * b for a, b in zip(w, g)]
            adjusted = [a + b for a, b in zip(orc.f1_adjust(z2), ctx.cx_g.d(1, w))]
            count += 1
            if orc.page(2, 1, 1).project(ctx.cx_g.cochains(2).reduce(adjusted)) != base:
                return Verdict(name, FAIL, "", u)
    return Verdict(name, PASS, f"{count} perturbations", data={"trials": count})


def oracle_self_checks(ctx, rng: random.Random) -> list[Verdict]:
    orc, cx = ctx.oracle, ctx.cx_g
    top = 3 if ctx.degree_max >= 3 else 2
    out = []
    # d o d = 0
    bad = None
    for n in range(top):
        for v in cx.cochains(n).basis():
            if any(cx.d(n + 1, cx.d(n, v))):
                bad = bad or (n, v.index(1))
    out.append(Verdict.check("d o d = 0", bad is None, f"degrees 0..{top - 1}", bad))
    # d(F^p) in F^p and F^(p+1) in F^p
    bad_d = bad_dec = None
    for n in range(top + 1):
        for p in range(1, n + 1):
            for i, b in enumerate(orc.filtration_basis(n, p)):
                if n < 4 and not orc.in_filtration(n + 1, p, cx.d(n, b)):
                    bad_d = bad_d or (n, p, i)
            for i, b in enumerate(orc.filtration_basis(n, p + 1)):
                if not orc.in_filtration(n, p, b):
                    bad_dec = bad_dec or (n, p, i)
    out.append(Verdict.check("d(F^p) in F^p", bad_d is None, f"n <= {top}", bad_d))
    out.append(Verdict.check("filtration decreasing", bad_dec is None, "", bad_dec))
    # edges
    edges = [("row edge H^2(Q,M^N) -> E2^{2,0}", orc.row_edge(2)),
             ("col edge E2^{0,1} -> H^1(N,M)^Q", orc.col_edge())]
    if top >= 3:
        edges.insert(1, ("row edge H^3(Q,M^N) -> E2^{3,0}", orc.row_edge(3)))
    for name, f in edges:
        out.append(Verdict.check(name, f.is_isomorphism(), "order and kernel checks",
                                 {"source": str(f.source), "target": str(f.target),
                                  "kernel": f.kernel().generators()}))
    # E2 orders against the Q-side groups
    e2 = {pq: orc.page(2, *pq).group.order() for pq in [(0, 1), (2, 0), (1, 1)]}
    out.append(Verdict.check("|E2^{0,1}| = |H^1(N,M)^Q|",
                             e2[(0, 1)] == ctx.h1n_inv.group.order(), "",
                             (e2[(0, 1)], ctx.h1n_inv.group.order())))
    out.append(Verdict.check("|E2^{2,0}| = |H^2(Q,M^N)|", e2[(2, 0)] == ctx.h2q.order(), "",
                             (e2[(2, 0)], ctx.h2q.order())))
    out.append(Verdict.check("|E2^{1,1}| = |H^1(Q,H^1(N,M))|",
                             e2[(1, 1)] == ctx.h1q_h1n.order(), "",
                             (e2[(1, 1)], ctx.h1q_h1n.order())))
    # next pages agree with ker / coker of d2
    d01 = orc.d2(0, 1)
    checks = [("|E3^{0,1}| = |ker d2^{0,1}|", orc.page(3, 0, 1).group.order(),
               d01.kernel().order()),
              ("|E3^{2,0}| = |coker d2^{0,1}|", orc.page(3, 2, 0).group.order(),
               d01.target.order() // d01.image().order())]
    if top >= 3:
        d11 = orc.d2(1, 1)
        checks.append(("|E3^{1,1}| = |ker d2^{1,1}|", orc.page(3, 1, 1).group.order(),
                       d11.kernel().order()))
    for name, a, b in checks:
        out.append(Verdict.check(name, a == b, f"{a} vs {b}", (a, b)))
    # order bookkeeping across the filtration of H^2
    h2 = ctx.h2g.order()
    f1, f2 = orc.h2_filtration(1).order(), orc.h2_filtration(2).order()
    e20 = orc.page(STABLE, 2, 0).group.order()
    e11 = orc.page(STABLE, 1, 1).group.order()
    e02 = orc.page(STABLE, 0, 2).group.order()
    data = {"|H^2(G,M)|": h2, "|E_inf^{2,0}|": e20, "|E_inf^{1,1}|": e11, "|E_inf^{0,2}|": e02,
            "|F^1 H^2|": f1, "|F^2 H^2|": f2}
    ok = h2 == e20 * e11 * e02 and f2 == e20 and f1 == e20 * e11
    if top >= 3:
        ok = ok and e11 == orc.d2(1, 1).kernel().order()
    ok = ok and e20 == d01.target.order() // d01.image().order()
    out.append(Verdict.check("|H^2| = |E_inf^{2,0}| |E_inf^{1,1}| |E_inf^{0,2}|", ok,
                             "stable pages, d2 kernels and the filtration of H^2 agree",
                             data, **data))
    out.append(orc.d2_well_defined(0, 1, rng))
    if top >= 3:
        out.append(orc.d2_well_defined(1, 1, rng))
    return out


def compare_with_oracle(ctx, seed: int = 0, mutate=None,
                        include_exactness: bool = True) -> ComparisonReport:
    rng = random.Random(seed)
    tv, twist = transgression_vs_d2(ctx, mutate)
    verdicts = [tv]
    if ctx.degree_max >= 3:
        verdicts += rho_vs_einfty(ctx)
        verdicts.append(f1_well_defined(ctx, rng))
    else:
        verdicts.append(Verdict.skipped("rho vs E_inf^{1,1}", "degree cap below 3"))
    if include_exactness:
        from .maps import exactness
        verdicts += exactness(ctx)
    return ComparisonReport(verdicts, oracle_self_checks(ctx, rng), twist)


__all__ = [
    "ComparisonReport", "LHSOracle", "OracleError", "SpectralPage", "SUPPORTED",
    "compare_with_oracle", "d2_oracle", "e2_page", "edge_identifications", "einfty_11",
    "f1_representative_class", "hs_filtration", "oracle_self_checks", "transgression_vs_d2",
]
