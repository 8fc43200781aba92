"""Normalized bar cohomology in degrees 0..3 and the standard maps between groups."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable, Sequence

from .groups import (ExtensionGroup, FiniteGroup, GModule, GroupError, GroupExtension,
                     extension_group, invariant_module)
from .linalg import AbHom, FgAbGroup, Lattice, LinearSolver, Subgroup, Subquotient, \
    kernel_lattice, reduce_vec

# cap on |group|^(n+1) * (module generators) for a single differential
SIZE_LIMIT = 250_000
MAX_DEGREE = 4


class CohomologyError(ValueError):
    pass


class NotACocycleError(CohomologyError):
    def __init__(self, msg, witness=None):
        super().__init__(msg if witness is None else f"{msg} (witness {witness})")
        self.witness = witness


class Cochains:
    """Normalized n-cochains: one module value per n-tuple of non-identity elements.

    A cochain is a flat list; the value at tuple ``t`` occupies
    ``k*index(t) : k*index(t)+k`` where ``k`` is the number of module
    coordinates. Tuples containing the identity are implicitly 0.
    """

    def __init__(self, group: FiniteGroup, module: GModule, n: int):
        if module.group is not group and module.group != group:
            raise CohomologyError("module is over a different group")
        self.group = group
        self.module = module
        self.n = n
        self.k = module.dims
        self.base = group.order - 1
        self.count = self.base ** n
        self.dim = self.count * self.k
        self.moduli = module.moduli * self.count

    def tuples(self):
        return itertools.product(range(1, self.group.order), repeat=self.n)

    def index(self, t: Sequence[int]) -> int:
        i = 0
        for g in t:
            i = i * self.base + (g - 1)
        return i

    def value(self, vec: Sequence[int], t: Sequence[int]) -> tuple[int, ...]:
        if any(g == 0 for g in t):
            return (0,) * self.k
        i = self.index(t) * self.k
        return tuple(vec[i:i + self.k])

    def zero(self) -> list[int]:
        return [0] * self.dim

    def reduce(self, vec) -> list[int]:
        return reduce_vec(vec, self.moduli)

    def from_function(self, f: Callable) -> list[int]:
        out = []
        for t in self.tuples():
            out.extend(f(*t))
        return self.reduce(out)

    def basis(self) -> list[list[int]]:
        out = []
        for i in range(self.dim):
            e = [0] * self.dim
            e[i] = 1
            out.append(e)
        return out


class BarComplex:
    """Caches cochain spaces, sparse differentials and cohomology for one (group, module)."""

    def __init__(self, group: FiniteGroup, module: GModule):
        self.group = group
        self.module = module
        self._cochains = {}
        self._d = {}
        self._h = {}

    def cochains(self, n: int) -> Cochains:
        if n not in self._cochains:
            self._cochains[n] = Cochains(self.group, self.module, n)
        return self._cochains[n]

    def d_columns(self, n: int) -> list[list[tuple[int, int]]]:
        """Sparse columns of ``d: C^n -> C^(n+1)``."""
        if n in self._d:
            return self._d[n]
        if not 0 <= n < MAX_DEGREE:
            raise CohomologyError(f"differential in degree {n} is not supported")
        G, k = self.group, self.module.dims
        if G.order ** (n + 1) * max(k, 1) > SIZE_LIMIT:
            raise CohomologyError(
                f"size limit exceeded: |G|^{n + 1} * {k} > {SIZE_LIMIT}")
        src, tgt = self.cochains(n), self.cochains(n + 1)
        cols = [dict() for _ in range(src.dim)]
        act = self.module.act

        def add(row, blk, sign):
            base = blk * k
            for i in range(k):
                c = cols[base + i]
                c[row + i] = c.get(row + i, 0) + sign

        for t in tgt.tuples():
            row = tgt.index(t) * k
            A = act[t[0]]
            blk = src.index(t[1:]) * k
            for i in range(k):
                Ai = A[i]
                for j in range(k):
                    if Ai[j]:
                        c = cols[blk + j]
                        c[row + i] = c.get(row + i, 0) + Ai[j]
            for i in range(1, n + 1):
                p = G.table[t[i - 1]][t[i]]
                if p:
                    add(row, src.index(t[:i - 1] + (p,) + t[i + 1:]), (-1) ** i)
            if n >= 0 and all(t[:n]):
                add(row, src.index(t[:n]), (-1) ** (n + 1))
        self._d[n] = [[(r, c) for r, c in sorted(col.items()) if c] for col in cols]
        return self._d[n]

    def d(self, n: int, vec: Sequence[int]) -> list[int]:
        tgt = self.cochains(n + 1)
        out = [0] * tgt.dim
        for c, v in zip(self.d_columns(n), vec):
            if v:
                for r, a in c:
                    out[r] += a * v
        return tgt.reduce(out)

    def d_images(self, n: int) -> list[list[int]]:
        """Dense images of the coordinate basis of ``C^n``."""
        dim = self.cochains(n + 1).dim
        out = []
        for col in self.d_columns(n):
            v = [0] * dim
            for r, a in col:
                v[r] = a
            out.append(self.cochains(n + 1).reduce(v))
        return out

    def differential_matrix(self, n: int) -> list[list[int]]:
        rows = self.cochains(n + 1).dim
        M = [[0] * self.cochains(n).dim for _ in range(rows)]
        for j, col in enumerate(self.d_columns(n)):
            for r, a in col:
                M[r][j] = a
        return M

    def is_cocycle(self, n: int, vec) -> bool:
        return not any(self.d(n, vec))

    def cohomology(self, n: int) -> "CohomologyGroup":
        if n not in self._h:
            self._h[n] = CohomologyGroup(self, n)
        return self._h[n]


def bar_differential(group: FiniteGroup, module: GModule, n: int):
    """Matrix of ``d: C^n -> C^(n+1)`` on normalized cochains (rows index ``C^(n+1)``)."""
    from .linalg import IntMatrix
    cx = BarComplex(group, module)
    return IntMatrix.from_rows(cx.differential_matrix(n), cx.cochains(n).dim)


class CohomologyGroup:
    """``ker d^n / im d^(n-1)`` with representatives and classification."""

    def __init__(self, complex: BarComplex, n: int):
        if not 0 <= n <= 3:
            raise CohomologyError("degree must be between 0 and 3")
        self.complex = complex
        self.n = n
        self.cochains = complex.cochains(n)
        C = self.cochains
        Z = kernel_lattice(complex.d_images(n), C.moduli, complex.cochains(n + 1).moduli)
        if n == 0:
            B = Lattice.zero(C.moduli)
        else:
            B = Lattice.span(complex.d_images(n - 1), C.moduli)
        self.sq = Subquotient(Z, B)
        self.group: FgAbGroup = self.sq.group
        self._coboundary_solver = None

    @property
    def base_group(self) -> FiniteGroup:
        return self.complex.group

    @property
    def module(self) -> GModule:
        return self.complex.module

    def order(self) -> int:
        return self.group.order()

    def classify(self, vec: Sequence[int]) -> tuple[int, ...]:
        vec = self.cochains.reduce(vec)
        dv = self.complex.d(self.n, vec)
        if any(dv):
            i = next(i for i, a in enumerate(dv) if a)
            raise NotACocycleError(f"cochain is not a {self.n}-cocycle", i)
        return self.sq.project(vec)

    def representative(self, c: Sequence[int]) -> list[int]:
        return self.sq.lift(self.group.reduce(c))

    def cls(self, c) -> "CohomologyClass":
        c = self.group.reduce(c)
        return CohomologyClass(self, c, self.representative(c))

    def class_of(self, vec) -> "CohomologyClass":
        return CohomologyClass(self, self.classify(vec), self.cochains.reduce(vec))

    def elements(self):
        return self.group.elements()

    def coboundary_preimage(self, vec) -> list[int] | None:
        """Some ``w`` with ``d w = vec``, or None."""
        if self.n == 0:
            return None if any(vec) else []
        if self._coboundary_solver is None:
            cx = self.complex
            self._coboundary_solver = LinearSolver(cx.d_images(self.n - 1), self.cochains.moduli,
                                                   cx.cochains(self.n - 1).moduli)
        return self._coboundary_solver.solve(vec)


@dataclass
class CohomologyClass:
    parent: CohomologyGroup
    coords: tuple
    representative: list

    def is_zero(self) -> bool:
        return not any(self.coords)


def cohomology(group: FiniteGroup, module: GModule, n: int) -> CohomologyGroup:
    return BarComplex(group, module).cohomology(n)


# ---------------------------------------------------------------------------
# maps


def pullback_cochain(vec, src: Cochains, tgt: Cochains, group_map: Sequence[int],
                     coeff_map: Callable | None = None) -> list[int]:
    """``(f*)(g1..gn) = coeff_map(vec(group_map(g1), ..., group_map(gn)))``."""
    out = []
    for t in tgt.tuples():
        v = src.value(vec, tuple(group_map[g] for g in t))
        out.extend(coeff_map(v) if coeff_map else v)
    return tgt.reduce(out)


def induced_map(src: CohomologyGroup, tgt: CohomologyGroup, cochain_map: Callable) -> AbHom:
    images = [tgt.classify(cochain_map(src.representative(e))) for e in src.group.gens()]
    return AbHom.from_images(src.group, tgt.group, images)


def restriction_map(HG: CohomologyGroup, HH: CohomologyGroup, embed: Sequence[int]) -> AbHom:
    return induced_map(HG, HH, lambda v: pullback_cochain(v, HG.cochains, HH.cochains, embed))


def restriction(cls: CohomologyClass, target: CohomologyGroup, embed: Sequence[int]):
    vec = pullback_cochain(cls.representative, cls.parent.cochains, target.cochains, embed)
    return target.class_of(vec)


def inflation_cochain(ext: GroupExtension, vec, src: Cochains, tgt: Cochains,
                      coeff: AbHom) -> list[int]:
    return pullback_cochain(vec, src, tgt, ext.pi, coeff.apply)


def inflation_map(ext: GroupExtension, HQ: CohomologyGroup, HG: CohomologyGroup,
                  coeff: AbHom) -> AbHom:
    return induced_map(HQ, HG, lambda v: inflation_cochain(ext, v, HQ.cochains, HG.cochains, coeff))


def inflation(ext: GroupExtension, cls: CohomologyClass, target: CohomologyGroup, coeff: AbHom):
    vec = inflation_cochain(ext, cls.representative, cls.parent.cochains, target.cochains, coeff)
    return target.class_of(vec)


def conjugate_cochain_on_n(ext: GroupExtension, module: GModule, phi, C1N: Cochains, x: int):
    """``n -> x . phi(x^-1 n x)`` for a 1-cochain on N."""
    G = ext.G
    xi = G.inv(x)
    out = []
    for (s,) in C1N.tuples():
        n = ext.N[s]
        m = ext.n_index(G.conj(xi, n))
        out.extend(module.apply(x, C1N.value(phi, (m,))))
    return C1N.reduce(out)


def q_action_on_h1(ext: GroupExtension, module: GModule, h1n: CohomologyGroup) -> GModule:
    """Q-module structure on ``H^1(N, M)`` from ``(q.phi)(n) = x.phi(x^-1 n x)``.

    Every lift ``x`` of every ``q`` is used; disagreement raises.
    """
    A = h1n.group
    act = []
    for q in ext.Q.elements():
        mats = set()
        for x in ext.lifts(q):
            cols = [h1n.classify(conjugate_cochain_on_n(ext, module, h1n.representative(e),
                                                        h1n.cochains, x)) for e in A.gens()]
            mats.add(tuple(tuple(c[i] for c in cols) for i in range(A.dims)))
        if len(mats) != 1:
            raise GroupError("action on H^1(N,M) depends on the lift", (q,))
        act.append(mats.pop())
    return GModule(ext.Q, A, act)


# ---------------------------------------------------------------------------
# extensions <-> 2-cocycles


def class_of_group_extension(E: FiniteGroup, kernel: Sequence[int], proj: Sequence[int],
                             module: GModule, h2: CohomologyGroup | None = None,
                             mutate: Callable | None = None) -> CohomologyClass:
    """Class in ``H^2(Q, A)`` of an extension ``A -> E -> Q``.

    ``kernel[i]`` is the E-index of the i-th element of ``module.M`` and
    ``proj`` maps E onto ``module.group``. The section picks the least
    element of each fiber; the factor set is ``s(q1) s(q2) s(q1 q2)^-1``.
    ``mutate(vec, cochains)`` may alter the factor set before it is
    classified (used for negative controls).
    """
    Q, A = module.group, module.M
    elems = A.elements()
    if len(kernel) != len(elems):
        raise GroupError("kernel embedding has the wrong size")
    for a in E.elements():
        for b in E.elements():
            if proj[E.mul(a, b)] != Q.mul(proj[a], proj[b]):
                raise GroupError("projection is not a homomorphism", (a, b))
    if set(proj) != set(Q.elements()):
        raise GroupError("projection is not onto")
    fiber = [x for x in E.elements() if proj[x] == 0]
    if sorted(kernel) != fiber:
        raise GroupError("embedded subgroup is not the kernel of the projection")
    pos = {x: i for i, x in enumerate(kernel)}
    for i, a in enumerate(elems):
        for j, b in enumerate(elems):
            if E.mul(kernel[i], kernel[j]) != kernel[A.index(A.add(a, b))]:
                raise GroupError("kernel embedding is not additive", (a, b))
    sigma = [min(x for x in E.elements() if proj[x] == q) for q in Q.elements()]
    for q in Q.elements():
        for i, a in enumerate(elems):
            if E.conj(sigma[q], kernel[i]) != kernel[A.index(module.apply(q, a))]:
                raise GroupError("conjugation action does not match the module", (q, a))
    if h2 is None:
        h2 = cohomology(Q, module, 2)
    C2 = h2.cochains

    def factor(q1, q2):
        x = E.mul(E.mul(sigma[q1], sigma[q2]), E.inv(sigma[Q.mul(q1, q2)]))
        return elems[pos[x]]

    vec = C2.from_function(factor)
    if mutate is not None:
        vec = C2.reduce(mutate(vec, C2))
    return h2.class_of(vec)


def realize_extension_from_2cocycle(f: Sequence[int], C2: Cochains) -> ExtensionGroup:
    """Group on ``A x Q`` with ``(a,q)(a',q') = (a + q.a' + f(q,q'), qq')``."""
    cx = BarComplex(C2.group, C2.module)
    dv = cx.d(2, f)
    if any(dv):
        raise NotACocycleError("factor set is not a 2-cocycle", next(i for i, a in enumerate(dv) if a))
    return extension_group(C2.module, lambda g, h: C2.value(f, (g, h)))


# ---------------------------------------------------------------------------
# H^2(G,M)_1


def h2_g_m_1(res2: AbHom) -> Subquotient:
    """Kernel of restriction ``H^2(G,M) -> H^2(N,M)`` with inclusion and projection."""
    return res2.kernel().presentation()


# ---------------------------------------------------------------------------
# module extensions of Z by M over N


@dataclass
class ModuleExtension:
    """``0 -> M -> M + Z -> Z -> 0`` with ``n.(m, k) = (n.m + k phi(n), k)``."""

    module: GModule
    phi: list
    cochains: Cochains

    def act(self, n: int, m: Sequence[int], k: int) -> tuple[tuple[int, ...], int]:
        M = self.module.M
        pn = self.cochains.value(self.phi, (n,))
        return M.add(self.module.apply(n, m), M.scale(k, pn)), k

    def matrix(self, n: int) -> list[list[int]]:
        """Action of ``n`` on ``M + Z`` as a ``(k+1)``-square matrix."""
        A = self.module.act[n]
        pn = self.cochains.value(self.phi, (n,))
        return [list(A[i]) + [pn[i]] for i in range(len(A))] + [[0] * len(A) + [1]]

    def check(self):
        N, M = self.module.group, self.module.M
        for n1 in N.elements():
            for n2 in N.elements():
                for e in M.gens() + [M.zero()]:
                    for k in (0, 1):
                        lhs = self.act(n1, *self.act(n2, e, k))
                        rhs = self.act(N.mul(n1, n2), e, k)
                        if lhs != rhs:
                            raise NotACocycleError("derived action is not a module action",
                                                   (n1, n2))


def cocycle_to_module_extension(phi: Sequence[int], C1: Cochains) -> ModuleExtension:
    cx = BarComplex(C1.group, C1.module)
    if any(cx.d(1, phi)):
        raise NotACocycleError("phi is not a 1-cocycle")
    e = ModuleExtension(C1.module, C1.reduce(phi), C1)
    e.check()
    return e


def module_extension_to_cocycle(e: ModuleExtension) -> list[int]:
    """Read ``phi(n)`` off ``n.(0, 1)``."""
    M = e.module.M
    out = []
    for (n,) in e.cochains.tuples():
        m, k = e.act(n, M.zero(), 1)
        out.extend(m)
    return e.cochains.reduce(out)


__all__ = [
    "BarComplex", "Cochains", "CohomologyClass", "CohomologyError", "CohomologyGroup",
    "ModuleExtension", "NotACocycleError", "SIZE_LIMIT", "bar_differential",
    "class_of_group_extension", "cocycle_to_module_extension", "cohomology", "h2_g_m_1",
    "induced_map", "inflation", "inflation_cochain", "inflation_map", "invariant_module",
    "module_extension_to_cocycle", "pullback_cochain", "q_action_on_h1",
    "realize_extension_from_2cocycle", "restriction", "restriction_map", "Subgroup",
]
