"""Finite groups as multiplication tables, extensions, and G-modules."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable, Hashable, Sequence

from .linalg import AbHom, FgAbGroup, Subgroup, Subquotient, kernel_lattice


class GroupError(ValueError):
    def __init__(self, msg, witness=None):
        super().__init__(msg if witness is None else f"{msg} (witness {witness})")
        self.witness = witness


class FiniteGroup:
    """Group on ``0..n-1`` with 0 the identity, validated on construction."""

    def __init__(self, table: Sequence[Sequence[int]], name: str | None = None):
        n = len(table)
        self.order = n
        self.name = name
        self.table = tuple(tuple(int(x) for x in row) for row in table)
        for a, row in enumerate(self.table):
            if len(row) != n:
                raise GroupError(f"row {a} has length {len(row)}, expected {n}")
            for b, x in enumerate(row):
                if not 0 <= x < n:
                    raise GroupError("table entry out of range", (a, b, x))
        if n == 0:
            raise GroupError("empty table")
        for a in range(n):
            if self.table[0][a] != a or self.table[a][0] != a:
                raise GroupError("0 is not a two-sided identity", (0, a))
        inverse = []
        for a in range(n):
            row = self.table[a]
            b = next((b for b in range(n) if row[b] == 0 and self.table[b][a] == 0), None)
            if b is None:
                raise GroupError(f"no inverse for element {a}", (a,))
            inverse.append(b)
        self.inverse = tuple(inverse)
        t = self.table
        for a in range(n):
            ta = t[a]
            for b in range(n):
                ab = ta[b]
                tb = t[b]
                tab = t[ab]
                for c in range(n):
                    if tab[c] != ta[tb[c]]:
                        raise GroupError("table is not associative", (a, b, c))

    def __len__(self):
        return self.order

    def __eq__(self, other):
        return isinstance(other, FiniteGroup) and self.table == other.table

    def __hash__(self):
        return hash(self.table)

    def __repr__(self):
        return f"FiniteGroup({self.name or self.order})"

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def prod(self, *xs: int) -> int:
        out = 0
        for x in xs:
            out = self.table[out][x]
        return out

    def inv(self, a: int) -> int:
        return self.inverse[a]

    def conj(self, x: int, n: int) -> int:
        """``x n x^-1``."""
        return self.table[self.table[x][n]][self.inverse[x]]

    def elements(self) -> range:
        return range(self.order)

    def is_abelian(self) -> bool:
        t = self.table
        return all(t[a][b] == t[b][a] for a in range(self.order) for b in range(a))

    def element_order(self, a: int) -> int:
        k, x = 1, a
        while x != 0:
            x = self.table[x][a]
            k += 1
        return k

    def exponent(self) -> int:
        from math import lcm
        out = 1
        for a in self.elements():
            out = lcm(out, self.element_order(a))
        return out

    def center(self) -> list[int]:
        t = self.table
        return [z for z in self.elements() if all(t[z][g] == t[g][z] for g in self.elements())]

    def check_subgroup(self, H: Sequence[int]) -> list[int]:
        H = sorted(set(H))
        if not H or H[0] != 0:
            raise GroupError("subgroup must contain the identity 0")
        if H[-1] >= self.order:
            raise GroupError("subgroup index out of range", (H[-1],))
        hs = set(H)
        for a in H:
            if self.inverse[a] not in hs:
                raise GroupError("subset not closed under inverses", (a,))
            for b in H:
                if self.table[a][b] not in hs:
                    raise GroupError("subset not closed under products", (a, b))
        return H

    def is_subgroup(self, H) -> bool:
        try:
            self.check_subgroup(H)
        except GroupError:
            return False
        return True

    def normality_witness(self, H) -> tuple[int, int] | None:
        hs = set(H)
        for g in self.elements():
            for h in H:
                if self.conj(g, h) not in hs:
                    return (g, h)
        return None

    def subgroup(self, H: Sequence[int]) -> tuple["FiniteGroup", list[int]]:
        """The subgroup on sorted ``H`` as its own group, plus the embedding."""
        H = self.check_subgroup(H)
        pos = {h: i for i, h in enumerate(H)}
        table = [[pos[self.table[a][b]] for b in H] for a in H]
        return FiniteGroup(table), H

    def relabel_equal(self, other: "FiniteGroup") -> bool:
        return self.table == other.table


def from_multiplication_table(table: Sequence[Sequence[int]]) -> FiniteGroup:
    return FiniteGroup(table)


def group_from_elements(elements: Sequence[Hashable], mul: Callable, name=None) -> FiniteGroup:
    """Build a table from concrete elements; ``elements[0]`` must be the identity."""
    pos = {x: i for i, x in enumerate(elements)}
    if len(pos) != len(elements):
        raise GroupError("duplicate elements")
    table = [[pos[mul(a, b)] for b in elements] for a in elements]
    return FiniteGroup(table, name=name)


def cyclic(n: int) -> FiniteGroup:
    return FiniteGroup([[(a + b) % n for b in range(n)] for a in range(n)], name=f"C{n}")


def direct_product(A: FiniteGroup, B: FiniteGroup) -> FiniteGroup:
    """Elements ``(a, b)`` at index ``a * |B| + b``."""
    m = B.order
    table = [[A.table[i // m][j // m] * m + B.table[i % m][j % m]
              for j in range(A.order * m)] for i in range(A.order * m)]
    return FiniteGroup(table, name=f"{A.name}x{B.name}")


def symmetric(n: int) -> FiniteGroup:
    perms = sorted(itertools.permutations(range(n)))
    return group_from_elements(perms, lambda p, q: tuple(p[q[i]] for i in range(n)), f"S{n}")


def dihedral(m: int) -> FiniteGroup:
    """Order ``2m``; element ``r^i s^j`` at index ``j*m + i``."""
    elems = [(i, j) for j in range(2) for i in range(m)]

    def mul(x, y):
        i, j = x
        k, l = y
        return ((i + (k if j == 0 else -k)) % m, (j + l) % 2)

    return group_from_elements(elems, mul, f"D{2 * m}")


def quaternion() -> FiniteGroup:
    """Q8 in the order 1, -1, i, -i, j, -j, k, -k."""
    rules = {
        ("1", "1"): (1, "1"), ("1", "i"): (1, "i"), ("1", "j"): (1, "j"), ("1", "k"): (1, "k"),
        ("i", "1"): (1, "i"), ("i", "i"): (-1, "1"), ("i", "j"): (1, "k"), ("i", "k"): (-1, "j"),
        ("j", "1"): (1, "j"), ("j", "i"): (-1, "k"), ("j", "j"): (-1, "1"), ("j", "k"): (1, "i"),
        ("k", "1"): (1, "k"), ("k", "i"): (1, "j"), ("k", "j"): (-1, "i"), ("k", "k"): (-1, "1"),
    }
    elems = [(s, u) for u in "1ijk" for s in (1, -1)]

    def mul(x, y):
        s, u = rules[(x[1], y[1])]
        return (x[0] * y[0] * s, u)

    return group_from_elements(elems, mul, "Q8")


BUILTIN_GROUPS = {
    "C2": lambda: cyclic(2),
    "C3": lambda: cyclic(3),
    "C4": lambda: cyclic(4),
    "C6": lambda: cyclic(6),
    "C8": lambda: cyclic(8),
    "C9": lambda: cyclic(9),
    "V4": lambda: direct_product(cyclic(2), cyclic(2)),
    "S3": lambda: symmetric(3),
    "D8": lambda: dihedral(4),
    "Q8": quaternion,
}


def builtin_group(name: str) -> FiniteGroup:
    try:
        G = BUILTIN_GROUPS[name]()
    except KeyError:
        raise GroupError(f"unknown built-in group {name!r}") from None
    G.name = name
    return G


# ---------------------------------------------------------------------------
# extensions


class GroupExtension:
    """``1 -> N -> G -> Q -> 1`` with ``Q`` the coset group of ``N``.

    Cosets are labelled in order of their minimal element, and ``sigma(q)``
    is that minimal element, so ``sigma(1) = 1``.
    """

    def __init__(self, G: FiniteGroup, N: Sequence[int]):
        N = G.check_subgroup(N)
        w = G.normality_witness(N)
        if w is not None:
            g, n = w
            raise GroupError(f"subgroup is not normal: {g} * {n} * {g}^-1 = {G.conj(g, n)} "
                             f"is not in N", w)
        self.G = G
        self.N = tuple(N)
        self.N_group, _ = G.subgroup(N)
        label = {}
        sigma = []
        pi = [None] * G.order
        for g in G.elements():
            if pi[g] is not None:
                continue
            coset = [G.mul(g, n) for n in N]
            q = len(sigma)
            sigma.append(min(coset))
            for x in coset:
                pi[x] = q
            label[min(coset)] = q
        self.pi = tuple(pi)
        self.sigma = tuple(sigma)
        table = [[pi[G.mul(a, b)] for b in sigma] for a in sigma]
        self.Q = FiniteGroup(table)
        for a in G.elements():
            for b in G.elements():
                if self.pi[G.mul(a, b)] != self.Q.mul(self.pi[a], self.pi[b]):
                    raise GroupError("projection is not a homomorphism", (a, b))
        self._npos = {n: i for i, n in enumerate(self.N)}

    def n_part(self, g: int) -> int:
        """The ``n`` in ``g = n * sigma(pi(g))``."""
        G = self.G
        return G.mul(g, G.inv(self.sigma[self.pi[g]]))

    def lifts(self, q: int) -> list[int]:
        return [g for g in self.G.elements() if self.pi[g] == q]

    def n_index(self, n: int) -> int:
        """Position of ``n`` (a G-index) inside ``N_group``."""
        return self._npos[n]

    def __repr__(self):
        return f"GroupExtension(|G|={self.G.order}, |N|={len(self.N)}, |Q|={self.Q.order})"


def make_extension(G: FiniteGroup, N: Sequence[int]) -> GroupExtension:
    return GroupExtension(G, N)


@dataclass
class GroupRingData:
    """Coset data for ZG as a free ZN-module on the representatives ``sigma(q)``."""

    ext: GroupExtension
    reps: tuple
    ig_basis: tuple  # g standing for the basis element g - 1 of IG
    n_of: tuple
    q_of: tuple

    def compose(self, n: int, q: int) -> int:
        return self.ext.G.mul(n, self.reps[q])


def group_ring_data(ext: GroupExtension) -> GroupRingData:
    G = ext.G
    n_of = tuple(ext.n_part(g) for g in G.elements())
    data = GroupRingData(ext, ext.sigma, tuple(range(1, G.order)), n_of, ext.pi)
    seen = set()
    for g in G.elements():
        n, q = n_of[g], ext.pi[g]
        if n not in ext.N or data.compose(n, q) != g:
            raise GroupError("coset decomposition does not round-trip", (g,))
        seen.add((n, q))
    if len(seen) != G.order:
        raise GroupError("coset decomposition is not a bijection")
    return data


# ---------------------------------------------------------------------------
# modules


def _matvec(A, v):
    return [sum(a * b for a, b in zip(row, v)) for row in A]


class GModule:
    """Finite abelian group ``M`` (canonical coordinates) with a G-action.

    ``act[g]`` is a square matrix; column ``j`` is the image of generator ``j``.
    """

    def __init__(self, group: FiniteGroup, M: FgAbGroup, act: Sequence, check: bool = True):
        if not M.is_finite():
            raise GroupError("modules must be finite")
        self.group = group
        self.M = M
        k = M.dims
        if len(act) != group.order:
            raise GroupError(f"need {group.order} action matrices, got {len(act)}")
        self.act = tuple(tuple(tuple(int(x) for x in row) for row in A) for A in act)
        for g, A in enumerate(self.act):
            if len(A) != k or any(len(r) != k for r in A):
                raise GroupError(f"action matrix of element {g} has the wrong shape", (g,))
        self._apply_cache = {}
        if check:
            self.validate()

    def validate(self):
        M, k = self.M, self.M.dims
        homs = []
        for g, A in enumerate(self.act):
            h = AbHom(M, M, A, check=False)
            if not h.is_well_defined():
                raise GroupError(f"action matrix of element {g} does not respect the relations",
                                 (g,))
            if not h.is_injective():
                raise GroupError(f"action matrix of element {g} is not invertible", (g,))
            homs.append(h)
        if homs[0].images() != M.gens() and k:
            raise GroupError("identity does not act trivially", (0,))
        G = self.group
        for g in G.elements():
            for h in G.elements():
                lhs = [self.apply(g, self.apply(h, e)) for e in M.gens()]
                rhs = [self.apply(G.mul(g, h), e) for e in M.gens()]
                if lhs != rhs:
                    raise GroupError("action is not a homomorphism", (g, h))

    @classmethod
    def trivial(cls, group: FiniteGroup, M: FgAbGroup) -> "GModule":
        k = M.dims
        eye = [[int(i == j) for j in range(k)] for i in range(k)]
        return cls(group, M, [eye] * group.order, check=False)

    @classmethod
    def from_scalars(cls, group: FiniteGroup, modulus: int, scalars: Sequence[int]) -> "GModule":
        """Cyclic module ``Z/modulus`` with ``g`` acting by multiplication by ``scalars[g]``."""
        M = FgAbGroup.from_invariants([modulus])
        return cls(group, M, [[[s % modulus]] for s in scalars])

    @property
    def moduli(self) -> tuple[int, ...]:
        return self.M.moduli

    @property
    def dims(self) -> int:
        return self.M.dims

    def matrix(self, g: int):
        return self.act[g]

    def apply(self, g: int, m: Sequence[int]) -> tuple[int, ...]:
        return self.M.reduce(_matvec(self.act[g], m))

    def is_trivial_action(self) -> bool:
        return all(self.apply(g, e) == e for g in self.group.elements() for e in self.M.gens())

    def restrict(self, embed: Sequence[int], subgroup: FiniteGroup) -> "GModule":
        return GModule(subgroup, self.M, [self.act[g] for g in embed], check=False)

    def pullback(self, pi: Sequence[int], group: FiniteGroup) -> "GModule":
        """Module over ``group`` acting through the map ``pi`` to our group."""
        return GModule(group, self.M, [self.act[pi[g]] for g in group.elements()], check=False)


def invariants(module: GModule, K: Sequence[int]) -> Subquotient:
    """``M^K`` as a subgroup of ``M``: ``.group``, ``.inclusion()``, ``.project``."""
    K = module.group.check_subgroup(K)
    M = module.M
    k = M.dims
    images = []
    for j in range(k):
        e = [int(i == j) for i in range(k)]
        img = []
        for g in K:
            ge = module.apply(g, e)
            img.extend(a - b for a, b in zip(ge, e))
        images.append(img)
    lat = kernel_lattice(images, M.moduli, M.moduli * len(K))
    return Subgroup(M, lat).presentation()


def invariant_module(ext: GroupExtension, module: GModule) -> tuple[GModule, Subquotient]:
    """``M^N`` as a Q-module (acting through ``sigma``), with its inclusion data."""
    sub = invariants(module, ext.N)
    A = sub.group
    act = []
    incl = sub.inclusion()
    for q in ext.Q.elements():
        cols = [sub.project(module.apply(ext.sigma[q], incl.apply(e))) for e in A.gens()]
        act.append([[c[i] for c in cols] for i in range(A.dims)])
    return GModule(ext.Q, A, act), sub


# ---------------------------------------------------------------------------
# semidirect products and extension groups


@dataclass
class ExtensionGroup:
    """A group on pairs ``(a, g)`` with ``a`` in a module and ``g`` in the base group.

    Element ``(a, g)`` sits at index ``M.index(a) * |base| + g``; ``embed[i]``
    is the index of ``(element i of M, 1)`` and ``proj`` maps to the base.
    """

    group: FiniteGroup
    module: GModule
    embed: list = field(repr=False)
    proj: list = field(repr=False)

    def index(self, a, g) -> int:
        return self.module.M.index(a) * self.module.group.order + g

    def pair(self, x: int) -> tuple[tuple[int, ...], int]:
        n = self.module.group.order
        return self.module.M.element(x // n), x % n

    def kernel_element(self, x: int) -> tuple[int, ...]:
        a, g = self.pair(x)
        if g != 0:
            raise GroupError("element is not in the kernel", (x,))
        return a


def extension_group(module: GModule, cocycle: Callable | None = None) -> ExtensionGroup:
    """Multiplication ``(a,g)(a',g') = (a + g.a' + f(g,g'), gg')``; ``f = 0`` if omitted."""
    K, M = module.group, module.M
    elems = M.elements()
    nk, nm = K.order, len(elems)
    act = [[M.index(module.apply(g, a)) for a in elems] for g in K.elements()]
    add = [[M.index(M.add(a, b)) for b in elems] for a in elems]
    if cocycle is None:
        fval = [[0] * nk for _ in range(nk)]
    else:
        fval = [[M.index(cocycle(g, h)) for h in K.elements()] for g in K.elements()]
    table = []
    for x in range(nm * nk):
        a, g = divmod(x, nk)
        row = []
        act_g, fg, Kg = act[g], fval[g], K.table[g]
        for y in range(nm * nk):
            b, h = divmod(y, nk)
            row.append(add[add[a][act_g[b]]][fg[h]] * nk + Kg[h])
        table.append(row)
    E = FiniteGroup(table)
    return ExtensionGroup(E, module, [i * nk for i in range(nm)], [x % nk for x in range(nm * nk)])


def semidirect_product(module: GModule) -> ExtensionGroup:
    return extension_group(module)
