"""Exact integer linear algebra over Z and over finite abelian groups.

Everything here works with Python ints, so there is no overflow. Abelian
groups are handled in "canonical coordinates": a vector whose i-th entry is
read modulo ``moduli[i]`` (a modulus of 0 means the coordinate is free).
Subgroups of such a coordinate group are stored as lattices in reduced
echelon form, which makes membership, equality and back-substitution cheap.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import gcd, prod
from typing import Iterable, Sequence


class LinalgError(ValueError):
    pass


class SubquotientError(LinalgError):
    """Raised when the boundary span is not contained in the cycle span."""


class NotInSubgroupError(LinalgError):
    pass


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return ``(g, x, y)`` with ``g = a*x + b*y = gcd(a, b) >= 0``."""
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        return -a, -x0, -y0
    return a, x0, y0


def reduce_vec(v: Sequence[int], moduli: Sequence[int]) -> list[int]:
    return [a % d if d else a for a, d in zip(v, moduli)]


def _comb(u, x, v, y, moduli):
    return [(x * a + y * b) % d if d else x * a + y * b for a, b, d in zip(u, v, moduli)]


def _scale(u, x, moduli):
    return [(x * a) % d if d else x * a for a, d in zip(u, moduli)]


# ---------------------------------------------------------------------------
# matrices


@dataclass(frozen=True)
class IntMatrix:
    rows: int
    cols: int
    entries: tuple

    def __post_init__(self):
        if len(self.entries) != self.rows * self.cols:
            raise LinalgError(
                f"{self.rows}x{self.cols} matrix needs {self.rows * self.cols} entries, "
                f"got {len(self.entries)}"
            )

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], ncols: int | None = None) -> "IntMatrix":
        rows = [list(r) for r in rows]
        if ncols is None:
            ncols = len(rows[0]) if rows else 0
        for r in rows:
            if len(r) != ncols:
                raise LinalgError("ragged rows")
        return cls(len(rows), ncols, tuple(int(a) for r in rows for a in r))

    @classmethod
    def from_columns(cls, cols: Sequence[Sequence[int]], nrows: int) -> "IntMatrix":
        return cls.from_rows([[c[i] for c in cols] for i in range(nrows)], len(cols))

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls.from_rows([[int(i == j) for j in range(n)] for i in range(n)], n)

    @classmethod
    def zeros(cls, m: int, n: int) -> "IntMatrix":
        return cls(m, n, (0,) * (m * n))

    @classmethod
    def diag(cls, d: Sequence[int]) -> "IntMatrix":
        n = len(d)
        return cls.from_rows([[d[i] if i == j else 0 for j in range(n)] for i in range(n)], n)

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> list[int]:
        return list(self.entries[i * self.cols:(i + 1) * self.cols])

    def col(self, j: int) -> list[int]:
        return [self.entries[i * self.cols + j] for i in range(self.rows)]

    def to_rows(self) -> list[list[int]]:
        return [self.row(i) for i in range(self.rows)]

    def columns(self) -> list[list[int]]:
        return [self.col(j) for j in range(self.cols)]

    def transpose(self) -> "IntMatrix":
        return IntMatrix.from_rows(self.columns(), self.rows)

    def __matmul__(self, other):
        if isinstance(other, IntMatrix):
            if self.cols != other.rows:
                raise LinalgError("shape mismatch")
            a, b = self.to_rows(), other.columns()
            return IntMatrix.from_rows(
                [[sum(x * y for x, y in zip(r, c)) for c in b] for r in a], other.cols
            )
        v = list(other)
        if len(v) != self.cols:
            raise LinalgError("shape mismatch")
        return [sum(x * y for x, y in zip(self.row(i), v)) for i in range(self.rows)]

    def det(self) -> int:
        """Bareiss fraction-free determinant."""
        if self.rows != self.cols:
            raise LinalgError("determinant of a non-square matrix")
        n = self.rows
        a = self.to_rows()
        sign, prev = 1, 1
        for k in range(n - 1):
            if a[k][k] == 0:
                for i in range(k + 1, n):
                    if a[i][k]:
                        a[k], a[i] = a[i], a[k]
                        sign = -sign
                        break
                else:
                    return 0
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            prev = a[k][k]
        return sign * a[n - 1][n - 1] if n else 1

    def is_diagonal(self) -> bool:
        return all(self[i, j] == 0 for i in range(self.rows) for j in range(self.cols) if i != j)


def _as_rows(A) -> tuple[list[list[int]], int, int]:
    if isinstance(A, IntMatrix):
        return A.to_rows(), A.rows, A.cols
    rows = [list(r) for r in A]
    return rows, len(rows), len(rows[0]) if rows else 0


def _identity(n):
    return [[int(i == j) for j in range(n)] for i in range(n)]


def _snf(A, m, n):
    """Smith form with transforms: returns S, U, V, U^-1, V^-1 with U A V = S."""
    S = [r[:] for r in A]
    U, Ui, V, Vi = _identity(m), _identity(m), _identity(n), _identity(n)

    def row_add(i, t, c):  # row_i += c * row_t
        S[i] = [a + c * b for a, b in zip(S[i], S[t])]
        U[i] = [a + c * b for a, b in zip(U[i], U[t])]
        for r in Ui:
            r[t] -= c * r[i]

    def col_add(j, t, c):  # col_j += c * col_t
        for r in S:
            r[j] += c * r[t]
        for r in V:
            r[j] += c * r[t]
        Vi[t] = [a - c * b for a, b in zip(Vi[t], Vi[j])]

    def swap_rows(i, t):
        S[i], S[t] = S[t], S[i]
        U[i], U[t] = U[t], U[i]
        for r in Ui:
            r[i], r[t] = r[t], r[i]

    def swap_cols(j, t):
        for r in S:
            r[j], r[t] = r[t], r[j]
        for r in V:
            r[j], r[t] = r[t], r[j]
        Vi[j], Vi[t] = Vi[t], Vi[j]

    for t in range(min(m, n)):
        best = None
        for i in range(t, m):
            for j in range(t, n):
                a = S[i][j]
                if a and (best is None or abs(a) < best[0]):
                    best = (abs(a), i, j)
        if best is None:
            break
        swap_rows(t, best[1])
        swap_cols(t, best[2])
        while True:
            p = S[t][t]
            dirty = False
            for i in range(t + 1, m):
                if S[i][t]:
                    q = S[i][t] // p
                    if q:
                        row_add(i, t, -q)
                    dirty = dirty or S[i][t] != 0
            for j in range(t + 1, n):
                if S[t][j]:
                    q = S[t][j] // p
                    if q:
                        col_add(j, t, -q)
                    dirty = dirty or S[t][j] != 0
            if dirty:
                cands = [(abs(S[i][t]), i, t) for i in range(t + 1, m) if S[i][t]]
                cands += [(abs(S[t][j]), t, j) for j in range(t + 1, n) if S[t][j]]
                _, i, j = min(cands)
                if i != t:
                    swap_rows(t, i)
                else:
                    swap_cols(t, j)
                continue
            bad = next(
                (i for i in range(t + 1, m) for j in range(t + 1, n) if S[i][j] % p), None
            )
            if bad is None:
                break
            row_add(t, bad, 1)
        if S[t][t] < 0:
            S[t] = [-a for a in S[t]]
            U[t] = [-a for a in U[t]]
            for r in Ui:
                r[t] = -r[t]
    return S, U, V, Ui, Vi


def smith_normal_form(A) -> tuple[IntMatrix, IntMatrix, IntMatrix]:
    """Return unimodular ``U``, ``V`` and diagonal ``D`` with ``U @ A @ V == D``.

    The diagonal is non-negative and forms a divisibility chain, with any
    zeros at the end.
    """
    rows, m, n = _as_rows(A)
    S, U, V, _, _ = _snf(rows, m, n)
    return IntMatrix.from_rows(U, m), IntMatrix.from_rows(S, n), IntMatrix.from_rows(V, n)


# ---------------------------------------------------------------------------
# lattices with per-coordinate moduli


class Lattice:
    """A subgroup of ``Z^m / R`` where ``R = (+) moduli[j] Z``.

    Stored as the rows of the reduced echelon basis of the preimage lattice
    in Z^m. Pivots on modded columns with nothing above the relation are left
    implicit. Equal subgroups have identical ``rows``.
    """

    __slots__ = ("moduli", "rows", "_pivot_cols")

    def __init__(self, moduli: Sequence[int], rows: list[tuple[int, list[int]]]):
        self.moduli = tuple(moduli)
        self.rows = rows
        self._pivot_cols = tuple(j for j, _ in rows)

    @property
    def dim(self) -> int:
        return len(self.moduli)

    @classmethod
    def zero(cls, moduli: Sequence[int]) -> "Lattice":
        return cls(moduli, [])

    @classmethod
    def full(cls, moduli: Sequence[int]) -> "Lattice":
        m = len(moduli)
        return cls.span([[int(i == j) for j in range(m)] for i in range(m)], moduli)

    @classmethod
    def span(cls, gens: Iterable[Sequence[int]], moduli: Sequence[int]) -> "Lattice":
        moduli = tuple(moduli)
        active = []
        for g in gens:
            v = reduce_vec(g, moduli)
            if any(v):
                active.append(v)
        rows = []
        for j, d in enumerate(moduli):
            if not active:
                break
            piv, rest = None, []
            for v in active:
                if v[j] == 0:
                    rest.append(v)
                elif piv is None:
                    piv = v
                else:
                    a, b = piv[j], v[j]
                    g, x, y = xgcd(a, b)
                    z = _comb(piv, b // g, v, -(a // g), moduli)
                    piv = _comb(piv, x, v, y, moduli)
                    if any(z):
                        rest.append(z)
            if piv is None:
                continue
            if d:
                g, x, _ = xgcd(piv[j], d)
                z = _scale(piv, d // g, moduli)
                if any(z):
                    rest.append(z)
                if x != 1:
                    piv = _scale(piv, x, moduli)
            elif piv[j] < 0:
                piv = [-a for a in piv]
            rows.append((j, piv))
            active = rest
        # clear entries above each pivot
        for k, (j, r) in enumerate(rows):
            g = r[j]
            for i in range(k):
                ri = rows[i][1]
                c = ri[j] // g
                if c:
                    rows[i] = (rows[i][0], _comb(ri, 1, r, -c, moduli))
        return cls(moduli, rows)

    def generators(self) -> list[list[int]]:
        return [r[:] for _, r in self.rows]

    def reduce(self, v: Sequence[int]) -> tuple[list[int], list[int]]:
        """Back-substitute ``v``; return the canonical remainder and row coefficients."""
        moduli = self.moduli
        v = reduce_vec(v, moduli)
        coeffs = []
        for j, r in self.rows:
            c = v[j] // r[j]
            if c:
                v = _comb(v, 1, r, -c, moduli)
            coeffs.append(c)
        return v, coeffs

    def contains(self, v: Sequence[int]) -> bool:
        rem, _ = self.reduce(v)
        return not any(rem)

    def express(self, v: Sequence[int]) -> list[int]:
        rem, coeffs = self.reduce(v)
        if any(rem):
            raise NotInSubgroupError("vector is not in the lattice")
        return coeffs

    def issubset(self, other: "Lattice") -> bool:
        return all(other.contains(r) for _, r in self.rows)

    def __eq__(self, other):
        if not isinstance(other, Lattice):
            return NotImplemented
        return self.moduli == other.moduli and [(j, tuple(r)) for j, r in self.rows] == [
            (j, tuple(r)) for j, r in other.rows
        ]

    def __hash__(self):
        return hash((self.moduli, tuple((j, tuple(r)) for j, r in self.rows)))

    def is_finite(self) -> bool:
        return all(self.moduli)

    def order(self) -> int:
        """Order of the subgroup ``L/R``; only meaningful when every coordinate is modded."""
        if not self.is_finite():
            raise LinalgError("order of a subgroup of an infinite group")
        out = 1
        for j, r in self.rows:
            out *= self.moduli[j] // r[j]
        return out

    def __add__(self, other: "Lattice") -> "Lattice":
        return Lattice.span(self.generators() + other.generators(), self.moduli)

    def intersection(self, other: "Lattice") -> "Lattice":
        m = self.dim
        zero = [0] * m
        gens = [r + r for r in self.generators()] + [r + zero for r in other.generators()]
        big = Lattice.span(gens, self.moduli + self.moduli)
        # rows with pivot in the second block have a zero first block
        rows = [(j - m, r[m:]) for j, r in big.rows if j >= m]
        return Lattice(self.moduli, rows)


def kernel_lattice(images: Sequence[Sequence[int]], domain_moduli: Sequence[int],
                   codomain_moduli: Sequence[int]) -> Lattice:
    """Kernel of the map sending the i-th domain coordinate vector to ``images[i]``."""
    return _graph(images, domain_moduli, codomain_moduli)[1]


def _graph(images, domain_moduli, codomain_moduli):
    m, k = len(codomain_moduli), len(domain_moduli)
    if len(images) != k:
        raise LinalgError("need one image per domain coordinate")
    gens = []
    for i, img in enumerate(images):
        e = [0] * k
        e[i] = 1
        gens.append(list(img) + e)
    full = Lattice.span(gens, tuple(codomain_moduli) + tuple(domain_moduli))
    ker = Lattice(domain_moduli, [(j - m, r[m:]) for j, r in full.rows if j >= m])
    return full, ker


def kernel(A, domain_moduli: Sequence[int] | None = None,
           codomain_moduli: Sequence[int] | None = None) -> Lattice:
    """Kernel of the integer matrix ``A`` viewed as a map between coordinate groups."""
    rows, m, n = _as_rows(A)
    domain_moduli = domain_moduli or (0,) * n
    codomain_moduli = codomain_moduli or (0,) * m
    images = [[rows[i][j] for i in range(m)] for j in range(n)]
    return kernel_lattice(images, domain_moduli, codomain_moduli)


class LinearSolver:
    """Solve ``A x = b`` modulo per-row moduli, reusing one echelon form."""

    def __init__(self, images: Sequence[Sequence[int]], codomain_moduli: Sequence[int],
                 domain_moduli: Sequence[int] | None = None):
        self.m = len(codomain_moduli)
        self.k = len(images)
        self.codomain_moduli = tuple(codomain_moduli)
        self.domain_moduli = tuple(domain_moduli) if domain_moduli else (0,) * self.k
        self.full, self.kernel = _graph(images, self.domain_moduli, self.codomain_moduli)
        self._rows = [(j, r) for j, r in self.full.rows if j < self.m]

    def solve(self, b: Sequence[int]) -> list[int] | None:
        moduli = self.full.moduli
        r = reduce_vec(list(b) + [0] * self.k, moduli)
        for j, row in self._rows:
            if r[j] % row[j]:
                return None
            c = r[j] // row[j]
            if c:
                r = _comb(r, 1, row, -c, moduli)
        if any(r[:self.m]):
            return None
        x = [-a for a in r[self.m:]]
        rem, _ = self.kernel.reduce(x)
        return rem


def solve(A, b: Sequence[int], modulus=None, domain_moduli=None) -> list[int] | None:
    """Deterministic solution of ``A x = b`` or ``None``.

    ``modulus`` is either a sequence of per-row moduli (0 = exact) or an
    :class:`FgAbGroup` whose canonical coordinates index the rows. The answer
    is the canonical remainder of any solution modulo the solution lattice.
    """
    rows, m, n = _as_rows(A)
    if isinstance(modulus, FgAbGroup):
        modulus = modulus.moduli
    moduli = tuple(modulus) if modulus is not None else (0,) * m
    if len(moduli) != m or len(b) != m:
        raise LinalgError("dimension mismatch in solve")
    images = [[rows[i][j] for i in range(m)] for j in range(n)]
    return LinearSolver(images, moduli, domain_moduli).solve(b)


# ---------------------------------------------------------------------------
# finitely generated abelian groups


class FgAbGroup:
    """Cokernel of an integer relation matrix, with canonical coordinates.

    ``ngens`` presentation generators; ``relations`` are vectors of length
    ``ngens``. Elements are tuples in canonical coordinates: the torsion
    coordinates come first, reduced into ``[0, d_i)``, then the free ones.
    """

    def __init__(self, ngens: int, relations: Sequence[Sequence[int]] = ()):
        self.ngens = ngens
        self.relations = [list(r) for r in relations]
        for r in self.relations:
            if len(r) != ngens:
                raise LinalgError("relation of wrong length")
        A = [[r[i] for r in self.relations] for i in range(ngens)]
        S, U, _, Ui, _ = _snf(A, ngens, len(self.relations))
        diag = [S[i][i] if i < len(self.relations) else 0 for i in range(ngens)]
        keep = [i for i, d in enumerate(diag) if d != 1]
        self.moduli = tuple(diag[i] for i in keep)
        self._to = [U[i] for i in keep]
        self._from = [[Ui[r][i] for r in range(ngens)] for i in keep]

    @classmethod
    def from_invariants(cls, torsion: Sequence[int] = (), rank: int = 0) -> "FgAbGroup":
        torsion = [d for d in torsion if d != 1]
        if any(d < 0 for d in torsion) or any(d == 0 for d in torsion):
            raise LinalgError("invariant factors must be >= 2")
        n = len(torsion) + rank
        chain = all(torsion[i + 1] % torsion[i] == 0 for i in range(len(torsion) - 1))
        if chain:
            G = cls.__new__(cls)
            G.ngens = n
            G.relations = [[d if i == j else 0 for i in range(n)] for j, d in enumerate(torsion)]
            G.moduli = tuple(torsion) + (0,) * rank
            G._to = _identity(n)
            G._from = _identity(n)
            return G
        rels = [[d if i == j else 0 for i in range(n)] for j, d in enumerate(torsion)]
        return cls(n, rels)

    @classmethod
    def trivial(cls) -> "FgAbGroup":
        return cls.from_invariants(())

    @property
    def torsion(self) -> tuple[int, ...]:
        return tuple(d for d in self.moduli if d)

    @property
    def rank(self) -> int:
        return sum(1 for d in self.moduli if d == 0)

    @property
    def dims(self) -> int:
        return len(self.moduli)

    def is_finite(self) -> bool:
        return self.rank == 0

    def order(self) -> int:
        if not self.is_finite():
            raise LinalgError("infinite group has no finite order")
        return prod(self.moduli)

    def exponent(self) -> int:
        if not self.is_finite():
            raise LinalgError("infinite group")
        return self.moduli[-1] if self.moduli else 1

    def is_trivial(self) -> bool:
        return not self.moduli

    def same_type(self, other: "FgAbGroup") -> bool:
        return self.moduli == other.moduli

    def reduce(self, c: Sequence[int]) -> tuple[int, ...]:
        return tuple(a % d if d else a for a, d in zip(c, self.moduli))

    def canonical(self, x: Sequence[int]) -> tuple[int, ...]:
        """Canonical coordinates of the class of a presentation vector."""
        return self.reduce([sum(a * b for a, b in zip(row, x)) for row in self._to])

    def lift(self, c: Sequence[int]) -> list[int]:
        out = [0] * self.ngens
        for a, col in zip(c, self._from):
            if a:
                for i, b in enumerate(col):
                    out[i] += a * b
        return out

    def zero(self) -> tuple[int, ...]:
        return (0,) * self.dims

    def add(self, a, b):
        return self.reduce([x + y for x, y in zip(a, b)])

    def sub(self, a, b):
        return self.reduce([x - y for x, y in zip(a, b)])

    def neg(self, a):
        return self.reduce([-x for x in a])

    def scale(self, n: int, a):
        return self.reduce([n * x for x in a])

    def gens(self) -> list[tuple[int, ...]]:
        return [tuple(int(i == j) for j in range(self.dims)) for i in range(self.dims)]

    def elements(self) -> list[tuple[int, ...]]:
        if not self.is_finite():
            raise LinalgError("cannot enumerate an infinite group")
        return list(itertools.product(*(range(d) for d in self.moduli)))

    def index(self, c: Sequence[int]) -> int:
        i = 0
        for a, d in zip(self.reduce(c), self.moduli):
            i = i * d + a
        return i

    def element(self, i: int) -> tuple[int, ...]:
        out = []
        for d in reversed(self.moduli):
            i, a = divmod(i, d)
            out.append(a)
        return tuple(reversed(out))

    def element_order(self, c) -> int:
        c = self.reduce(c)
        n = 1
        for a, d in zip(c, self.moduli):
            if d == 0 and a:
                raise LinalgError("element of infinite order")
            if d:
                n = n * (d // gcd(a, d)) // gcd(n, d // gcd(a, d))
        return n

    def __repr__(self):
        if self.is_trivial():
            return "0"
        parts = [f"Z/{d}" if d else "Z" for d in self.moduli]
        return " + ".join(parts)


def cokernel(A) -> FgAbGroup:
    """The group ``Z^rows / (column span of A)``."""
    rows, m, n = _as_rows(A)
    return FgAbGroup(m, [[rows[i][j] for i in range(m)] for j in range(n)])


class AbHom:
    """Homomorphism between groups, as a matrix on canonical generators."""

    def __init__(self, source: FgAbGroup, target: FgAbGroup, matrix: Sequence[Sequence[int]],
                 check: bool = True):
        self.source = source
        self.target = target
        self.matrix = [list(r) for r in matrix]
        if len(self.matrix) != target.dims or any(len(r) != source.dims for r in self.matrix):
            raise LinalgError("matrix shape does not match source/target")
        if check and not self.is_well_defined():
            raise LinalgError("matrix does not map relations into relations")

    @classmethod
    def from_images(cls, source, target, images, check=True) -> "AbHom":
        cols = [target.reduce(v) for v in images]
        if len(cols) != source.dims:
            raise LinalgError("need one image per source generator")
        return cls(source, target, [[c[i] for c in cols] for i in range(target.dims)], check)

    @classmethod
    def identity(cls, G: FgAbGroup) -> "AbHom":
        return cls(G, G, _identity(G.dims))

    @classmethod
    def zero(cls, A: FgAbGroup, B: FgAbGroup) -> "AbHom":
        return cls(A, B, [[0] * A.dims for _ in range(B.dims)])

    def column(self, j: int) -> list[int]:
        return [r[j] for r in self.matrix]

    def images(self) -> list[tuple[int, ...]]:
        return [self.target.reduce(self.column(j)) for j in range(self.source.dims)]

    def __call__(self, c):
        return self.apply(c)

    def apply(self, c: Sequence[int]) -> tuple[int, ...]:
        return self.target.reduce([sum(a * b for a, b in zip(r, c)) for r in self.matrix])

    def is_well_defined(self) -> bool:
        for j, d in enumerate(self.source.moduli):
            if d and any(self.target.reduce([d * a for a in self.column(j)])):
                return False
        return True

    def compose(self, other: "AbHom") -> "AbHom":
        """``self o other``."""
        if other.target.moduli != self.source.moduli:
            raise LinalgError("cannot compose: target/source mismatch")
        return AbHom.from_images(other.source, self.target, [self.apply(v) for v in other.images()])

    def __matmul__(self, other):
        return self.compose(other)

    def kernel(self) -> "Subgroup":
        lat = kernel_lattice(self.images(), self.source.moduli, self.target.moduli)
        return Subgroup(self.source, lat)

    def image(self) -> "Subgroup":
        return Subgroup(self.target, Lattice.span(self.images(), self.target.moduli))

    def is_injective(self) -> bool:
        return self.kernel().is_trivial()

    def is_surjective(self) -> bool:
        return self.image() == Subgroup.whole(self.target)

    def is_isomorphism(self) -> bool:
        return self.is_injective() and self.is_surjective()

    def equals(self, other: "AbHom") -> bool:
        return (self.source.moduli == other.source.moduli
                and self.target.moduli == other.target.moduli
                and self.images() == other.images())


class Subgroup:
    """A subgroup of an :class:`FgAbGroup`, in its canonical coordinates."""

    def __init__(self, ambient: FgAbGroup, lattice: Lattice):
        if lattice.moduli != ambient.moduli:
            raise LinalgError("lattice moduli do not match ambient group")
        self.ambient = ambient
        self.lattice = lattice

    @classmethod
    def generated(cls, ambient: FgAbGroup, gens: Iterable[Sequence[int]]) -> "Subgroup":
        return cls(ambient, Lattice.span(gens, ambient.moduli))

    @classmethod
    def whole(cls, ambient: FgAbGroup) -> "Subgroup":
        return cls(ambient, Lattice.full(ambient.moduli))

    @classmethod
    def trivial(cls, ambient: FgAbGroup) -> "Subgroup":
        return cls(ambient, Lattice.zero(ambient.moduli))

    def generators(self) -> list[tuple[int, ...]]:
        return [tuple(r) for r in self.lattice.generators()]

    def order(self) -> int:
        return self.lattice.order()

    def is_trivial(self) -> bool:
        return not self.lattice.rows

    def contains(self, c) -> bool:
        return self.lattice.contains(c)

    def issubset(self, other: "Subgroup") -> bool:
        return self.lattice.issubset(other.lattice)

    def __eq__(self, other):
        if not isinstance(other, Subgroup):
            return NotImplemented
        return self.ambient.moduli == other.ambient.moduli and self.lattice == other.lattice

    def __hash__(self):
        return hash(self.lattice)

    def __add__(self, other):
        return Subgroup(self.ambient, self.lattice + other.lattice)

    def intersection(self, other: "Subgroup") -> "Subgroup":
        return Subgroup(self.ambient, self.lattice.intersection(other.lattice))

    def image_under(self, f: AbHom) -> "Subgroup":
        return Subgroup.generated(f.target, [f.apply(g) for g in self.generators()])

    def presentation(self) -> "Subquotient":
        return Subquotient(self.lattice, Lattice.zero(self.ambient.moduli), self.ambient)

    def __repr__(self):
        return f"Subgroup(order={self.order() if self.lattice.is_finite() else 'inf'}, gens={self.generators()})"


class Subquotient:
    """``span(cycles) / span(boundaries)`` inside a coordinate group.

    ``group`` is the resulting :class:`FgAbGroup`; ``project`` sends a cycle
    (ambient coordinates) to its class and ``lift`` returns the canonical
    representative cycle of a class.
    """

    def __init__(self, cycles: Lattice, boundaries: Lattice, ambient: FgAbGroup | None = None):
        if cycles.moduli != boundaries.moduli:
            raise LinalgError("cycles and boundaries live in different ambients")
        self.cycles = cycles
        self.boundaries = boundaries
        self.ambient = ambient
        self.moduli = cycles.moduli
        h = len(cycles.rows)
        rels = []
        for i, (j, r) in enumerate(cycles.rows):
            d = self.moduli[j]
            if d:
                rel = [-c for c in cycles.express(_scale(r, d // r[j], self.moduli))]
                rel[i] += d // r[j]
                rels.append(rel)
        self.cycle_relations = [r[:] for r in rels]
        for j, r in boundaries.rows:
            try:
                rels.append(cycles.express(r))
            except NotInSubgroupError:
                raise SubquotientError(
                    f"boundary generator with pivot {j} is not in the cycle span"
                ) from None
        self.group = FgAbGroup(h, rels)

    def project(self, z: Sequence[int]) -> tuple[int, ...]:
        rem, coeffs = self.cycles.reduce(z)
        if any(rem):
            raise NotInSubgroupError("element is not in the cycle span")
        return self.group.canonical(coeffs)

    def lift(self, c: Sequence[int]) -> list[int]:
        y = self.group.lift(c)
        out = [0] * len(self.moduli)
        for a, (_, r) in zip(y, self.cycles.rows):
            if a:
                for i, b in enumerate(r):
                    out[i] += a * b
        return reduce_vec(out, self.moduli)

    def contains(self, z) -> bool:
        return self.cycles.contains(z)

    def is_zero(self, z) -> bool:
        return self.boundaries.contains(z)

    def inclusion(self) -> AbHom:
        """The map ``group -> ambient`` given by lifting (only for B = 0)."""
        if self.ambient is None:
            raise LinalgError("no ambient group attached")
        if self.boundaries.rows:
            raise LinalgError("inclusion only exists for a subgroup (no boundaries)")
        return AbHom.from_images(self.group, self.ambient,
                                 [self.lift(g) for g in self.group.gens()])

    @property
    def cycles_group(self) -> FgAbGroup:
        return FgAbGroup(len(self.cycles.rows), self.cycle_relations)

    def projection(self) -> AbHom:
        """``cycles_group -> group`` as an :class:`AbHom`."""
        Z = self.cycles_group
        images = [self.group.canonical(Z.lift(g)) for g in Z.gens()]
        return AbHom.from_images(Z, self.group, images)


def _columns(Z) -> list[list[int]]:
    if isinstance(Z, IntMatrix):
        return Z.columns()
    return [list(v) for v in Z]


def subquotient(Z, B, ambient) -> Subquotient:
    """``span(Z) / span(B)`` in ``ambient``.

    ``Z`` and ``B`` are IntMatrix (columns generate) or lists of vectors in
    the ambient's canonical coordinates. ``ambient`` is an FgAbGroup or a
    sequence of per-coordinate moduli.
    """
    group = ambient if isinstance(ambient, FgAbGroup) else None
    moduli = ambient.moduli if group is not None else tuple(ambient)
    return Subquotient(Lattice.span(_columns(Z), moduli), Lattice.span(_columns(B), moduli), group)
