"""Built-in problems, addressable by name.

Hand values (M = Z/2 trivial unless stated):

- fix-a: Z/2 -> Z/4 -> Z/2. H^1(Z/4) = Z/2 and its generator kills 2, so restriction
  to N is zero and the map out of H^1(N,M)^Q = Z/2 is injective.
- fix-b: Z/2 -> (Z/2)^2 -> Z/2. H^2((Z/2)^2, Z/2) = (Z/2)^3.
- fix-c: A_3 -> S_3 -> Z/2, M = Z/3 with transpositions acting by -1. Q acts trivially on
  H^1(A_3, M) = Z/3 (inversion on N cancels inversion on M); H^2(Z/2, M^N) = 0.
- fix-d: Z(D_8) -> D_8 -> (Z/2)^2.
- fix-e: Z(Q_8) -> Q_8 -> (Z/2)^2.
- fix-f: Z/3 -> Z/9 -> Z/3, M = Z/3. Signs are visible mod 3, unlike mod 2.
- fix-g: Z/2 -> Z/4 -> Z/2, M = Z/4 with the generator acting by -1.
- deg-n-trivial / deg-n-whole: S_3 with M = Z/3 sign, N = 1 and N = S_3.
"""

from __future__ import annotations

from .groups import builtin_group
from .problem import Options, ProblemSpec


def _trivial(order, k):
    eye = tuple(tuple(int(i == j) for j in range(k)) for i in range(k))
    return (eye,) * order


def _scalars(values, m):
    return tuple((((v % m),),) for v in values)


# S3 elements are sorted permutations; 1, 2, 5 are the transpositions
_SIGN = (1, -1, -1, 1, 1, -1)

_TABLE = {
    "fix-a": ("C4", (0, 2), (2,), None, "Z/2 -> Z/4 -> Z/2, M = Z/2 trivial"),
    "fix-b": ("V4", (0, 1), (2,), None, "Z/2 -> (Z/2)^2 -> Z/2, M = Z/2 trivial"),
    "fix-c": ("S3", (0, 3, 4), (3,), _SIGN, "A3 -> S3 -> Z/2, M = Z/3 sign action"),
    "fix-d": ("D8", (0, 2), (2,), None, "Z(D8) -> D8 -> (Z/2)^2, M = Z/2 trivial"),
    "fix-e": ("Q8", (0, 1), (2,), None, "Z(Q8) -> Q8 -> (Z/2)^2, M = Z/2 trivial"),
    "fix-f": ("C9", (0, 3, 6), (3,), None, "Z/3 -> Z/9 -> Z/3, M = Z/3 trivial"),
    "fix-g": ("C4", (0, 2), (4,), (1, -1, 1, -1), "Z/2 -> Z/4 -> Z/2, M = Z/4, generator acts by -1"),
    "deg-n-trivial": ("S3", (0,), (3,), _SIGN, "N = 1 in S3, M = Z/3 sign action"),
    "deg-n-whole": ("S3", (0, 1, 2, 3, 4, 5), (3,), _SIGN, "N = S3, M = Z/3 sign action"),
}

FIXTURES = {name: row[-1] for name, row in sorted(_TABLE.items())}
ACCEPTANCE = ("fix-a", "fix-b", "fix-c", "fix-d", "fix-e")


def fixture(name: str) -> ProblemSpec:
    group, N, inv, scalars, desc = _TABLE[name]
    G = builtin_group(group)
    action = _trivial(G.order, len(inv)) if scalars is None else _scalars(scalars, inv[0])
    return ProblemSpec(G.table, tuple(N), tuple(inv), action, group,
                       Options(name=name, description=desc))


def build(name: str):
    return fixture(name).build()
