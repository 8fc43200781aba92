"""Compare row o tr with +d2 and -d2 on every fixture.

Prints how many elements of H^1(N,M)^Q agree with each sign. Mod 2 the two
signs coincide, so only fixtures with odd torsion (fix-f) can tell them apart.
"""

from seventerm.fixtures import FIXTURES, build
from seventerm.maps import SevenTermContext
from seventerm.oracle import transgression_vs_d2


def main():
    print(f"{'fixture':<14} {'+d2':>5} {'-d2':>5} {'domain':>7}  sign visible")
    for name in sorted(FIXTURES):
        _, t = transgression_vs_d2(SevenTermContext(*build(name)))
        print(f"{name:<14} {t['agree']:>5} {t['agree_with_minus_d2']:>5} {t['domain']:>7}"
              f"  {t['sign_visible']}")


if __name__ == "__main__":
    main()
