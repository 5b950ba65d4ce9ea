"""Test Koszulity of A and gr A by Tor vanishing and by Hilbert series.

Tor is computed from the reduced bar complex, so "Koszul up to d" only
certifies the bigraded pieces with i + j <= d.
"""

from __future__ import annotations

import layered_koszul as lk


def report(name: str, pres: lk.QuadraticPresentation, bound: int) -> None:
    table = lk.tor_table(pres, bound)
    residuals = lk.euler_check(pres, bound)
    diag = [table[i, i] for i in range(bound // 2 + 1)]
    print(f"{name:16} diagonal Tor {diag}  off-diagonal {table.off_diagonal() or 'none'}  residuals {residuals}")


def main(bound: int = 5) -> None:
    for gname, g in (("hypercube(2)", lk.hypercube(2)), ("hypercube(3)", lk.hypercube(3))):
        for which in ("gr", "a"):
            report(f"{gname} {which}", lk.presentation(g, which), bound)

    # a quadratic algebra that is not Koszul: x^2 = xy, yx = 0
    xy = lk.Alphabet(("x", "y"), (1, 1))
    f = lk.GF(32003)
    bad = lk.QuadraticPresentation(xy, lk.Subspace.span([[1, -1, 0, 0], [0, 0, 1, 0]], 4, f))
    print("\nx^2 = xy, yx = 0:", lk.hilbert_dims(bad, 5))
    report("non-Koszul", bad, 8)


if __name__ == "__main__":
    main()
