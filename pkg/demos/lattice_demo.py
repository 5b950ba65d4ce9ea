"""Close the shifted relation spaces of gr A under sum and intersection.

For a Koszul algebra the resulting subspace lattice is distributive. Three
lines in a plane give the smallest lattice that is not.
"""

from __future__ import annotations

import layered_koszul as lk


def main() -> None:
    for name, g in (("hypercube(2)", lk.hypercube(2)), ("hypercube(3)", lk.hypercube(3))):
        top = g.positive[0].name
        for k in (3, 4):
            for extra in (None, (top, 1)):
                rep = lk.theorem46_check(g, k, extra)
                label = f"{name} k={k}" + (f" with P_1({top})" if extra else "")
                print(f"{label:36} generators {rep.n_generators}  size {rep.size:4}  distributive {bool(rep.distributive)}")

    f = lk.GF(32003)
    lines = [lk.Subspace.span([v], 2, f) for v in ([1, 0], [0, 1], [1, 1])]
    lat = lk.lattice_closure(lines)
    res = lk.is_distributive(lat)
    print(f"\nthree lines in a plane: size {lat.size}, distributive {bool(res)}, witness {res.witness}")


if __name__ == "__main__":
    main()
