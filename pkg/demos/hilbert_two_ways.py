"""Count the graded pieces of gr A for a few layered graphs in two ways.

The first column comes from listing non-composable (vertex, multiplicity)
words; the second from exact linear algebra on the quadratic presentation.
"""

from __future__ import annotations

import layered_koszul as lk

GRAPHS = {
    "hypercube(2)": lk.hypercube(2),
    "hypercube(3)": lk.hypercube(3),
    "chain(4)": lk.chain(4),
    "complete [1,3,2]": lk.complete_layered([1, 3, 2]),
}


def main(max_degree: int = 4) -> None:
    for name, g in GRAPHS.items():
        combinatorial = lk.hilbert_from_basis(g, max_degree)
        algebraic = lk.hilbert_from_linalg(g, "gr", max_degree)
        tag = "agree" if combinatorial == algebraic else "DIFFER"
        print(f"{name:18} {combinatorial}  {algebraic}  {tag}")

    # the smallest non-free example, with its basis words spelled out
    h2 = GRAPHS["hypercube(2)"]
    print("\ndegree-2 basis words of hypercube(2):")
    for word in lk.enumerate_basis(h2, 2):
        print("  " + " ".join(f"{p.b}^{p.m}" for p in word))


if __name__ == "__main__":
    main()
