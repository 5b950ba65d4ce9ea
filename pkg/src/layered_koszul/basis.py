"""Combinatorial basis of the associated graded algebra and Hilbert counts.

A basis word is a sequence of pairs ``(b, m)`` with ``1 <= m <= level(b)``
in which no pair can be composed with the next one.  Its degree is the sum
of the ``m``.  Counting these words per degree must agree with the
dimensions obtained by linear algebra.
"""

from __future__ import annotations

from typing import Iterator, NamedTuple

from .field import DEFAULT_FIELD, Field
from .graph import LayeredGraph
from .tensor import DEFAULT_AMBIENT_CAP


class BasisPair(NamedTuple):
    b: str
    m: int


BasisWord = tuple  # of BasisPair


def composable(graph: LayeredGraph, p: BasisPair, q: BasisPair) -> bool:
    """True iff ``b_p > b_q`` and ``level(b_q) == level(b_p) - m_p``."""
    return graph.level(q.b) == graph.level(p.b) - p.m and graph.greater_than(p.b, q.b)


def basis_pairs(graph: LayeredGraph) -> list[BasisPair]:
    """All pairs in canonical order: vertex order first, then ``m``."""
    return [BasisPair(v.name, m) for v in graph.positive for m in range(1, v.level + 1)]


def iter_basis(graph: LayeredGraph, degree: int) -> Iterator[BasisWord]:
    if degree < 0:
        raise ValueError("degree must be non-negative")
    pairs = basis_pairs(graph)
    # successors[i]: pairs allowed right after pairs[i]
    successors = [[j for j, q in enumerate(pairs) if not composable(graph, p, q)] for p in pairs]
    everything = list(range(len(pairs)))
    word: list[int] = []

    def extend(allowed, left) -> Iterator[BasisWord]:
        if left == 0:
            yield tuple(pairs[i] for i in word)
            return
        for j in allowed:
            m = pairs[j].m
            if m > left:
                continue
            word.append(j)
            yield from extend(successors[j], left - m)
            word.pop()

    yield from extend(everything, degree)


def enumerate_basis(graph: LayeredGraph, degree: int) -> list[BasisWord]:
    """Every basis word of the given degree, in lexicographic order."""
    return list(iter_basis(graph, degree))


def count_basis(graph: LayeredGraph, degree: int) -> int:
    """Number of basis words of a degree, by a transfer count (no listing)."""
    if degree < 0:
        raise ValueError("degree must be non-negative")
    pairs = basis_pairs(graph)
    # ending[d][i]: words of degree d whose last pair is pairs[i]
    ending = [[0] * len(pairs) for _ in range(degree + 1)]
    for d in range(1, degree + 1):
        for i, q in enumerate(pairs):
            if q.m > d:
                continue
            if q.m == d:
                ending[d][i] = 1
                continue
            ending[d][i] = sum(
                c for p, c in zip(pairs, ending[d - q.m]) if c and not composable(graph, p, q)
            )
    return 1 if degree == 0 else sum(ending[degree])


def hilbert_from_basis(graph: LayeredGraph, max_degree: int) -> list[int]:
    """Basis word counts for degrees ``0..max_degree``."""
    return [len(enumerate_basis(graph, d)) for d in range(max_degree + 1)]


def hilbert_from_linalg(
    graph: LayeredGraph,
    presentation: str = "gr",
    max_degree: int = 4,
    field: Field = DEFAULT_FIELD,
    cap: int | None = DEFAULT_AMBIENT_CAP,
    method: str = "quotient",
) -> list[int]:
    """Graded dimensions of the quotient algebra for degrees ``0..max_degree``.

    ``method="quotient"`` builds the algebra degree by degree from normal
    words; ``method="ideal"`` computes ``n**k - dim I_k`` with the two-sided
    ideal spanned explicitly (slower, used as a cross-check).
    """
    from .koszul import hilbert_dims
    from .relations import presentation as build, quadratic_ideal_component

    p = build(graph, presentation, field)
    if method == "quotient":
        return hilbert_dims(p, max_degree, cap)
    if method == "ideal":
        n = p.generator_dim
        out = []
        for k in range(max_degree + 1):
            ideal = quadratic_ideal_component(p, k, cap).dim if k >= 2 else 0
            out.append(n**k - ideal)
        return out
    raise ValueError(f"unknown method {method!r}")
