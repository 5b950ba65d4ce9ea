"""Defining relations of A(Γ) and of its associated graded algebra.

Everything lives in the tensor algebra on ``V^+`` (letter ``*`` is zero).
Relation spaces are built per length component as exact subspaces.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field

from .errors import NonUniformGraphError
from .field import DEFAULT_FIELD, Field, Subspace, subspace_intersect
from .graph import DEFAULT_PATH_CAP, STAR, LayeredGraph, Path
from .tensor import (
    DEFAULT_AMBIENT_CAP,
    Alphabet,
    TensorVector,
    check_ambient,
    concat_subspaces,
    full_power,
    power_sandwich,
    word_index,
)


@dataclass
class QuadraticPresentation:
    """Generators ``V^+`` (by index) and relations ``R_2`` inside ``V ⊗ V``."""

    alphabet: Alphabet
    relation_space: Subspace
    generators: list[TensorVector] = dc_field(default_factory=list)
    name: str = ""

    def __post_init__(self):
        n = self.alphabet.size
        if self.relation_space.ambient_dim != n * n:
            raise ValueError("relation space must live in the length-2 component")

    @property
    def generator_dim(self) -> int:
        return self.alphabet.size

    @property
    def field(self) -> Field:
        return self.relation_space.field

    def relation_vectors(self) -> list[TensorVector]:
        """The canonical (RREF) basis of the relation space as vectors."""
        return [
            TensorVector.from_array(self.alphabet, 2, row, self.field)
            for row in self.relation_space.basis
        ]


# path polynomials -------------------------------------------------------------


def _check_k(k: int, lo: int, hi: int):
    if not lo <= k <= hi:
        raise ValueError(f"k={k} out of range [{lo}, {hi}]")


def path_coeff(graph: LayeredGraph, path: Path, k: int) -> TensorVector:
    """Coefficient of ``t^k`` in ``(1 - t e_1)...(1 - t e_m)``, over edge letters."""
    graph.path_vertices(path)
    _check_k(k, 0, len(path))
    alpha = Alphabet.edges(graph)
    letter = {e.id: i for i, e in enumerate(graph.edges)}
    sign = (-1) ** k
    coeffs = {}
    for idx in itertools.combinations(range(len(path)), k):
        w = tuple(letter[path[i]] for i in idx)
        coeffs[w] = coeffs.get(w, 0) + sign
    return TensorVector(alpha, k, coeffs)


def _difference(alpha: Alphabet, a: str, b: str) -> dict[int, int]:
    out: dict[int, int] = {}
    for name, c in ((a, 1), (b, -1)):
        if name != STAR:
            x = alpha.letter(name)
            out[x] = out.get(x, 0) + c
    return {x: c for x, c in out.items() if c}


def theta_path_coeff(graph: LayeredGraph, path: Path, k: int) -> TensorVector:
    """Image of ``e(path, k)`` in the tensor algebra on ``V^+``:
    ``(-1)^k Σ (v_{i1-1} - v_{i1}) ... (v_{ik-1} - v_{ik})``, with ``* = 0``."""
    verts = graph.path_vertices(path)
    _check_k(k, 1, len(path))
    alpha = Alphabet.vertices(graph)
    factors = [_difference(alpha, verts[i], verts[i + 1]) for i in range(len(path))]
    sign = (-1) ** k
    coeffs: dict[tuple, int] = {}
    for idx in itertools.combinations(range(len(path)), k):
        terms = [((), sign)]
        for i in idx:
            terms = [(w + (x,), c * d) for w, c in terms for x, d in factors[i].items()]
        for w, c in terms:
            coeffs[w] = coeffs.get(w, 0) + c
    return TensorVector(alpha, k, coeffs)


def v_word(graph: LayeredGraph, path: Path, k: int) -> tuple:
    """Letters of the first ``k`` vertices along the path."""
    verts = graph.path_vertices(path)
    _check_k(k, 1, len(path) + 1)
    head = verts[:k]
    if STAR in head:
        raise ValueError("v_word needs the first k vertices to have positive level")
    return Alphabet.vertices(graph).word(head)


# quadratic presentations ------------------------------------------------------


def _require_uniform(graph: LayeredGraph):
    u = graph.is_uniform()
    if not u.uniform:
        raise NonUniformGraphError(u.witness)


def _span_of(vectors, n_coords: int, field: Field) -> Subspace:
    if not vectors:
        return Subspace.zero(n_coords, field)
    return Subspace.span([v.to_array(field) for v in vectors], n_coords, field)


def _linked_triples(graph: LayeredGraph):
    """(v, u, w, x) with u, w children of v sharing the child x, u before w."""
    for vv in graph.positive:
        if vv.level < 2:
            continue
        kids = sorted(graph.s_set(vv.name, 1), key=lambda n: graph.index.get(n, -1))
        for u, w in itertools.combinations(kids, 2):
            for x in sorted(graph.children(u) & graph.children(w)):
                yield vv.name, u, w, x


def quadratic_relations_A(graph: LayeredGraph, field: Field = DEFAULT_FIELD) -> QuadraticPresentation:
    """Relations ``v(u-w) - u^2 + w^2 + (u-w)x`` of A(Γ) for a uniform graph."""
    _require_uniform(graph)
    alpha = Alphabet.vertices(graph)
    gens = []
    for v, u, w, x in _linked_triples(graph):
        vt = TensorVector.letters(alpha, _difference(alpha, v, STAR))
        uw = TensorVector.letters(alpha, _difference(alpha, u, w))
        uu = TensorVector.letters(alpha, _difference(alpha, u, STAR))
        ww = TensorVector.letters(alpha, _difference(alpha, w, STAR))
        xt = TensorVector.letters(alpha, _difference(alpha, x, STAR))
        g = vt * uw - uu * uu + ww * ww + uw * xt
        if not g.is_zero():
            gens.append(g)
    space = _span_of(gens, alpha.size**2, field)
    return QuadraticPresentation(alpha, space, gens, name="A")


def quadratic_relations_gr(graph: LayeredGraph, field: Field = DEFAULT_FIELD) -> QuadraticPresentation:
    """Relations ``v(u-w)`` of gr A(Γ) for a uniform graph."""
    _require_uniform(graph)
    alpha = Alphabet.vertices(graph)
    gens = []
    seen = set()
    for v, u, w, _x in _linked_triples(graph):
        if (v, u, w) in seen:
            continue
        seen.add((v, u, w))
        vt = TensorVector.letters(alpha, _difference(alpha, v, STAR))
        gens.append(vt * TensorVector.letters(alpha, _difference(alpha, u, w)))
    space = _span_of(gens, alpha.size**2, field)
    return QuadraticPresentation(alpha, space, gens, name="gr")


def presentation(graph: LayeredGraph, which: str, field: Field = DEFAULT_FIELD) -> QuadraticPresentation:
    if which == "a":
        return quadratic_relations_A(graph, field)
    if which == "gr":
        return quadratic_relations_gr(graph, field)
    raise ValueError(f"unknown presentation {which!r} (use 'a' or 'gr')")


# the full ideal ---------------------------------------------------------------


def relation_generators(
    graph: LayeredGraph, max_degree: int, path_cap: int = DEFAULT_PATH_CAP
) -> dict[int, list[TensorVector]]:
    """``θ(e(π1, j) - e(π2, j))`` for paths to ``*`` with a common tail.

    Each path is compared against the first path from the same tail, which
    spans the same space as all pairs.
    """
    out: dict[int, list[TensorVector]] = {j: [] for j in range(1, max_degree + 1)}
    for vv in graph.positive:
        paths = graph.enumerate_paths(vv.name, STAR, path_cap)
        if len(paths) < 2:
            continue
        ref = paths[0]
        for j in range(1, min(max_degree, vv.level) + 1):
            base = theta_path_coeff(graph, ref, j)
            for p in paths[1:]:
                g = theta_path_coeff(graph, p, j) - base
                if not g.is_zero():
                    out[j].append(g)
    return out


def ideal_component(
    n: int,
    generators: dict[int, Subspace],
    k: int,
    field: Field = DEFAULT_FIELD,
    cap: int | None = DEFAULT_AMBIENT_CAP,
) -> Subspace:
    """Length-``k`` part of the two-sided ideal generated by subspaces
    ``generators[j]`` of the length-``j`` components: ``Σ V^a G_j V^b``."""
    amb = check_ambient(n, k, cap)
    acc = Subspace.zero(amb, field)
    for j, g in sorted(generators.items()):
        if j > k or g.dim == 0:
            continue
        for a in range(k - j + 1):
            acc = acc + power_sandwich(n, a, g, k - j - a, cap)
    return acc


def full_relation_span(
    graph: LayeredGraph,
    k: int,
    field: Field = DEFAULT_FIELD,
    cap: int | None = DEFAULT_AMBIENT_CAP,
    path_cap: int = DEFAULT_PATH_CAP,
) -> Subspace:
    """Length-``k`` component of the image of the defining ideal in T(V^+)."""
    if k < 1:
        raise ValueError("k must be >= 1")
    n = len(graph.positive)
    check_ambient(n, k, cap)
    alpha = Alphabet.vertices(graph)
    gens = relation_generators(graph, k, path_cap)
    spaces = {j: _span_of(vs, n**j, field) for j, vs in gens.items()}
    assert all(v.alphabet == alpha for vs in gens.values() for v in vs)
    return ideal_component(n, spaces, k, field, cap)


def quadratic_ideal_component(p: QuadraticPresentation, k: int, cap: int | None = DEFAULT_AMBIENT_CAP) -> Subspace:
    """``Σ_i V^i R V^(k-2-i)``; zero for ``k < 2``."""
    n = p.generator_dim
    if k < 2:
        return Subspace.zero(check_ambient(n, k, cap), p.field)
    return ideal_component(n, {2: p.relation_space}, k, p.field, cap)


# the subspaces used in the Koszulity argument -----------------------------------


def _vertex_span(graph: LayeredGraph, names, field: Field) -> Subspace:
    alpha_n = len(graph.positive)
    idx = [graph.index[nm] for nm in names if nm != STAR]
    return Subspace.coordinate(idx, alpha_n, field)


def s_level_set(graph: LayeredGraph, v: str, l: int) -> frozenset[str]:
    """Vertices exactly ``l`` levels below ``v`` reachable from it (``l=0``: ``v``)."""
    if l == 0:
        graph.vertex(v)
        return frozenset([v])
    return graph.s_set(v, l)


def s_span(graph: LayeredGraph, v: str, l: int, field: Field = DEFAULT_FIELD) -> Subspace:
    """``span{u : v > u, |u| = |v| - l}`` inside ``F V^+`` (``*`` counts as 0)."""
    return _vertex_span(graph, s_level_set(graph, v, l), field)


def p_span(graph: LayeredGraph, v: str, l: int, field: Field = DEFAULT_FIELD) -> Subspace:
    """``span{u - w}`` over pairs from the same level set as :func:`s_span`."""
    names = sorted(nm for nm in s_level_set(graph, v, l) if nm != STAR)
    n = len(graph.positive)
    if len(names) < 2:
        return Subspace.zero(n, field)
    first = graph.index[names[0]]
    rows = field.zeros((len(names) - 1, n))
    for r, nm in enumerate(names[1:]):
        rows[r, first] = field.scalar(1)
        rows[r, graph.index[nm]] = field.scalar(-1)
    return Subspace.span(rows, n, field)


def consecutive_words(graph: LayeredGraph, k: int, start: str | None = None) -> list[tuple]:
    """Letter words ``v_0...v_{k-1}`` in ``V^+`` with each ``v_{i+1}`` a child of ``v_i``."""
    out = []

    def walk(acc):
        if len(acc) == k:
            # any word here extends to a path of length >= k: v_{k-1} has an out-edge
            assert graph.out_edges(acc[-1]), acc[-1]
            out.append(tuple(graph.index[x] for x in acc))
            return
        for c in sorted(graph.children(acc[-1]), key=lambda n: graph.index.get(n, -1)):
            if c != STAR:
                walk(acc + [c])

    starts = [start] if start is not None else [v.name for v in graph.positive]
    for s in starts:
        if s != STAR:
            walk([s])
    return out


def path_span(
    graph: LayeredGraph, k: int, field: Field = DEFAULT_FIELD, cap: int | None = DEFAULT_AMBIENT_CAP
) -> Subspace:
    """Span of ``v(π, k)`` over paths of length at least ``k``."""
    if k < 1:
        raise ValueError("k must be >= 1")
    n = len(graph.positive)
    amb = check_ambient(n, k, cap)
    return Subspace.coordinate([word_index(w, n) for w in consecutive_words(graph, k)], amb, field)


def path_span_from(
    graph: LayeredGraph, v: str, k: int, field: Field = DEFAULT_FIELD, cap: int | None = DEFAULT_AMBIENT_CAP
) -> Subspace:
    """``v V^(k-1) ∩ Path_k``."""
    n = len(graph.positive)
    lead = Subspace.coordinate([graph.index[v]], n, field)
    return concat_subspaces(lead, full_power(n, k - 1, field, cap), cap) & path_span(graph, k, field, cap)


def r_intersect(p: QuadraticPresentation, k: int, cap: int | None = DEFAULT_AMBIENT_CAP) -> Subspace:
    """``⋂_{i=0}^{k-2} V^i R V^(k-2-i)``."""
    if k < 2:
        raise ValueError("k must be >= 2")
    n = p.generator_dim
    acc = None
    for i in range(k - 1):
        term = power_sandwich(n, i, p.relation_space, k - 2 - i, cap)
        acc = term if acc is None else subspace_intersect(acc, term)
        if acc.dim == 0:
            break
    return acc
