"""Koszulity checks for quadratic algebras at bounded degree.

Three independent routes are provided: bigraded Tor from the reduced bar
complex, the numerical identity ``H_A(t) H_{A^!}(-t) = 1``, and
distributivity of the lattice generated by the shifted relation spaces.
The bar complex is built on top of :class:`GradedQuotient`, which computes a
basis of normal words of ``A = T(V)/(R)`` degree by degree together with
the right-multiplication maps.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field
from typing import NamedTuple

import numpy as np

from .errors import AmbientCapExceeded, LatticeCapExceeded
from .field import Field, Subspace, apply_map, intersect_kernel, kernel, rank, rref_with_pivots, subspace_intersect, sum_and_intersection
from .graph import LayeredGraph
from .relations import (
    QuadraticPresentation,
    p_span,
    path_span,
    quadratic_relations_gr,
    r_intersect,
    s_span,
)
from .tensor import DEFAULT_AMBIENT_CAP, GradedComponent, concat_subspaces, f_map, full_power, g_map, power_sandwich

DEFAULT_LATTICE_CAP = 5000
# dense working matrices may hold up to this many times the ambient cap entries
_DENSE_FACTOR = 32


# ---------------------------------------------------------------------------
# the quotient algebra, degree by degree


class GradedQuotient:
    """Graded pieces of ``T(V)/(R)`` for a quadratic presentation.

    ``words[k]`` lists the normal words spanning ``A_k``; ``right[k][y]`` is
    the ``(dim A_{k+1}, dim A_k)`` matrix of right multiplication by letter
    ``y``.  Only ``dim A_{k-1} * n`` coordinates are ever materialized for
    degree ``k``, never the full ``n**k``.
    """

    def __init__(self, presentation: QuadraticPresentation, cap: int | None = DEFAULT_AMBIENT_CAP):
        self.presentation = presentation
        self.field: Field = presentation.field
        self.n = presentation.generator_dim
        self.cap = cap
        n = self.n
        self.words: dict[int, list[tuple]] = {0: [()], 1: [(x,) for x in range(n)]}
        self.parent: dict[int, list[tuple[int, int]]] = {1: [(0, x) for x in range(n)]}
        unit_to = []
        for x in range(n):
            m = self.field.zeros((n, 1))
            m[x, 0] = self.field.scalar(1)
            unit_to.append(m)
        self.right: dict[int, list[np.ndarray]] = {0: unit_to}
        rel = presentation.relation_space
        self._rel = rel.basis.reshape(rel.dim, n, n)
        self._products: dict[tuple[int, int], np.ndarray] = {}
        self._pending: dict[int, tuple] = {}

    @property
    def top(self) -> int:
        return max(self.words)

    def dim(self, k: int) -> int:
        self.extend(k)
        return len(self.words[k])

    def dims(self, max_degree: int) -> list[int]:
        self.extend(max_degree)
        return [len(self.words[k]) for k in range(max_degree + 1)]

    def extend(self, k: int) -> None:
        while self.top < k:
            self._next_degree()

    def _check_dense(self, k: int, entries: int) -> None:
        limit = None if self.cap is None else self.cap * _DENSE_FACTOR
        if limit is not None and entries > limit:
            raise AmbientCapExceeded(
                f"instance too large: degree {k} needs a dense matrix of {entries} entries "
                f"(limit {_DENSE_FACTOR} x cap {self.cap})", self.cap)

    def _next_degree(self) -> None:
        field, n = self.field, self.n
        k = self.top + 1
        d1 = len(self.words[k - 1])
        d2 = len(self.words[k - 2])
        width = d1 * n
        if self.cap is not None and width > self.cap:
            raise AmbientCapExceeded(f"instance too large: degree {k} needs {width} coordinates (cap {self.cap})", self.cap)
        r = self._rel.shape[0]
        if r and d2:
            self._check_dense(k, r * d2 * width)
            # image of A_{k-2} ⊗ R in A_{k-1} ⊗ V:  (a, rel) -> Σ_x rel[x, y] * (a·x) ⊗ y
            rm = np.stack(self.right_maps(k - 2))  # (n, d1, d2) indexed [x, i, a]
            lhs = rm.transpose(2, 1, 0).reshape(d2 * d1, n)  # [(a, i), x]
            rhs = self._rel.transpose(1, 0, 2).reshape(n, r * n)  # [x, (rel, y)]
            img = field.matmul(lhs, rhs).reshape(d2, d1, r, n)
            img = img.transpose(2, 0, 1, 3).reshape(r * d2, width)
            basis, piv = rref_with_pivots(img, field)
        else:
            basis, piv = field.zeros((0, width)), ()
        pivset = set(piv)
        free = [c for c in range(width) if c not in pivset]
        self.words[k] = [self.words[k - 1][c // n] + (c % n,) for c in free]
        self.parent[k] = [(c // n, c % n) for c in free]
        # right multiplication A_{k-1} -> A_k is built on first use
        self._pending[k - 1] = (basis, piv, free, width)

    def right_maps(self, k: int) -> list[np.ndarray]:
        """``right[k][y]``: matrices of ``A_k -> A_{k+1}``, ``a -> a·y``."""
        self.extend(k + 1)
        if k not in self.right:
            field, n = self.field, self.n
            basis, piv, free, width = self._pending.pop(k)
            self._check_dense(k + 1, width * len(free))
            pos = {c: t for t, c in enumerate(free)}
            nf = field.zeros((width, len(free)))
            one = field.scalar(1)
            for c in free:
                nf[c, pos[c]] = one
            if piv:
                nf[list(piv)] = field.reduce(-basis[:, free])
            by_letter = nf.reshape(width // n, n, len(free))
            self.right[k] = [np.ascontiguousarray(by_letter[:, y, :].T) for y in range(n)]
        return self.right[k]

    def product(self, a: int, b: int) -> np.ndarray:
        """Multiplication ``A_a ⊗ A_b -> A_{a+b}`` as an array ``[target, i, j]``."""
        key = (a, b)
        if key in self._products:
            return self._products[key]
        self.extend(a + b)
        field = self.field
        da = len(self.words[a])
        if b == 0:
            out = field.eye(da)[:, :, None]
        else:
            prev = self.product(a, b - 1)
            dt = len(self.words[a + b])
            out = field.zeros((dt, da, len(self.words[b])))
            parents = self.parent[b]
            for y in range(self.n):
                js = [j for j, (_i, yy) in enumerate(parents) if yy == y]
                if not js:
                    continue
                src = prev[:, :, [parents[j][0] for j in js]]
                flat = src.reshape(src.shape[0], src.shape[1] * src.shape[2])
                res = field.matmul(self.right_maps(a + b - 1)[y], flat)
                out[:, :, js] = res.reshape(dt, da, len(js))
        self._products[key] = out
        return out

    def multiply_words(self, u: tuple, v: tuple) -> np.ndarray:
        """Coordinates in ``A_{|u|+|v|}`` of the product of two normal words."""
        a, b = len(u), len(v)
        i = self.words[a].index(u)
        j = self.words[b].index(v)
        return self.product(a, b)[:, i, j]


def hilbert_dims(presentation: QuadraticPresentation, max_degree: int, cap: int | None = DEFAULT_AMBIENT_CAP) -> list[int]:
    return GradedQuotient(presentation, cap).dims(max_degree)


# ---------------------------------------------------------------------------
# Koszul dual and the numerical criterion


def quadratic_dual(p: QuadraticPresentation) -> QuadraticPresentation:
    """Same generators; relations are the orthogonal complement of ``R``
    under the coordinate dot product on ``V ⊗ V``."""
    n2 = p.generator_dim**2
    if p.relation_space.dim == 0:
        perp = Subspace.full(n2, p.field)
    else:
        perp = kernel(p.relation_space.basis, p.field)
    return QuadraticPresentation(p.alphabet, perp, name=f"{p.name}!" if p.name else "dual")


def euler_check(p: QuadraticPresentation, max_degree: int, cap: int | None = DEFAULT_AMBIENT_CAP) -> list[int]:
    """Residuals ``r_n = Σ_i (-1)^i dim A^!_i dim A_{n-i}`` for ``n = 1..max_degree``.

    All zero when ``A`` is Koszul.
    """
    a = hilbert_dims(p, max_degree, cap)
    d = hilbert_dims(quadratic_dual(p), max_degree, cap)
    return [sum((-1) ** i * d[i] * a[m - i] for i in range(m + 1)) for m in range(1, max_degree + 1)]


# ---------------------------------------------------------------------------
# bar complex


def compositions(total: int, parts: int):
    """Ordered tuples of ``parts`` positive integers summing to ``total``."""
    if parts == 0:
        if total == 0:
            yield ()
        return
    for cut in itertools.combinations(range(1, total), parts - 1):
        bounds = (0,) + cut + (total,)
        yield tuple(bounds[i + 1] - bounds[i] for i in range(parts))


@dataclass
class TorTable:
    """Dimensions of ``Tor_{i,j}(F, F)`` for ``i + j <= bound``."""

    bound: int
    entries: dict[tuple[int, int], int]

    def __getitem__(self, ij):
        return self.entries.get(ij, 0)

    def off_diagonal(self) -> dict[tuple[int, int], int]:
        return {ij: d for ij, d in self.entries.items() if ij[0] != ij[1] and d}

    def is_koszul(self) -> bool:
        """Off-diagonal vanishing up to the bound."""
        return not self.off_diagonal()

    def rows(self):
        for (i, j) in sorted(self.entries):
            yield i, j, self.entries[(i, j)]


class BarComplex:
    """The reduced bar complex ``B_i = (A_+)^{⊗ i}`` in internal degree ``j``."""

    def __init__(self, algebra: GradedQuotient):
        self.A = algebra
        self._ranks: dict[tuple[int, int], int] = {}

    def _block_dims(self, comp) -> int:
        out = 1
        for c in comp:
            out *= self.A.dim(c)
        return out

    def chain_dim(self, i: int, j: int) -> int:
        if i == 0:
            return 1 if j == 0 else 0
        return sum(self._block_dims(c) for c in compositions(j, i))

    def differential(self, i: int, j: int) -> np.ndarray:
        """``d_i : B_{i,j} -> B_{i-1,j}`` as a dense (target, source) matrix, ``i >= 2``.

        ``d(a_1|...|a_i) = Σ_t (-1)^t (a_1|...|a_t a_{t+1}|...|a_i)``.
        """
        field = self.A.field
        src = list(compositions(j, i))
        tgt = list(compositions(j, i - 1))
        src_off, tgt_off = {}, {}
        acc = 0
        for c in src:
            src_off[c] = acc
            acc += self._block_dims(c)
        n_src = acc
        acc = 0
        for c in tgt:
            tgt_off[c] = acc
            acc += self._block_dims(c)
        out = field.zeros((acc, n_src))
        for c in src:
            for t in range(1, i):
                a, b = c[t - 1], c[t]
                merged = c[: t - 1] + (a + b,) + c[t + 1:]
                mu = self.A.product(a, b)
                mu = mu.reshape(mu.shape[0], mu.shape[1] * mu.shape[2])
                block = np.kron(field.eye(self._block_dims(c[: t - 1])),
                                np.kron(mu, field.eye(self._block_dims(c[t + 1:]))))
                if t % 2:
                    block = field.reduce(-block)
                r0, c0 = tgt_off[merged], src_off[c]
                view = out[r0:r0 + block.shape[0], c0:c0 + block.shape[1]]
                out[r0:r0 + block.shape[0], c0:c0 + block.shape[1]] = field.reduce(view + block)
        return out

    def rank_d(self, i: int, j: int) -> int:
        """Rank of ``d_i`` in internal degree ``j`` (``d_1 = 0`` for ``j > 0``)."""
        if i <= 1 or i > j:
            return 0
        key = (i, j)
        if key not in self._ranks:
            # rows = source chains; the blocked kernel prefers many short rows
            self._ranks[key] = rank(self.differential(i, j).T, self.A.field)
        return self._ranks[key]

    def tor(self, i: int, j: int) -> int:
        if i == 0:
            return 1 if j == 0 else 0
        if j < i:
            return 0
        return self.chain_dim(i, j) - self.rank_d(i, j) - self.rank_d(i + 1, j)


def tor_table(p: QuadraticPresentation, total_bound: int, cap: int | None = DEFAULT_AMBIENT_CAP) -> TorTable:
    """``Tor^A_{i,j}(F, F)`` for all ``i + j <= total_bound``."""
    A = GradedQuotient(p, cap)
    bar = BarComplex(A)
    entries = {}
    for i in range(total_bound + 1):
        for j in range(total_bound - i + 1):
            entries[(i, j)] = bar.tor(i, j)
    return TorTable(total_bound, entries)


# ---------------------------------------------------------------------------
# subspace lattices


class _Blocks:
    """Coordinate blocks of a grading; subspaces split as tuples of parts."""

    def __init__(self, ambient_dim: int, grading=None):
        if grading is None:
            self.blocks = [np.arange(ambient_dim)]
        else:
            grading = np.asarray(grading)
            labels = np.unique(grading)
            self.blocks = [np.flatnonzero(grading == lab) for lab in labels]
        self.ambient_dim = ambient_dim

    def split(self, s: Subspace):
        """Parts of a homogeneous subspace, or None if it is not homogeneous."""
        if len(self.blocks) == 1:
            return (s,)
        parts = tuple(Subspace.span(s.basis[:, b], len(b), s.field) for b in self.blocks)
        if sum(q.dim for q in parts) != s.dim:
            return None
        return parts

    def assemble(self, parts, field: Field) -> Subspace:
        if len(self.blocks) == 1:
            return parts[0]
        rows, piv = [], []
        for b, q in zip(self.blocks, parts):
            for r in range(q.dim):
                row = field.zeros(self.ambient_dim)
                row[b] = q.basis[r]
                rows.append(row)
                piv.append(int(b[q.pivots[r]]))
        if not rows:
            return Subspace.zero(self.ambient_dim, field)
        order = np.argsort(piv, kind="stable")
        basis = np.stack([rows[t] for t in order])
        return Subspace(field, self.ambient_dim, basis, [piv[t] for t in order])


@dataclass
class SubspaceLattice:
    """A family of subspaces closed under sum and intersection.

    ``join[a, b]`` and ``meet[a, b]`` are indices into the element list.
    """

    ambient_dim: int
    field: Field
    generators: list[int]
    join: np.ndarray
    meet: np.ndarray
    _parts: list = dc_field(repr=False, default_factory=list)
    _blocks: _Blocks | None = dc_field(repr=False, default=None)

    def __len__(self):
        return len(self._parts)

    @property
    def size(self) -> int:
        return len(self._parts)

    def element(self, i: int) -> Subspace:
        return self._blocks.assemble(self._parts[i], self.field)

    @property
    def elements(self) -> list[Subspace]:
        return [self.element(i) for i in range(len(self))]

    def dims(self) -> list[int]:
        return [sum(q.dim for q in parts) for parts in self._parts]


def lattice_closure(gens, element_cap: int = DEFAULT_LATTICE_CAP, grading=None) -> SubspaceLattice:
    """Close ``gens`` under sum and intersection by a worklist.

    ``grading`` optionally labels each coordinate; when every generator is
    homogeneous for it, all operations run blockwise, which gives the same
    lattice much faster.
    """
    gens = list(gens)
    if not gens:
        raise ValueError("need at least one generator")
    amb = gens[0].ambient_dim
    field = gens[0].field
    for g in gens:
        if g.ambient_dim != amb or g.field != field:
            raise ValueError("generators must share ambient dimension and field")
    blocks = _Blocks(amb, grading) if grading is not None else _Blocks(amb)
    split = [blocks.split(g) for g in gens]
    if any(s is None for s in split):
        blocks = _Blocks(amb)
        split = [(g,) for g in gens]

    # parts are interned per block; elements are tuples of part ids, and
    # blockwise sum/intersection results are cached by id pair
    nb = len(blocks.blocks)
    parts: list[list[Subspace]] = [[] for _ in range(nb)]
    part_ids: list[dict] = [{} for _ in range(nb)]
    cache: list[dict] = [{} for _ in range(nb)]

    def intern(b: int, q: Subspace) -> int:
        kk = q.key()
        i = part_ids[b].get(kk)
        if i is None:
            i = part_ids[b][kk] = len(parts[b])
            parts[b].append(q)
        return i

    def combine(b: int, x: int, y: int) -> tuple[int, int]:
        if x == y:
            return x, x
        pair = (x, y) if x < y else (y, x)
        hit = cache[b].get(pair)
        if hit is None:
            s, m = sum_and_intersection(parts[b][x], parts[b][y])
            hit = cache[b][pair] = (intern(b, s), intern(b, m))
        return hit

    elements: list[tuple[int, ...]] = []
    index: dict = {}

    def add(ids) -> int:
        if ids not in index:
            if len(elements) >= element_cap:
                raise LatticeCapExceeded(f"lattice closure exceeds {element_cap} elements", element_cap)
            index[ids] = len(elements)
            elements.append(ids)
        return index[ids]

    gen_idx = [add(tuple(intern(b, q) for b, q in enumerate(s))) for s in split]
    join: dict[tuple[int, int], int] = {}
    meet: dict[tuple[int, int], int] = {}
    k = 0
    while k < len(elements):
        join[(k, k)] = meet[(k, k)] = k
        for j in range(k):
            res = [combine(b, x, y) for b, (x, y) in enumerate(zip(elements[j], elements[k]))]
            s = add(tuple(r[0] for r in res))
            m = add(tuple(r[1] for r in res))
            join[(j, k)] = join[(k, j)] = s
            meet[(j, k)] = meet[(k, j)] = m
        k += 1
    elements = [tuple(parts[b][i] for b, i in enumerate(ids)) for ids in elements]
    size = len(elements)
    J = np.zeros((size, size), dtype=np.int64)
    M = np.zeros((size, size), dtype=np.int64)
    for (a, b), c in join.items():
        J[a, b] = c
    for (a, b), c in meet.items():
        M[a, b] = c
    return SubspaceLattice(amb, field, gen_idx, J, M, elements, blocks)


class Distributivity(NamedTuple):
    distributive: bool
    witness: tuple[int, int, int] | None  # element indices (a, b, c) with a∩(b+c) ≠ a∩b + a∩c

    def __bool__(self):
        return self.distributive


def is_distributive(lat: SubspaceLattice) -> Distributivity:
    """Check ``a ∩ (b + c) = (a ∩ b) + (a ∩ c)`` on all triples.

    Subspace lattices are modular, so this one identity decides it.
    """
    J, M = lat.join, lat.meet
    for a in range(lat.size):
        lhs = M[a][J]  # [b, c] -> a ∩ (b + c)
        rhs = J[M[a][:, None], M[a][None, :]]
        bad = np.argwhere(lhs != rhs)
        if bad.size:
            b, c = bad[0]
            return Distributivity(False, (a, int(b), int(c)))
    return Distributivity(True, None)


# ---------------------------------------------------------------------------
# executable forms of the structural lemmas


class EqualityCheck(NamedTuple):
    holds: bool
    lhs_dim: int
    rhs_dim: int

    def __bool__(self):
        return self.holds


def _gr(graph, presentation, field):
    if presentation is not None:
        return presentation
    return quadratic_relations_gr(graph, field) if field is not None else quadratic_relations_gr(graph)


def lemma42_check(graph: LayeredGraph, k: int, presentation: QuadraticPresentation | None = None,
                  cap: int | None = DEFAULT_AMBIENT_CAP, field: Field | None = None) -> EqualityCheck:
    """``R^(k) = Path_k ∩ ⋂_{i=0}^{k-2} ker(I^{i+1} ⊗ f ⊗ I^{k-i-2})`` for the gr relations."""
    if k < 2:
        raise ValueError("k must be >= 2")
    p = _gr(graph, presentation, field)
    n = p.generator_dim
    lhs = r_intersect(p, k, cap)
    rhs = path_span(graph, k, p.field, cap)
    for i in range(k - 1):
        rhs = intersect_kernel(rhs, f_map(n, k, i + 1))
    return EqualityCheck(lhs == rhs, lhs.dim, rhs.dim)


def lemma44_check(graph: LayeredGraph, v: str, j: int, l: int, presentation: QuadraticPresentation | None = None,
                  cap: int | None = DEFAULT_AMBIENT_CAP, field: Field | None = None) -> EqualityCheck:
    """``P_j(v) V^{l+1} ∩ R^(l+2) = g_{l+3}(S_{j-1}(v) V^{l+2} ∩ R^(l+3))``."""
    if l < 0 or j < 1:
        raise ValueError("need l >= 0 and j >= 1")
    if graph.level(v) < 2:
        raise ValueError(f"vertex {v!r} must have level >= 2")
    p = _gr(graph, presentation, field)
    n, fld = p.generator_dim, p.field
    lhs = concat_subspaces(p_span(graph, v, j, fld), full_power(n, l + 1, fld, cap), cap)
    lhs = subspace_intersect(lhs, r_intersect(p, l + 2, cap))
    inner = concat_subspaces(s_span(graph, v, j - 1, fld), full_power(n, l + 2, fld, cap), cap)
    inner = subspace_intersect(inner, r_intersect(p, l + 3, cap))
    rhs = apply_map(g_map(n, l + 3), inner)
    return EqualityCheck(lhs == rhs, lhs.dim, rhs.dim)


class LatticeReport(NamedTuple):
    distributive: bool
    size: int
    n_generators: int
    witness: tuple | None

    def __bool__(self):
        return self.distributive


def relation_family(p: QuadraticPresentation, k: int, cap: int | None = DEFAULT_AMBIENT_CAP) -> list[Subspace]:
    """``[V^i R V^(k-2-i) for i = 0..k-2]`` in the length-``k`` component."""
    return [power_sandwich(p.generator_dim, i, p.relation_space, k - 2 - i, cap) for i in range(k - 1)]


def theorem46_check(graph: LayeredGraph, k: int, include_p: tuple[str, int] | None = None,
                    presentation: QuadraticPresentation | None = None,
                    cap: int | None = DEFAULT_AMBIENT_CAP, lattice_cap: int = DEFAULT_LATTICE_CAP,
                    field: Field | None = None) -> LatticeReport:
    """Distributivity of the lattice generated by the shifted gr relation
    spaces in length ``k``, optionally with ``P_l(v) V^(k-1)`` added."""
    if k < 2:
        raise ValueError("k must be >= 2")
    p = _gr(graph, presentation, field)
    n = p.generator_dim
    gens = relation_family(p, k, cap)
    if include_p is not None:
        v, l = include_p
        gens.insert(0, concat_subspaces(p_span(graph, v, l, p.field), full_power(n, k - 1, p.field, cap), cap))
    grading = GradedComponent(p.alphabet, k, cap).level_profiles()
    lat = lattice_closure(gens, lattice_cap, grading=grading)
    res = is_distributive(lat)
    return LatticeReport(res.distributive, lat.size, len(gens), res.witness)
