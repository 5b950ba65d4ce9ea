"""Layered directed graphs with a unique sink ``*``.

Vertices are identified by name.  Every edge drops exactly one level, and
every vertex above level 0 has at least one outgoing edge.  Graphs are
immutable once built; :func:`validate` reports violations as data so that
broken inputs can still be inspected.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, NamedTuple

from .errors import GraphFormatError, PathCapExceeded

STAR = "*"
DEFAULT_PATH_CAP = 10**5


@dataclass(frozen=True)
class Vertex:
    name: str
    level: int

    @property
    def id(self) -> str:
        return self.name


@dataclass(frozen=True)
class Edge:
    id: int
    tail: str
    head: str


Path = tuple  # tuple of edge ids, nonempty


class Uniformity(NamedTuple):
    uniform: bool
    witness: tuple[str, str, str] | None  # (v, u, w) with u, w inequivalent children of v

    def __bool__(self):
        return self.uniform


def vertex_sort_key(v: Vertex):
    """Canonical order: descending level, then name."""
    return (-v.level, v.name)


class LayeredGraph:
    """A layered graph ``V_0 ∪ ... ∪ V_n`` with edges going down one level.

    ``distinguished`` maps each vertex of positive level to the id of one of
    its outgoing edges; missing entries are filled with the least outgoing
    edge by (head name, edge id).
    """

    def __init__(
        self,
        vertices: Iterable[Vertex | tuple[str, int]],
        edges: Iterable[Edge | tuple[str, str]],
        distinguished: dict[str, int] | None = None,
        height: int | None = None,
    ):
        vs = [v if isinstance(v, Vertex) else Vertex(str(v[0]), int(v[1])) for v in vertices]
        self._vertices: dict[str, Vertex] = {}
        for v in vs:
            if v.name in self._vertices:
                raise ValueError(f"duplicate vertex {v.name!r}")
            self._vertices[v.name] = v
        es = []
        for i, e in enumerate(edges):
            if not isinstance(e, Edge):
                e = Edge(i, str(e[0]), str(e[1]))
            for end in (e.tail, e.head):
                if end not in self._vertices:
                    raise KeyError(f"edge {e.id} references unknown vertex {end!r}")
            es.append(e)
        self._edges: dict[int, Edge] = {}
        for e in es:
            if e.id in self._edges:
                raise ValueError(f"duplicate edge id {e.id}")
            self._edges[e.id] = e
        self.height = max((v.level for v in vs), default=0) if height is None else int(height)

        self.order: tuple[Vertex, ...] = tuple(sorted(vs, key=vertex_sort_key))
        self.positive: tuple[Vertex, ...] = tuple(v for v in self.order if v.level > 0)
        self.index: dict[str, int] = {v.name: i for i, v in enumerate(self.positive)}

        out: dict[str, list[Edge]] = {v.name: [] for v in vs}
        for e in es:
            out[e.tail].append(e)
        for name in out:
            out[name].sort(key=lambda e: (vertex_sort_key(self._vertices[e.head]), e.id))
        self._out = {k: tuple(v) for k, v in out.items()}

        dist = dict(distinguished or {})
        for v in self.positive:
            if v.name not in dist and self._out[v.name]:
                dist[v.name] = min(self._out[v.name], key=lambda e: (e.head, e.id)).id
        self.distinguished: dict[str, int] = dist

        self._below = self._reachability()

    def _reachability(self) -> dict[str, frozenset[str]]:
        below: dict[str, frozenset[str]] = {}
        # process in increasing level so heads are done before tails
        for v in sorted(self._vertices.values(), key=lambda v: (v.level, v.name)):
            acc: set[str] = set()
            for e in self._out[v.name]:
                acc.add(e.head)
                acc |= below.get(e.head, frozenset())
            below[v.name] = frozenset(acc)
        return below

    # basic access ---------------------------------------------------------

    @property
    def vertices(self) -> tuple[Vertex, ...]:
        return self.order

    @property
    def edges(self) -> tuple[Edge, ...]:
        return tuple(sorted(self._edges.values(), key=self._edge_key))

    def _edge_key(self, e: Edge):
        return (vertex_sort_key(self._vertices[e.tail]), vertex_sort_key(self._vertices[e.head]), e.id)

    def vertex(self, name: str) -> Vertex:
        try:
            return self._vertices[name]
        except KeyError:
            raise KeyError(f"unknown vertex {name!r}") from None

    def edge(self, eid: int) -> Edge:
        return self._edges[eid]

    def level(self, name: str) -> int:
        return self.vertex(name).level

    def out_edges(self, name: str) -> tuple[Edge, ...]:
        self.vertex(name)
        return self._out[name]

    def children(self, name: str) -> frozenset[str]:
        return frozenset(e.head for e in self.out_edges(name))

    def layer(self, i: int) -> tuple[Vertex, ...]:
        return tuple(v for v in self.order if v.level == i)

    def __contains__(self, name):
        return name in self._vertices

    def __repr__(self):
        return f"LayeredGraph(height={self.height}, |V|={len(self._vertices)}, |E|={len(self._edges)})"

    # structure queries ----------------------------------------------------

    def greater_than(self, v: str, w: str) -> bool:
        self.vertex(w)
        return w in self._below[self.vertex(v).name]

    def descendants(self, v: str) -> frozenset[str]:
        self.vertex(v)
        return self._below[v]

    def s_set(self, v: str, i: int) -> frozenset[str]:
        """Vertices ``i`` levels below ``v`` and reachable from it.

        Returns the empty set when ``i`` is outside ``1..level(v)``.
        """
        lv = self.level(v)
        if i < 1 or i > lv:
            return frozenset()
        return frozenset(w for w in self._below[v] if self._vertices[w].level == lv - i)

    def sim_classes(self, v: str) -> list[frozenset[str]]:
        """Partition of the children of ``v`` into linked classes.

        Two children are adjacent when they share a child; classes are the
        connected components, listed in canonical order of their least member.
        """
        if self.level(v) < 2:
            raise ValueError(f"sim_classes needs level >= 2, {v!r} has level {self.level(v)}")
        kids = sorted(self.s_set(v, 1), key=lambda n: vertex_sort_key(self._vertices[n]))
        parent = {u: u for u in kids}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for a, b in itertools.combinations(kids, 2):
            if self.children(a) & self.children(b):
                ra, rb = find(a), find(b)
                if ra != rb:
                    parent[rb] = ra
        groups: dict[str, list[str]] = {}
        for u in kids:
            groups.setdefault(find(u), []).append(u)
        return [frozenset(g) for g in sorted(groups.values(), key=lambda g: kids.index(g[0]))]

    def is_uniform(self) -> Uniformity:
        for v in self.order:
            if v.level < 2:
                continue
            classes = self.sim_classes(v.name)
            if len(classes) > 1:
                key = lambda n: vertex_sort_key(self._vertices[n])  # noqa: E731
                u = min(classes[0], key=key)
                w = min(classes[1], key=key)
                return Uniformity(False, (v.name, u, w))
        return Uniformity(True, None)

    def tower(self, v: str) -> tuple[str, ...]:
        """Follow distinguished edges from ``v`` down to ``*``."""
        seq = [v]
        cur = v
        while self.level(cur) > 0:
            cur = self._edges[self.distinguished[cur]].head
            seq.append(cur)
        return tuple(seq)

    def distinguished_path(self, v: str) -> Path:
        seq = []
        cur = v
        while self.level(cur) > 0:
            eid = self.distinguished[cur]
            seq.append(eid)
            cur = self._edges[eid].head
        return tuple(seq)

    def enumerate_paths(self, v: str, w: str, cap: int = DEFAULT_PATH_CAP) -> list[Path]:
        """All paths from ``v`` to ``w``, depth first in canonical edge order."""
        self.vertex(v)
        target = self.vertex(w)
        found: list[Path] = []

        def walk(cur: str, acc: list[int]):
            if cur == w and acc:
                found.append(tuple(acc))
                if len(found) > cap:
                    raise PathCapExceeded(f"more than {cap} paths from {v!r} to {w!r}", cap)
                return
            if self._vertices[cur].level <= target.level:
                return
            for e in self._out[cur]:
                if e.head == w or w in self._below[e.head]:
                    acc.append(e.id)
                    walk(e.head, acc)
                    acc.pop()

        walk(v, [])
        return found

    def path_vertices(self, path: Path) -> tuple[str, ...]:
        """The vertex sequence ``v_0, ..., v_m`` visited by a path."""
        if not path:
            raise ValueError("paths are nonempty edge sequences")
        es = [self._edges[i] for i in path]
        for a, b in zip(es, es[1:]):
            if a.head != b.tail:
                raise ValueError(f"edges {a.id} and {b.id} are not consecutive")
        return (es[0].tail,) + tuple(e.head for e in es)

    def path_through(self, names: Iterable[str]) -> Path:
        """A path visiting ``names`` in order (least edge id per step)."""
        names = list(names)
        out = []
        for a, b in zip(names, names[1:]):
            cands = [e.id for e in self._out[a] if e.head == b]
            if not cands:
                raise ValueError(f"no edge {a!r} -> {b!r}")
            out.append(min(cands))
        return tuple(out)


def greater_than(graph: LayeredGraph, v: str, w: str) -> bool:
    return graph.greater_than(v, w)


def s_set(graph: LayeredGraph, v: str, i: int) -> frozenset[str]:
    return graph.s_set(v, i)


def sim_classes(graph: LayeredGraph, v: str) -> list[frozenset[str]]:
    return graph.sim_classes(v)


def is_uniform(graph: LayeredGraph) -> Uniformity:
    return graph.is_uniform()


def enumerate_paths(graph: LayeredGraph, v: str, w: str, cap: int = DEFAULT_PATH_CAP) -> list[Path]:
    return graph.enumerate_paths(v, w, cap)


def tower(graph: LayeredGraph, v: str) -> tuple[str, ...]:
    return graph.tower(v)


def validate(graph: LayeredGraph) -> list[str]:
    """Describe every violated standing hypothesis; empty when valid."""
    problems = []
    bottom = graph.layer(0)
    names = [v.name for v in bottom]
    if names != [STAR]:
        problems.append(f"level 0 must be exactly {{{STAR}}}, found {sorted(names)}")
    if STAR in graph and graph.level(STAR) != 0:
        problems.append(f"vertex {STAR} must have level 0")
    for v in graph.vertices:
        if v.level < 0 or v.level > graph.height:
            problems.append(f"level out of range: vertex {v.name} has level {v.level}, height {graph.height}")
    for e in graph.edges:
        gap = graph.level(e.tail) - graph.level(e.head)
        if gap != 1:
            problems.append(f"level gap: edge {e.id} {e.tail}->{e.head} drops {gap} levels")
    for v in graph.positive:
        if not graph.out_edges(v.name):
            problems.append(f"dead vertex: {v.name} (level {v.level}) has no outgoing edge")
            continue
        eid = graph.distinguished.get(v.name)
        if eid is None or eid not in graph._edges or graph.edge(eid).tail != v.name:
            problems.append(f"bad distinguished edge for {v.name}: {eid}")
    return problems


# generators ----------------------------------------------------------------


def _subset_name(s) -> str:
    return "{" + ",".join(str(x) for x in sorted(s)) + "}" if s else STAR


def hypercube(n: int) -> LayeredGraph:
    """Boolean lattice of subsets of ``{1..n}``; the edge removing the least
    element is distinguished."""
    if n < 1:
        raise ValueError("hypercube needs n >= 1")
    subsets = [frozenset(c) for k in range(n + 1) for c in itertools.combinations(range(1, n + 1), k)]
    vertices = [Vertex(_subset_name(s), len(s)) for s in subsets]
    edges = []
    dist = {}
    for s in subsets:
        for x in sorted(s):
            e = Edge(len(edges), _subset_name(s), _subset_name(s - {x}))
            if x == min(s):
                dist[e.tail] = e.id
            edges.append(e)
    return LayeredGraph(vertices, edges, dist, height=n)


def chain(n: int) -> LayeredGraph:
    """One vertex per level, named ``c1..cn`` above ``*``."""
    if n < 1:
        raise ValueError("chain needs n >= 1")
    names = [STAR] + [f"c{i}" for i in range(1, n + 1)]
    vertices = [Vertex(nm, i) for i, nm in enumerate(names)]
    edges = [Edge(i - 1, names[i], names[i - 1]) for i in range(1, n + 1)]
    return LayeredGraph(vertices, edges, height=n)


def complete_layered(sizes: list[int]) -> LayeredGraph:
    """Every vertex of level ``i`` joined to every vertex of level ``i-1``.

    ``sizes[0]`` is forced to 1; level ``i`` vertices are ``L{i}_{j}``.
    """
    sizes = list(sizes)
    if not sizes:
        raise ValueError("sizes must be nonempty")
    if any(s <= 0 for s in sizes):
        raise ValueError(f"layer sizes must be positive: {sizes}")
    layers = [[STAR]] + [[f"L{i}_{j}" for j in range(1, s + 1)] for i, s in enumerate(sizes) if i > 0]
    vertices = [Vertex(nm, i) for i, layer in enumerate(layers) for nm in layer]
    edges = []
    for i in range(1, len(layers)):
        for a in layers[i]:
            for b in layers[i - 1]:
                edges.append(Edge(len(edges), a, b))
    return LayeredGraph(vertices, edges, height=len(layers) - 1)


def non_uniform_witness() -> LayeredGraph:
    """Smallest-ish non-uniform graph: the two children of ``v`` share no child."""
    vertices = [("v", 3), ("u", 2), ("w", 2), ("a", 1), ("b", 1), (STAR, 0)]
    edges = [("v", "u"), ("v", "w"), ("u", "a"), ("w", "b"), ("a", STAR), ("b", STAR)]
    return LayeredGraph(vertices, edges, height=3)


# text format ---------------------------------------------------------------

FORMAT_HEADER = "layered-graph v1"


def dumps(graph: LayeredGraph) -> str:
    lines = [FORMAT_HEADER, f"height {graph.height}"]
    lines += [f"vertex {v.name} {v.level}" for v in graph.vertices]
    pairs = sorted(
        {(e.tail, e.head) for e in graph.edges},
        key=lambda te: (vertex_sort_key(graph.vertex(te[0])), vertex_sort_key(graph.vertex(te[1]))),
    )
    lines += [f"edge {t} {h}" for t, h in pairs]
    return "\n".join(lines) + "\n"


def loads(text: str) -> LayeredGraph:
    """Parse the line format; raises GraphFormatError on bad or invalid input.

    Repeated ``edge`` lines between the same pair collapse to one edge.
    """
    rows = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            rows.append((lineno, line.split()))
    if not rows or rows[0][1] != FORMAT_HEADER.split():
        raise GraphFormatError(f"missing header {FORMAT_HEADER!r}")
    height = None
    vertices: list[Vertex] = []
    pairs: list[tuple[str, str]] = []
    seen = set()
    for lineno, tok in rows[1:]:
        kind = tok[0]
        try:
            if kind == "height" and len(tok) == 2:
                height = int(tok[1])
            elif kind == "vertex" and len(tok) == 3:
                vertices.append(Vertex(tok[1], int(tok[2])))
            elif kind == "edge" and len(tok) == 3:
                if (tok[1], tok[2]) not in seen:
                    seen.add((tok[1], tok[2]))
                    pairs.append((tok[1], tok[2]))
            else:
                raise GraphFormatError(f"line {lineno}: cannot parse {' '.join(tok)!r}")
        except ValueError as exc:
            if isinstance(exc, GraphFormatError):
                raise
            raise GraphFormatError(f"line {lineno}: {exc}") from None
    if height is None:
        raise GraphFormatError("missing 'height' line")
    try:
        graph = LayeredGraph(vertices, pairs, height=height)
    except (KeyError, ValueError) as exc:
        raise GraphFormatError(str(exc)) from None
    problems = validate(graph)
    if problems:
        raise GraphFormatError("invalid graph: " + "; ".join(problems))
    return graph


def load(path) -> LayeredGraph:
    with open(path, encoding="utf-8") as fh:
        return loads(fh.read())


def dump(graph: LayeredGraph, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps(graph))
