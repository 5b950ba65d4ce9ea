from __future__ import annotations

import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from layered_koszul import graph as G
from layered_koszul.errors import GraphFormatError, PathCapExceeded


@pytest.mark.parametrize("n,nv,ne", [(1, 2, 1), (2, 4, 4), (3, 8, 12), (4, 16, 32)])
def test_hypercube_sizes(n, nv, ne):
    g = G.hypercube(n)
    assert len(g.vertices) == nv and len(g.edges) == ne
    assert G.validate(g) == []


def test_hypercube_rejects_zero():
    with pytest.raises(ValueError):
        G.hypercube(0)


@pytest.mark.parametrize("n", [1, 3, 5])
def test_chain(n):
    g = G.chain(n)
    assert len(g.vertices) == n + 1 and len(g.edges) == n
    top = g.positive[0].name
    assert len(g.enumerate_paths(top, G.STAR)) == 1


def test_complete_layered():
    g = G.complete_layered([1, 2, 1])
    assert (len(g.vertices), len(g.edges)) == (4, 4)
    g = G.complete_layered([1, 2, 2])
    assert (len(g.vertices), len(g.edges)) == (5, 6)
    assert G.dumps(G.complete_layered([1, 1])).replace("L1_1", "c1") == G.dumps(G.chain(1))
    with pytest.raises(ValueError):
        G.complete_layered([1, 0, 2])


def test_witness_fixture():
    g = G.non_uniform_witness()
    assert G.validate(g) == []
    assert g.s_set("v", 1) == {"u", "w"}
    assert g.s_set("u", 1) == {"a"}
    res = g.is_uniform()
    assert not res and res.witness == ("v", "u", "w")
    assert sorted(map(sorted, g.sim_classes("v"))) == [["u"], ["w"]]


def test_greater_than():
    g = G.hypercube(2)
    assert g.greater_than("{1,2}", "*")
    assert not g.greater_than("{1}", "{2}")
    assert not any(g.greater_than(v.name, v.name) for v in g.vertices)
    with pytest.raises(KeyError):
        g.greater_than("nope", "*")


def test_s_set():
    g = G.hypercube(3)
    assert g.s_set("{1,2,3}", 1) == {"{1,2}", "{1,3}", "{2,3}"}
    assert g.s_set("{1,2}", 2) == {"*"}
    assert g.s_set("{1,2}", 3) == frozenset()


def test_sim_classes():
    assert [len(c) for c in G.hypercube(3).sim_classes("{1,2,3}")] == [3]
    c3 = G.chain(3)
    assert [sorted(c) for c in c3.sim_classes("c3")] == [["c2"]]
    with pytest.raises(ValueError):
        c3.sim_classes("c1")


@pytest.mark.parametrize("g", [G.hypercube(n) for n in (1, 2, 3, 4)] + [G.chain(4), G.complete_layered([1, 3, 2, 2])])
def test_uniform_families(g):
    assert g.is_uniform().uniform


def test_paths():
    assert len(G.hypercube(2).enumerate_paths("{1,2}", "*")) == 2
    assert len(G.hypercube(3).enumerate_paths("{1,2,3}", "*")) == 6
    assert len(G.hypercube(4).enumerate_paths("{1,2,3,4}", "*")) == 24
    with pytest.raises(PathCapExceeded):
        G.hypercube(4).enumerate_paths("{1,2,3,4}", "*", cap=10)
    g = G.hypercube(3)
    for path in g.enumerate_paths("{1,2,3}", "*"):
        es = [g.edge(e) for e in path]
        assert all(a.head == b.tail for a, b in zip(es, es[1:]))


def test_tower():
    assert G.chain(3).tower("c3") == ("c3", "c2", "c1", "*")
    assert G.hypercube(2).tower("{1,2}") == ("{1,2}", "{2}", "*")
    assert G.hypercube(2).tower("{1}") == ("{1}", "*")


def test_validate_level_gap_and_dead_vertex():
    gap = G.LayeredGraph([("a", 2), ("b", 1), ("*", 0)], [("a", "*"), ("b", "*")], height=2)
    assert [p for p in G.validate(gap) if "level gap" in p] and len(G.validate(gap)) == 1
    dead = G.LayeredGraph([("a", 2), ("b", 1), ("*", 0)], [("b", "*")], height=2)
    probs = G.validate(dead)
    assert len(probs) == 1 and "dead vertex" in probs[0] and "a" in probs[0]


def test_graph_invariants(uniform_graph):
    g = uniform_graph
    for e in g.edges:
        assert g.level(e.tail) - g.level(e.head) == 1
    for v in g.positive:
        assert g.s_set(v.name, 1) == {e.head for e in g.out_edges(v.name)}
        t = g.tower(v.name)
        assert len(t) == v.level + 1
        assert [g.level(x) for x in t] == list(range(v.level, -1, -1))
    # greater_than is the transitive closure of the edge relation
    names = [v.name for v in g.vertices]
    closure = {(e.tail, e.head) for e in g.edges}
    while True:
        more = {(a, d) for (a, b), (c, d) in itertools.product(closure, closure) if b == c} - closure
        if not more:
            break
        closure |= more
    for a in names:
        for b in names:
            assert g.greater_than(a, b) == ((a, b) in closure)


def test_format_round_trip(uniform_graph):
    text = G.dumps(uniform_graph)
    assert G.dumps(G.loads(text)) == text


def test_format_comments_and_whitespace():
    text = "# a chain\nlayered-graph v1\nheight 1  # one level\n\nvertex * 0\nvertex x 1\nedge x *\nedge x *\n"
    g = G.loads(text)
    assert len(g.edges) == 1
    assert G.dumps(g) == "layered-graph v1\nheight 1\nvertex x 1\nvertex * 0\nedge x *\n"


@pytest.mark.parametrize("text", [
    "",
    "layered-graph v2\nheight 1\n",
    "layered-graph v1\nvertex * 0\n",
    "layered-graph v1\nheight 1\nvertex x 1\nedge x *\n",  # no *
    "layered-graph v1\nheight 1\nvertex * 0\nvertex x 1\n",  # dead vertex
    "layered-graph v1\nheight 1\nvertex * 0\nvertex x one\n",
    "layered-graph v1\nheight 1\nvertex * 0\nvertex x 1\nedge x y\n",
    "layered-graph v1\nheight 2\nvertex * 0\nvertex x 2\nedge x *\n",  # level gap
    "layered-graph v1\nheight 1\nvertex * 0\nvertex x 1\nedge x * extra\n",
])
def test_format_rejects(text):
    with pytest.raises(GraphFormatError):
        G.loads(text)


@st.composite
def layered_graphs(draw):
    sizes = [1] + draw(st.lists(st.integers(1, 3), min_size=1, max_size=3))
    names = [["*"]] + [[f"v{i}_{j}" for j in range(s)] for i, s in enumerate(sizes) if i]
    edges = []
    for i in range(1, len(names)):
        for a in names[i]:
            heads = draw(st.lists(st.sampled_from(names[i - 1]), min_size=1, max_size=3, unique=True))
            edges += [(a, h) for h in heads]
    verts = [(n, i) for i, layer in enumerate(names) for n in layer]
    return G.LayeredGraph(verts, edges, height=len(sizes) - 1)


@given(layered_graphs())
def test_random_graphs_round_trip_and_uniformity_witness(g):
    assert G.validate(g) == []
    text = G.dumps(g)
    assert G.dumps(G.loads(text)) == text
    res = g.is_uniform()
    if not res:
        v, u, w = res.witness
        classes = g.sim_classes(v)
        assert not any(u in c and w in c for c in classes)
    else:
        assert all(len(g.sim_classes(v.name)) == 1 for v in g.positive if v.level >= 2)
