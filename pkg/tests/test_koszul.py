from __future__ import annotations

import itertools
from math import comb

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from layered_koszul import graph as G
from layered_koszul.errors import LatticeCapExceeded
from layered_koszul.field import GF, QQ, Subspace, subspace_intersect, subspace_sum
from layered_koszul.koszul import (
    BarComplex,
    GradedQuotient,
    euler_check,
    hilbert_dims,
    is_distributive,
    lattice_closure,
    lemma42_check,
    lemma44_check,
    quadratic_dual,
    relation_family,
    theorem46_check,
    tor_table,
)
from layered_koszul.relations import QuadraticPresentation, quadratic_relations_A, quadratic_relations_gr
from layered_koszul.tensor import Alphabet, GradedComponent

F = GF(32003)
H2 = G.hypercube(2)
XY = Alphabet(("x", "y"), (1, 1))


def _pres(rows, alphabet=XY, field=F):
    n2 = alphabet.size**2
    space = Subspace.span(rows, n2, field) if len(rows) else Subspace.zero(n2, field)
    return QuadraticPresentation(alphabet, space)


# xx, xy, yx, yy coordinates
POLYNOMIAL = [[0, 1, -1, 0]]                       # xy = yx
EXTERIOR = [[1, 0, 0, 0], [0, 1, 1, 0], [0, 0, 0, 1]]  # x^2 = y^2 = xy + yx = 0
# xx = xy, yx = 0: dims 1, 2, 2, 1, 1, ... and not Koszul
NON_KOSZUL = [[1, -1, 0, 0], [0, 0, 1, 0]]


def test_dual_examples():
    zero = _pres([])
    assert quadratic_dual(zero).relation_space == Subspace.full(4, F)
    assert quadratic_dual(_pres(np.eye(4, dtype=int))).relation_space.dim == 0
    d = quadratic_dual(quadratic_relations_gr(H2))
    assert d.relation_space.dim == 8 and d.generator_dim == 3


def test_dual_is_involutive(uniform_graph):
    p = quadratic_relations_A(uniform_graph)
    assert quadratic_dual(quadratic_dual(p)).relation_space == p.relation_space


def test_polynomial_and_exterior_dims():
    assert hilbert_dims(_pres(POLYNOMIAL), 5) == [1, 2, 3, 4, 5, 6]
    assert hilbert_dims(_pres(EXTERIOR), 4) == [1, 2, 1, 0, 0]
    # they are each other's duals
    assert quadratic_dual(_pres(POLYNOMIAL)).relation_space == _pres(EXTERIOR).relation_space


def test_euler_examples():
    assert euler_check(quadratic_relations_gr(G.chain(3)), 4) == [0, 0, 0, 0]
    gr = quadratic_relations_gr(H2)
    assert hilbert_dims(gr, 2) == [1, 3, 8]
    assert hilbert_dims(quadratic_dual(gr), 2) == [1, 3, 1]
    assert euler_check(gr, 2)[1] == 8 - 9 + 1 == 0


def test_euler_on_corrupted_relations_runs():
    p = quadratic_relations_gr(G.hypercube(3))
    rows = p.relation_space.basis[1:]
    q = QuadraticPresentation(p.alphabet, Subspace.span(rows, 49, F))
    res = euler_check(q, 4)
    assert len(res) == 4 and all(isinstance(r, int) for r in res)


def test_tor_free_algebra():
    t = tor_table(quadratic_relations_gr(G.chain(3)), 5)
    assert t[0, 0] == 1 and t[1, 1] == 3
    assert all(d == 0 for (i, j), d in t.entries.items() if (i, j) not in ((0, 0), (1, 1)))


def test_tor_hypercube2():
    t = tor_table(quadratic_relations_gr(H2), 5)
    assert t[2, 2] == 1 and t.off_diagonal() == {} and t.is_koszul()


@pytest.mark.parametrize("rows,diag", [(POLYNOMIAL, [1, 2, 1, 0]), (EXTERIOR, [1, 2, 3, 4])])
def test_tor_of_classical_koszul_algebras(rows, diag):
    # the diagonal of Tor is the dual algebra
    t = tor_table(_pres(rows), 8)
    assert [t[i, i] for i in range(4)] == diag
    assert t.is_koszul()


def test_tor_detects_non_koszul():
    p = _pres(NON_KOSZUL)
    assert hilbert_dims(p, 5) == [1, 2, 2, 1, 1, 1]
    assert euler_check(p, 4)[3] != 0
    t = tor_table(p, 8)
    assert t.off_diagonal() == {(3, 4): 1}
    assert not t.is_koszul()


def test_tor_structure(uniform_graph):
    p = quadratic_relations_A(uniform_graph)
    t = tor_table(p, 4)
    assert t[0, 0] == 1
    assert t[1, 1] == p.generator_dim
    assert t[2, 2] == p.relation_space.dim
    assert all(t[1, j] == 0 for j in range(2, 4))
    assert all(v >= 0 for v in t.entries.values())


@given(st.lists(st.lists(st.integers(-1, 1), min_size=4, max_size=4), min_size=0, max_size=3))
def test_tor_vanishing_implies_euler(rows):
    # enough internal degrees of Tor to decide the residuals up to 4
    p = _pres([r for r in rows if any(r)])
    t = tor_table(p, 8)
    low = {k: v for k, v in t.off_diagonal().items() if k[1] <= 4}
    if not low:
        assert euler_check(p, 4) == [0, 0, 0, 0]
    if any(euler_check(p, 4)):
        assert low


def test_bar_differential_squares_to_zero():
    A = GradedQuotient(_pres(NON_KOSZUL))
    bar = BarComplex(A)
    for j in range(3, 6):
        for i in range(3, j + 1):
            d1 = bar.differential(i - 1, j)
            d2 = bar.differential(i, j)
            assert not (F.matmul(d1, d2) % F.p).any()


def test_product_is_associative():
    A = GradedQuotient(quadratic_relations_A(H2))
    m12, m21, m11 = A.product(1, 2), A.product(2, 1), A.product(1, 1)
    # (xy)z and x(yz) for letters x, y, z
    left = np.einsum("tmc,mab->tabc", m21, m11) % F.p
    right = np.einsum("tam,mbc->tabc", m12, m11) % F.p
    assert np.array_equal(left, right)
    assert m12.shape == (A.dim(3), 3, A.dim(2)) and m21.shape == (A.dim(3), A.dim(2), 3)


def test_rational_mode_tor():
    t = tor_table(quadratic_relations_A(H2, QQ), 4)
    assert t.off_diagonal() == {} and t[2, 2] == 1


# lattices --------------------------------------------------------------------


def _line(v):
    return Subspace.span([v], 2, F)


def test_lattice_small_cases():
    g = _line([1, 2])
    assert lattice_closure([g]).size == 1
    a, b = _line([1, 0]), _line([0, 1])
    lat = lattice_closure([a, b])
    assert lat.size == 4 and is_distributive(lat)
    assert set(lat.dims()) == {0, 1, 2}


def test_diamond_is_not_distributive():
    lines = [_line([1, 0]), _line([0, 1]), _line([1, 1])]
    lat = lattice_closure(lines)
    assert lat.size == 5
    res = is_distributive(lat)
    assert not res
    a, b, c = (lat.element(i) for i in res.witness)
    assert subspace_intersect(a, subspace_sum(b, c)) != subspace_sum(subspace_intersect(a, b), subspace_intersect(a, c))


def test_lattice_cap():
    lines = [_line([1, x]) for x in range(6)]
    with pytest.raises(LatticeCapExceeded):
        lattice_closure(lines, element_cap=5)


def test_lattice_is_closed():
    p = quadratic_relations_gr(G.hypercube(2))
    lat = lattice_closure(relation_family(p, 4))
    elems = {e.key() for e in lat.elements}
    for a, b in itertools.product(lat.elements, repeat=2):
        assert subspace_sum(a, b).key() in elems
        assert subspace_intersect(a, b).key() in elems


@pytest.mark.parametrize("k", [3, 4])
def test_blockwise_closure_matches_plain(k):
    g = G.hypercube(2)
    p = quadratic_relations_gr(g)
    from layered_koszul.relations import p_span
    from layered_koszul.tensor import concat_subspaces, full_power

    gens = relation_family(p, k)
    gens.insert(0, concat_subspaces(p_span(g, "{1,2}", 1), full_power(3, k - 1)))
    plain = lattice_closure(gens)
    blocked = lattice_closure(gens, grading=GradedComponent(p.alphabet, k).level_profiles())
    assert {e.key() for e in plain.elements} == {e.key() for e in blocked.elements}
    assert bool(is_distributive(plain)) == bool(is_distributive(blocked))


def test_non_homogeneous_generators_fall_back():
    a = Subspace.span([[1, 1, 0]], 3, F)
    lat = lattice_closure([a, Subspace.span([[0, 0, 1]], 3, F)], grading=[0, 1, 1])
    assert lat.size == 4


def test_distributivity_is_permutation_invariant():
    g = G.hypercube(2)
    p = quadratic_relations_gr(g)
    gens = relation_family(p, 4)
    sizes = set()
    for perm in itertools.permutations(gens):
        lat = lattice_closure(list(perm))
        assert is_distributive(lat)
        sizes.add(lat.size)
    assert sizes == {10}
    diamond = [_line([1, 0]), _line([0, 1]), _line([1, 1])]
    assert not any(is_distributive(lattice_closure(list(perm))) for perm in itertools.permutations(diamond))


def test_theorem46_examples():
    assert theorem46_check(H2, 3).distributive
    r = theorem46_check(H2, 3)
    assert r.n_generators == 2 and r.size <= 4
    assert theorem46_check(H2, 4).distributive
    assert theorem46_check(H2, 4, ("{1,2}", 1)).distributive


# structural identities --------------------------------------------------------


def test_lemma42_small(uniform_graph):
    for k in (2, 3):
        assert lemma42_check(uniform_graph, k)


def test_lemma42_chain_is_zero():
    r = lemma42_check(G.chain(3), 3)
    assert r and r.lhs_dim == 0 == r.rhs_dim


def test_lemma44_examples():
    assert lemma44_check(H2, "{1,2}", 1, 0)
    r = lemma44_check(H2, "{1,2}", 3, 0)
    assert r and r.lhs_dim == 0 == r.rhs_dim
    assert lemma44_check(G.hypercube(3), "{1,2,3}", 1, 1)
    with pytest.raises(ValueError):
        lemma44_check(H2, "{1}", 1, 0)
    with pytest.raises(ValueError):
        lemma44_check(H2, "{1,2}", 0, 0)


def test_lemma44_nontrivial_instance():
    # the top vertex of hypercube(3) gives a one-dimensional intersection
    r = lemma44_check(G.hypercube(3), "{1,2,3}", 1, 0)
    assert r and r.lhs_dim == 1


def test_lemma_checks_on_complete_graphs():
    g = G.complete_layered([1, 3, 2])
    for k in (2, 3, 4):
        assert lemma42_check(g, k)
    for v in g.positive:
        if v.level >= 2:
            for j, l in itertools.product((1, 2), (0, 1)):
                assert lemma44_check(g, v.name, j, l)


def test_dense_cap_is_reported():
    from layered_koszul.errors import AmbientCapExceeded

    with pytest.raises(AmbientCapExceeded):
        hilbert_dims(quadratic_relations_gr(G.hypercube(3)), 5, cap=1000)


def test_hilbert_over_two_primes(uniform_graph):
    a = hilbert_dims(quadratic_relations_A(uniform_graph, GF(32003)), 4)
    b = hilbert_dims(quadratic_relations_A(uniform_graph, GF(65537)), 4)
    assert a == b


def test_comb_sanity():
    # dims of the polynomial ring in two variables
    assert hilbert_dims(_pres(POLYNOMIAL), 6) == [comb(k + 1, 1) for k in range(7)]
