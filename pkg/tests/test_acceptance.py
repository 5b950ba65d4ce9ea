"""Acceptance gate: one test per criterion, each timed against its budget.

Every test records a one-line PASS/FAIL verdict; the lines are printed in
the pytest summary, or directly when this file is run as a script.
"""

from __future__ import annotations

import time

import pytest

from layered_koszul import graph as G
from layered_koszul.basis import hilbert_from_basis, hilbert_from_linalg
from layered_koszul.field import GF
from layered_koszul.koszul import euler_check, lemma42_check, lemma44_check, theorem46_check, tor_table
from layered_koszul.relations import (
    full_relation_span,
    quadratic_ideal_component,
    quadratic_relations_A,
    quadratic_relations_gr,
    presentation,
)

import oracles

RESULTS: dict[int, str] = {}
PRIMES = (32003, 65537)

HILBERT_GRAPHS = {
    "hypercube(2)": lambda: G.hypercube(2),
    "hypercube(3)": lambda: G.hypercube(3),
    "chain(4)": lambda: G.chain(4),
    "complete_layered([1,2,2])": lambda: G.complete_layered([1, 2, 2]),
    "complete_layered([1,3,2])": lambda: G.complete_layered([1, 3, 2]),
}
KOSZUL_GRAPHS = {k: HILBERT_GRAPHS[k] for k in ("hypercube(2)", "hypercube(3)", "chain(4)")}

# dimension records per prime, filled by criteria 1, 3 and 7 and compared by 8
DIMS: dict[int, dict] = {p: {} for p in PRIMES}


def record(n: int, ok: bool, elapsed: float, budget: float | None, detail: str) -> None:
    within = budget is None or elapsed < budget
    verdict = "PASS" if ok and within else "FAIL"
    limit = f" / budget {budget:g}s" if budget is not None else ""
    RESULTS[n] = f"criterion {n}: {verdict} ({elapsed:.2f}s{limit}) {detail}"
    print(RESULTS[n])
    assert ok, RESULTS[n]
    assert within, RESULTS[n]


def hilbert_dims_for(p: int) -> tuple[bool, dict]:
    field = GF(p)
    ok, out = True, {}
    for name, make in HILBERT_GRAPHS.items():
        g = make()
        basis = hilbert_from_basis(g, 4)
        lin = hilbert_from_linalg(g, "gr", 4, field)
        ok &= basis == lin
        out[name] = lin
    return ok, out


def relation_dims_for(p: int) -> tuple[bool, dict]:
    field = GF(p)
    ok, out = True, {}
    for name, make in HILBERT_GRAPHS.items():
        g = make()
        a = quadratic_relations_A(g, field)
        for k in (2, 3, 4):
            full = full_relation_span(g, k, field)
            quad = quadratic_ideal_component(a, k)
            ok &= full == quad
            out[(name, k)] = (full.dim, quad.dim)
    return ok, out


def koszul_dims_for(p: int) -> tuple[bool, dict]:
    field = GF(p)
    ok, out = True, {}
    for name, make in KOSZUL_GRAPHS.items():
        g = make()
        for which in ("gr", "a"):
            pres = presentation(g, which, field)
            table = tor_table(pres, 5)
            residuals = euler_check(pres, 5)
            ok &= table.is_koszul() and all(r == 0 for r in residuals)
            out[(name, which)] = (tuple(table.rows()), tuple(residuals))
    return ok, out


def test_criterion_1_basis_matches_linear_algebra():
    t = time.perf_counter()
    ok, dims = hilbert_dims_for(PRIMES[0])
    ok &= dims["hypercube(2)"][:3] == [1, 3, 8]
    elapsed = time.perf_counter() - t
    DIMS[PRIMES[0]]["hilbert"] = dims
    record(1, ok, elapsed, 10, f"hypercube(2) {dims['hypercube(2)']}, hypercube(3) {dims['hypercube(3)']}")


def test_criterion_2_chain_is_free():
    t = time.perf_counter()
    g = G.chain(3)
    dims_b = hilbert_from_basis(g, 3)
    dims_l = hilbert_from_linalg(g, "gr", 3)
    zero = all(
        s.dim == 0 for s in [quadratic_relations_A(g).relation_space, quadratic_relations_gr(g).relation_space]
        + [full_relation_span(g, k) for k in (1, 2, 3)]
    )
    ok = dims_b == dims_l == [1, 3, 9, 27] and zero
    record(2, ok, time.perf_counter() - t, 1, f"dims {dims_l}, relation spaces zero: {zero}")


def test_criterion_3_quadratic_generation():
    t = time.perf_counter()
    ok, dims = relation_dims_for(PRIMES[0])
    elapsed = time.perf_counter() - t
    DIMS[PRIMES[0]]["relations"] = dims
    h3 = [dims[("hypercube(3)", k)][0] for k in (2, 3, 4)]
    record(3, ok, elapsed, 60, f"5 graphs x k=2,3,4 equal; hypercube(3) ideal dims {h3}")


def test_criterion_4_uniformity():
    t = time.perf_counter()
    uniform = [G.hypercube(n) for n in (1, 2, 3, 4)] + [G.chain(n) for n in (1, 2, 3, 4, 5)]
    uniform += [G.complete_layered(s) for s in ([1, 1], [1, 2, 1], [1, 2, 2], [1, 3, 2], [1, 2, 3, 2])]
    ok = all(g.is_uniform().uniform for g in uniform)
    w = G.non_uniform_witness()
    res = w.is_uniform()
    ok &= not res.uniform and res.witness == ("v", "u", "w")
    v, a, b = res.witness
    ok &= not any(a in c and b in c for c in w.sim_classes(v))
    record(4, ok, time.perf_counter() - t, 1, f"{len(uniform)} uniform graphs; witness {res.witness}")


def test_criterion_5_structural_identities():
    t = time.perf_counter()
    ok, n_checks = True, 0
    for g in (G.hypercube(2), G.hypercube(3)):
        p = quadratic_relations_gr(g)
        for k in (2, 3, 4):
            ok &= lemma42_check(g, k, p).holds
            n_checks += 1
        for v in g.positive:
            if v.level < 2:
                continue
            for j in (1, 2):
                for l in (0, 1):
                    ok &= lemma44_check(g, v.name, j, l, p).holds
                    n_checks += 1
    record(5, ok, time.perf_counter() - t, 120, f"{n_checks} subspace equalities")


def test_criterion_6_distributive_lattices():
    t = time.perf_counter()
    ok, sizes = True, []
    for name, g in (("hypercube(2)", G.hypercube(2)), ("hypercube(3)", G.hypercube(3))):
        p = quadratic_relations_gr(g)
        top = g.positive[0].name
        for k in (3, 4):
            for extra in (None, (top, 1)):
                rep = theorem46_check(g, k, extra, p)
                ok &= rep.distributive
                sizes.append(f"{name} k={k}{'+P' if extra else ''}:{rep.size}")
    record(6, ok, time.perf_counter() - t, 120, "closure sizes " + ", ".join(sizes))


def test_criterion_7_koszul_up_to_degree_5():
    t = time.perf_counter()
    ok, dims = koszul_dims_for(PRIMES[0])
    gr2 = quadratic_relations_gr(G.hypercube(2))
    r2 = euler_check(gr2, 2)[1]
    ok &= r2 == 8 - 9 + 1 == 0
    elapsed = time.perf_counter() - t
    DIMS[PRIMES[0]]["koszul"] = dims
    record(7, ok, elapsed, 600, f"Tor off-diagonal zero for i+j<=5 and residuals zero to 5 on 3 graphs x 2 presentations; r_2={r2}")


def test_criterion_8_cross_prime_stability():
    t = time.perf_counter()
    base = DIMS[PRIMES[0]]
    if "hilbert" not in base:
        base["hilbert"] = hilbert_dims_for(PRIMES[0])[1]
    if "relations" not in base:
        base["relations"] = relation_dims_for(PRIMES[0])[1]
    if "koszul" not in base:
        base["koszul"] = koszul_dims_for(PRIMES[0])[1]
    other = {
        "hilbert": hilbert_dims_for(PRIMES[1])[1],
        "relations": relation_dims_for(PRIMES[1])[1],
        "koszul": koszul_dims_for(PRIMES[1])[1],
    }
    same = [key for key in ("hilbert", "relations", "koszul") if base[key] == other[key]]
    ok = len(same) == 3
    record(8, ok, time.perf_counter() - t, None, f"fields {PRIMES[0]} and {PRIMES[1]} agree on {', '.join(same) or 'nothing'}")


def test_criterion_9_field_oracle_suite():
    t = time.perf_counter()
    fails = oracles.run_field_suite(seed=0, n=1000)
    ok = all(v == 0 for v in fails.values())
    record(9, ok, time.perf_counter() - t, 30, "failures per 1000: " + ", ".join(f"{k} {v}" for k, v in fails.items()))


if __name__ == "__main__":
    import sys

    sys.exit(pytest.main([__file__, "-q", "-s"]))
