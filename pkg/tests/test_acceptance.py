"""One test per acceptance criterion; conftest prints a PASS/FAIL line for each."""
import random
import time
from functools import lru_cache

import pytest

from cases import GRAPHS, GRAPH_AUT, MUTANTS
from pathcoalg.coalgebra import automorphisms_brute, grouplikes, verify_axioms
from pathcoalg.field import field_make
from pathcoalg.graph import automorphisms, degrees
from pathcoalg.graph_coalgebra import (
    build_path_coalgebra,
    compose,
    enumerate_structured,
    invert,
    random_structured,
    structured_to_matrix,
    verify_exact_sequence,
)
from pathcoalg.group import Perm, cyclic_group, group_close, in_class_G, symmetric_group
from pathcoalg.realization import action_system, make_rep, realize_representation
from pathcoalg.report import PASS

FIELDS = {"GF2": field_make(2), "GF3": field_make(3), "GF4": field_make(2, 2)}
INSTANCES = [(g, f) for g in sorted(GRAPHS) for f in ("GF2", "GF3")]


@lru_cache(maxsize=None)
def brute(graph, field):
    gc = build_path_coalgebra(GRAPHS[graph], FIELDS[field])
    return automorphisms_brute(gc.coalgebra, cap=None)


def reps():
    swap, rot, tr = Perm((1, 0)), Perm((1, 2, 0)), Perm((1, 0, 2))
    return {
        "Z2 swap": make_rep([swap], [swap], 2),
        "Z3 natural": make_rep([rot], [rot], 3),
        "S3 natural": make_rep([tr, rot], [tr, rot], 3),
    }


def test_criterion_1_order_formula():
    """1. |Aut C(Γ)| by brute force equals (q(q-1))^|E| |Aut Γ| on 4 digraphs over GF(2), GF(3)"""
    start = time.perf_counter()
    for graph, field in INSTANCES:
        gc = build_path_coalgebra(GRAPHS[graph], FIELDS[field])
        q, m = gc.field.q, gc.num_edges
        expected = (q * (q - 1)) ** m * GRAPH_AUT[graph]
        found = brute(graph, field)
        assert len(found) == expected, (graph, field, len(found), expected)
        structured = {structured_to_matrix(gc, f) for f in enumerate_structured(gc)}
        assert structured == set(found), (graph, field)
    assert {(g, f): len(brute(g, f)) for g, f in [("single_edge", "GF2"), ("two_cycle", "GF2"),
                                                  ("single_edge", "GF3"), ("triangle", "GF2")]} == {
        ("single_edge", "GF2"): 2, ("two_cycle", "GF2"): 8,
        ("single_edge", "GF3"): 6, ("triangle", "GF2"): 24}
    assert time.perf_counter() - start < 60


def test_criterion_2_grouplikes():
    """2. grouplikes(C(Γ)) is exactly the vertex basis, by exhaustive scan with q^dim <= 2^20"""
    checked = 0
    for graph in sorted(GRAPHS):
        for field in sorted(FIELDS):
            gc = build_path_coalgebra(GRAPHS[graph], FIELDS[field])
            if gc.field.q ** gc.dim > 2 ** 20:
                continue
            vertex_basis = {tuple(int(i == v) for i in range(gc.dim)) for v in range(gc.num_vertices)}
            assert set(grouplikes(gc.coalgebra, cap=2 ** 20)) == vertex_basis, (graph, field)
            checked += 1
    assert checked == 12


def test_criterion_3_structured_algebra():
    """3. compose/invert agree with matrix algebra on >= 1000 random triples, zero failures"""
    rng = random.Random(20240601)
    cases = [(g, f) for g in sorted(GRAPHS) for f in sorted(FIELDS)]
    failures, total = [], 0
    for k in range(1200):
        graph, field = cases[k % len(cases)]
        gc = build_path_coalgebra(GRAPHS[graph], FIELDS[field])
        f1, f2 = random_structured(gc, rng), random_structured(gc, rng)
        total += 1
        if structured_to_matrix(gc, compose(f2, f1)) != structured_to_matrix(gc, f2) @ structured_to_matrix(gc, f1):
            failures.append(("compose", graph, field))
        if not compose(invert(f1), f1).is_identity():
            failures.append(("invert", graph, field))
    assert total >= 1000
    assert failures == []


def test_criterion_4_split_exact_sequence():
    """4. kernel size (q(q-1))^|E|, homomorphic section, and K_e ≅ k⋊k^× on every instance"""
    for graph, field in INSTANCES:
        gc = build_path_coalgebra(GRAPHS[graph], FIELDS[field])
        rep = verify_exact_sequence(gc, oracle_cap=None)
        bad = [line for line in rep.lines() if not line.startswith("[PASS]")]
        assert bad == [], (graph, field, bad)
        q = gc.field.q
        assert rep["(b) kernel size"].data["kernel"] == (q * (q - 1)) ** gc.num_edges
        assert rep["(b) kernel size by oracle"].status == PASS


def test_criterion_5_realization():
    """5. realisation items (1)-(4) verify for Z/2 swap, Z/3 natural and S3 natural in < 5 min"""
    start = time.perf_counter()
    F = field_make(2)
    for name, rep in reps().items():
        bundle = realize_representation(rep, F, strict=False)
        report = bundle.report
        assert report.ok, (name, report.lines())
        for prefix in ("(1)", "(2)", "(3)", "(4)", "system automorphisms", "system restriction",
                       "simple graph automorphisms"):
            statuses = [c.status for c in report.checks if c.name.startswith(prefix)]
            assert statuses == [PASS], (name, prefix, statuses)
        assert report["simple graph automorphisms"].data["order"] == rep.group.order
    assert time.perf_counter() - start < 300


def test_criterion_6_degree_formulas():
    """6. deg(g) = 2|S| + |V| and deg(v) = |G| in every constructed action system"""
    systems = dict(reps())
    systems["trivial on one point"] = make_rep([], [], 1, degree=1)
    d4 = [Perm((1, 2, 3, 0)), Perm((0, 3, 2, 1))]
    systems["D4 on 4 points"] = make_rep(d4, d4, 4)
    systems["Z2 on 3 points"] = make_rep([Perm((1, 0))], [Perm((0, 2, 1))], 3)
    for name, rep in systems.items():
        S = action_system(rep)
        n, k, s = rep.group.order, rep.v_size, len(rep.generators)
        assert all(degrees(S, g)[2] == 2 * s + k for g in range(n)), name
        assert all(degrees(S, n + v)[2] == n for v in range(k)), name


def test_criterion_7_class_membership():
    """7. S3 in G_{2,1}, Z/2 not in G_{2,1}, every odd-order test group (order <= 21) in G_{2,1}"""
    assert in_class_G(symmetric_group(3), 2, 1).member
    assert not in_class_G(cyclic_group(2), 2, 1).member
    odd = [cyclic_group(m) for m in (1, 3, 5, 7, 9, 11, 13, 15, 17, 19, 21)]
    odd.append(group_close([Perm((1, 2, 0, 3, 4, 5)), Perm((0, 1, 2, 4, 5, 3))]))
    odd.append(group_close([Perm(tuple((x + 1) % 7 for x in range(7))),
                            Perm(tuple((2 * x) % 7 for x in range(7)))]))
    for G in odd:
        assert G.order % 2 == 1 and G.order <= 21
        assert in_class_G(G, 2, 1).member, G.order


@pytest.mark.parametrize("mutant", sorted(MUTANTS))
def test_criterion_8_coalgebra_axioms(mutant):
    """8. verify_axioms passes on every C(Γ) and fails on each corrupted mutant"""
    for graph in sorted(GRAPHS):
        for field in sorted(FIELDS):
            C = build_path_coalgebra(GRAPHS[graph], FIELDS[field]).coalgebra
            assert verify_axioms(C).ok
            assert not verify_axioms(MUTANTS[mutant](C)).ok, (mutant, graph, field)
