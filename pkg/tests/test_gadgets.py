import pytest

from corpoly.gadgets import (CrossoverGadget, GadgetError,
                             build_grid_with_gadgets, crossover_clause_table,
                             grid_lower_bound_report, lower_bound_report,
                             planarity_necessary_check, replace_clauses,
                             validate_face_equations, verify_crossover,
                             verify_projection)
from corpoly.graph_core import make_complete


def test_clause_table_shape():
    gadget = crossover_clause_table()
    assert len(gadget.variables) == 9
    assert len(gadget.clauses) == 18
    assert all(len(c) in (2, 3) for c in gadget.clauses)


def test_replace_clauses_rejects_unsupported_shapes():
    with pytest.raises(GadgetError):
        replace_clauses(CrossoverGadget(("a", "b"),
                                        ((("a", True), ("b", True)),), ""))
    with pytest.raises(GadgetError):
        replace_clauses(CrossoverGadget(
            ("a", "b", "c"),
            ((("a", False), ("b", False), ("c", False)),), ""))
    with pytest.raises(GadgetError):
        replace_clauses(CrossoverGadget(("a",), ((("a", True),),), ""))


def test_replace_clauses_prefix_isolates_copies():
    gadget = crossover_clause_table()
    g1, _, r1 = replace_clauses(gadget, "A:")
    g2, _, r2 = replace_clauses(gadget, "B:")
    assert not (g1.vertices & g2.vertices)
    assert r1["b"] == "A:b" and r2["b"] == "B:b"


def test_crossover_verification_and_regression_constants():
    rep = verify_crossover()
    assert rep["ok"]
    assert rep["boundary_equality_holds"]
    assert rep["all_patterns_realized"]
    # frozen completion counts: any change means the construction moved
    assert rep["total_feasible_vertices"] == 8
    assert rep["per_pattern_counts"] == {"00": 2, "01": 2, "10": 2, "11": 2}


def test_crossover_face_equations_all_valid():
    _, fs, _ = replace_clauses(crossover_clause_table())
    assert validate_face_equations(fs) == []


def test_grid_h2_shape_and_regression_constants():
    gw = build_grid_with_gadgets(2)
    assert (gw.graph.n, gw.graph.m) == (58, 81)
    assert len(gw.gadget_prefixes) == 1
    assert len(gw.diagonals) == 4
    rep = verify_projection(gw)
    assert rep["ok"]
    assert rep["face_vertices"] == 32
    assert rep["projected_points"] == 16
    assert set(rep["per_pattern_counts"].values()) == {2}


def test_grid_h3_projection():
    gw = build_grid_with_gadgets(3)
    assert len(gw.gadget_prefixes) == 4
    assert len(gw.diagonals) == 9
    rep = verify_projection(gw)
    assert rep["ok"]
    assert rep["face_vertices"] == 1024
    assert rep["projected_points"] == 64


def test_grid_face_equations_all_valid():
    for h in (2, 3):
        assert validate_face_equations(build_grid_with_gadgets(h).face) == []


def test_grid_rejects_degenerate_height():
    with pytest.raises(GadgetError):
        build_grid_with_gadgets(1)


def test_exhaustive_height_cap():
    gw = build_grid_with_gadgets(4)
    with pytest.raises(GadgetError):
        verify_projection(gw)


def test_grid_satisfies_planarity_necessary_condition():
    # the grid is drawn in the plane; diagonals use the room freed by the
    # crossover gadgets, so Euler's bound must hold
    for h in (2, 3, 4):
        assert planarity_necessary_check(build_grid_with_gadgets(h).graph)


def test_planarity_check_rejects_dense_graphs():
    assert not planarity_necessary_check(make_complete(5))


def test_lower_bound_report_values():
    rep = lower_bound_report(100, 6)
    assert rep["cited_bound"] == "729/64"
    assert rep["geometric_mean"] == "135/4"
    rep2 = lower_bound_report(7, 3)
    assert "geometric_mean_approx" in rep2
    gw = build_grid_with_gadgets(2)
    rep3 = grid_lower_bound_report(gw)
    assert rep3["graph_vertices"] == 58
