import pytest

from corpoly.graph_core import (constraint_graph, make_complete, make_cycle,
                                make_graph, make_grid, make_path,
                                make_petersen)
from corpoly.treewidth import (TreeDecomposition, TreewidthError,
                               decomposition_from_order, exact_treewidth,
                               heuristic_decomposition, td_from_json,
                               td_to_json, validate_decomposition)

KNOWN_WIDTHS = [
    (make_path(5), 1),
    (make_cycle(7), 2),
    (make_complete(5), 4),
    (make_grid(3), 3),
    (make_petersen(), 4),
]


def test_exact_treewidth_known_values():
    for g, w in KNOWN_WIDTHS:
        got, td = exact_treewidth(g)
        assert got == w
        assert validate_decomposition(g, td) == []
        assert td.width == w


def test_heuristics_produce_valid_decompositions():
    for g, w in KNOWN_WIDTHS:
        for h in ("min-fill", "min-degree"):
            td = heuristic_decomposition(g, h)
            assert validate_decomposition(g, td) == []
            assert td.width >= w


def test_validate_flags_broken_decompositions():
    g = make_cycle(4)
    good = heuristic_decomposition(g)
    # drop a vertex from every bag: coverage breaks
    bags = {t: b - {"v1"} for t, b in good.bags.items()}
    bad = TreeDecomposition(good.nodes, good.tree_edges, bags)
    assert any("v1" in p for p in validate_decomposition(g, bad))
    # disconnect the tree
    if good.tree_edges:
        bad2 = TreeDecomposition(good.nodes, frozenset(), good.bags)
        assert validate_decomposition(g, bad2) != []


def test_validate_flags_nonconnected_occupancy():
    g = make_path(3)
    bags = {"t000": frozenset({"v1", "v2"}),
            "t001": frozenset({"v2", "v3"}),
            "t002": frozenset({"v1", "v3"})}
    td = TreeDecomposition(("t000", "t001", "t002"),
                           frozenset({("t000", "t001"), ("t001", "t002")}),
                           bags)
    assert any("connect" in p or "subtree" in p
               for p in validate_decomposition(g, td))


def test_decomposition_from_order_matches_fill_width():
    g = make_cycle(5)
    td = decomposition_from_order(g, g.sorted_vertices())
    assert validate_decomposition(g, td) == []


def test_simplicial_reduction_lets_constraint_graphs_through():
    # the raw graph exceeds the exact-search core cap (25 > 13) but every
    # edge node is simplicial, so the search runs on the 10-vertex core
    gp = constraint_graph(make_petersen())
    assert gp.n == 25
    w, td = exact_treewidth(gp)
    assert w == 4
    assert validate_decomposition(gp, td) == []


def test_exact_core_cap_enforced():
    # no vertex of a long cycle is simplicial, so nothing reduces away
    with pytest.raises(TreewidthError):
        exact_treewidth(make_cycle(14))


def test_complete_graph_reduces_fully():
    # every vertex of a clique is simplicial; no exact search needed
    w, td = exact_treewidth(make_complete(14))
    assert w == 13
    assert validate_decomposition(make_complete(14), td) == []


def test_td_json_round_trip():
    g = make_grid(3)
    td = heuristic_decomposition(g)
    back = td_from_json(td_to_json(td))
    assert back.bags == td.bags and back.tree_edges == td.tree_edges


def test_single_vertex_graph():
    g = make_graph(["a"], [])
    w, td = exact_treewidth(g)
    assert w == 0
    assert validate_decomposition(g, td) == []
    td2 = heuristic_decomposition(g)
    assert validate_decomposition(g, td2) == []
