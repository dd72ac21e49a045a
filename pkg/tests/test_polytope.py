from fractions import Fraction

import pytest

from corpoly.graph_core import make_complete, make_cycle, make_graph, make_path
from corpoly.polytope import (CorVertex, FaceSystem, PolytopeError,
                              check_valid_inequality, cor_vertices, dimension,
                              enumerate_face, eq_edge_eq, eq_nonneg_edge,
                              eq_one_of_three, eq_xor, evar, map_brute_force,
                              point_set, restrict_to_face, support_graph,
                              underlying_inequality, variables, vvar)


def test_vertex_coordinates():
    g = make_path(3)
    v = CorVertex(g, {"v1", "v2"})
    assert v.coords[vvar("v1")] == 1
    assert v.coords[evar("v1", "v2")] == 1
    assert v.coords[evar("v2", "v3")] == 0


def test_cor_vertices_count_and_distinctness():
    g = make_cycle(4)
    vs = cor_vertices(g)
    assert len(vs) == 2 ** g.n
    assert len(point_set(vs)) == 2 ** g.n


def test_map_brute_force_simple():
    g = make_path(2)
    w = {vvar("v1"): Fraction(2), vvar("v2"): Fraction(3),
         evar("v1", "v2"): Fraction(-4)}
    val, x = map_brute_force(g, w)
    assert val == 3 and x == {"v2"}


def test_map_brute_force_tie_breaks_to_smallest_mask():
    g = make_path(2)
    # empty set and {v1} both score 0; the empty set wins
    w = {vvar("v1"): Fraction(0)}
    val, x = map_brute_force(g, w)
    assert val == 0 and x == set()


def test_dimension_is_full_for_small_graphs():
    for g in (make_path(4), make_cycle(5), make_complete(4)):
        assert dimension(cor_vertices(g)) == g.n + g.m


def test_equations_are_tight_valid_inequalities():
    eqs = [eq_nonneg_edge("a", "b"),
           eq_edge_eq("a", "b", "a"),
           eq_xor("a", "b"),
           eq_one_of_three("a", "b", "c")]
    for eq in eqs:
        sg = support_graph(eq)
        lin, rhs = underlying_inequality(eq)
        assert check_valid_inequality(sg, lin, rhs)


def test_check_valid_inequality_rejects_invalid():
    g = make_path(2)
    # x_u + x_v <= 1 fails at X = {u, v}
    assert not check_valid_inequality(
        g, {vvar("v1"): Fraction(1), vvar("v2"): Fraction(1)}, 1)


def test_xor_face_on_an_edge():
    g = make_path(2)
    verts = restrict_to_face(g, FaceSystem([eq_xor("v1", "v2")]))
    assert point_set(verts) == point_set(
        [CorVertex(g, {"v1"}), CorVertex(g, {"v2"})])


def test_one_of_three_face_on_a_triangle():
    g = make_complete(3)
    fs = FaceSystem([eq_one_of_three("v1", "v2", "v3")])
    verts = restrict_to_face(g, fs)
    assert point_set(verts) == point_set(
        [CorVertex(g, {v}) for v in g.vertices])


def test_edge_eq_face():
    g = make_path(2)
    fs = FaceSystem([eq_edge_eq("v1", "v2", "v1")])
    # x_v1 = x_{v1v2}: v1 in X forces v2 in X
    verts = restrict_to_face(g, fs)
    assert point_set(verts) == point_set(
        [CorVertex(g, s) for s in (set(), {"v2"}, {"v1", "v2"})])


def test_enumerate_face_returns_assignments():
    g = make_path(2)
    verts, assigns = enumerate_face(g, FaceSystem([eq_nonneg_edge("v1", "v2")]))
    assert set(verts) == {"v1", "v2"} and len(assigns) == 3


def test_face_system_validates_against_graph():
    g = make_path(3)  # no edge v1-v3
    fs = FaceSystem([eq_nonneg_edge("v1", "v3")])
    with pytest.raises(PolytopeError):
        fs.validate(g)


def test_variables_order_is_vertices_then_edges():
    g = make_path(3)
    vs = variables(g)
    assert vs[:g.n] == [vvar(v) for v in g.sorted_vertices()]
    assert vs[g.n:] == [evar(u, v) for u, v in g.sorted_edges()]
