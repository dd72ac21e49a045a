"""Crossover gadget, clause replacement rules, and the grid-with-gadgets
construction whose face projects onto the correlation polytope of a
complete bipartite graph.

The crossover gadget is a small planar clause system over nine boolean
variables (four boundary signals b, t, l, r; four diagonal helpers alpha,
beta, gamma, delta; one centre variable).  Whenever all clauses hold,
b == t and l == r, so a vertical and a horizontal signal line can cross
without interacting.  Each clause is then replaced by a small graph plus
face equations drawn from the catalogue (NONNEG-EDGE, XOR, ONE-OF-THREE),
turning the clause system into a plain graph and a face of its
correlation polytope.

The grid with gadgets of height h is assembled from the subdivided
(h+1) x (h+1) grid: two opposite corner vertices and the first row's and
first column's subdivision vertices are dropped, the top end of every
interior column and the right end of every interior row is cut, h^2
diagonal edges between row and column subdivision vertices are added, and
each of the (h-1)^2 interior grid vertices is replaced by a fresh gadget
copy.  Solid (row/column) edges carry propagation equations
x_u = x_uv = x_v; diagonal edges carry none.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .graph_core import Graph, edge_key, make_complete_bipartite
from .polytope import (AffineMap, FaceSystem, check_valid_inequality,
                       cor_vertices, enumerate_face, eq_edge_eq,
                       eq_nonneg_edge, eq_one_of_three, eq_xor, evar,
                       point_set, support_graph, underlying_inequality,
                       variables, vvar)
from .rationals import rat_str

EXHAUSTIVE_HEIGHT_LIMIT = 3


class GadgetError(ValueError):
    pass


@dataclass(frozen=True)
class CrossoverGadget:
    variables: tuple    # the nine signal variable names
    clauses: tuple      # clause = tuple of (variable, positive: bool)
    note: str

    def boundary(self) -> tuple:
        return ("b", "t", "l", "r")


_ROLES = ("b", "t", "l", "r", "alpha", "beta", "gamma", "delta", "mid")

# One clause per square node of the crossover figure: four corner squares,
# eight side squares, six interior squares.  True = the variable appears
# positively (dashed edge), False = negated (dotted edge).
_CLAUSES = (
    # corner squares
    (("t", True), ("l", True), ("gamma", True)),
    (("t", True), ("r", False), ("beta", True)),
    (("b", False), ("l", True), ("delta", True)),
    (("b", False), ("r", False), ("alpha", True)),
    # side squares (two per side)
    (("t", False), ("gamma", False)),
    (("t", False), ("beta", False)),
    (("l", False), ("gamma", False)),
    (("l", False), ("delta", False)),
    (("r", True), ("beta", False)),
    (("r", True), ("alpha", False)),
    (("b", True), ("alpha", False)),
    (("b", True), ("delta", False)),
    # interior squares
    (("beta", True), ("gamma", True), ("mid", False)),
    (("alpha", True), ("delta", True), ("mid", True)),
    (("beta", False), ("gamma", False)),
    (("alpha", False), ("delta", False)),
    (("alpha", False), ("beta", False)),
    (("gamma", False), ("delta", False)),
)


def crossover_clause_table() -> CrossoverGadget:
    """The fixed crossover clause system: 9 variables, 18 clauses of 2 or 3
    literals each."""
    return CrossoverGadget(_ROLES, _CLAUSES,
                           "transcribed from the crossover figure")


# ---------------------------------------------------------------------------
# clause replacement rules

def _aux(prefix: str, ci: int, kind: str, var: str) -> str:
    # kind 'p' is the primed helper, 'n' the negation helper
    return "%sc%02d.%s.%s" % (prefix, ci, kind, var)


def replace_clauses(gadget: CrossoverGadget, prefix: str = ""):
    """Replace every clause by its graph-plus-equations rule.

    Returns (Graph, FaceSystem, role map).  Auxiliary vertices are fresh
    per clause, never shared.  Supported clause shapes: 2 literals with at
    least one negation, 3 literals with at most two negations; anything
    else has no rule and is rejected.
    """
    roles = {v: prefix + v for v in gadget.variables}
    vertices = set(roles.values())
    edges = set()
    equations = []

    def add_edge(u, v):
        edges.add(edge_key(u, v))

    for ci, clause in enumerate(gadget.clauses):
        if len(clause) not in (2, 3):
            raise GadgetError("clause %d has %d literals" % (ci, len(clause)))
        neg = [roles[v] for v, pos in clause if not pos]
        pos = [roles[v] for v, pos in clause if pos]
        if len(clause) == 2:
            if len(neg) == 2:
                # (not i or not j): the edge ij with x_ij = 0
                i, j = neg
                add_edge(i, j)
                equations.append(eq_nonneg_edge(i, j))
            elif len(neg) == 1:
                # (not i or j): path i - nj - j
                i, j = neg[0], pos[0]
                nj = _aux(prefix, ci, "n", j[len(prefix):])
                vertices.add(nj)
                add_edge(i, nj)
                add_edge(nj, j)
                equations.append(eq_nonneg_edge(i, nj))
                equations.append(eq_xor(j, nj))
            else:
                raise GadgetError(
                    "clause %d (%r): no rule for a 2-clause with two "
                    "positive literals" % (ci, clause))
        else:
            if len(neg) == 3:
                raise GadgetError(
                    "clause %d (%r): no rule for a 3-clause with three "
                    "negative literals" % (ci, clause))
            # order the literals (first, second, third) = (neg..., pos...)
            lits = [(v, False) for v in neg] + [(v, True) for v in pos]
            primes = []
            for v, positive in lits:
                p = _aux(prefix, ci, "p", v[len(prefix):])
                vertices.add(p)
                primes.append(p)
                if positive:
                    # attach through a negation helper: v - nv - p
                    nv = _aux(prefix, ci, "n", v[len(prefix):])
                    vertices.add(nv)
                    add_edge(v, nv)
                    add_edge(nv, p)
                    equations.append(eq_xor(v, nv))
                    equations.append(eq_nonneg_edge(nv, p))
                else:
                    add_edge(v, p)
                    equations.append(eq_nonneg_edge(v, p))
            a, b, c = primes
            add_edge(a, b)
            add_edge(a, c)
            add_edge(b, c)
            equations.append(eq_one_of_three(a, b, c))

    graph = Graph(frozenset(vertices), frozenset(edges))
    return graph, FaceSystem(equations), roles


def verify_crossover() -> dict:
    """Exhaustively enumerate the face of the replaced gadget and check
    the crossing property: every feasible vertex has x_b = x_t and
    x_l = x_r, and all four (b, l) boundary patterns occur."""
    gadget = crossover_clause_table()
    graph, fs, roles = replace_clauses(gadget)
    order = [roles[v] for v in ("b", "l", "t", "r", "alpha", "beta",
                                "gamma", "delta", "mid")]
    order += [v for v in graph.sorted_vertices() if v not in set(order)]
    verts, assigns = enumerate_face(graph, fs, order)
    idx = {v: i for i, v in enumerate(verts)}
    ib, it = idx[roles["b"]], idx[roles["t"]]
    il, ir = idx[roles["l"]], idx[roles["r"]]
    counts = {"00": 0, "01": 0, "10": 0, "11": 0}
    equality_holds = True
    for a in assigns:
        if a[ib] != a[it] or a[il] != a[ir]:
            equality_holds = False
        counts["%d%d" % (a[ib], a[il])] += 1
    patterns_realized = all(c > 0 for c in counts.values())
    return {
        "total_feasible_vertices": len(assigns),
        "boundary_equality_holds": equality_holds,
        "all_patterns_realized": patterns_realized,
        "per_pattern_counts": counts,
        "ok": equality_holds and patterns_realized,
    }


# ---------------------------------------------------------------------------
# the grid with gadgets

@dataclass
class GridWithGadgets:
    h: int
    graph: Graph
    face: FaceSystem
    bottom: tuple       # bottom boundary vertices B_1..B_h (left to right)
    left: tuple         # left boundary vertices L_1..L_h (bottom to top)
    diagonals: tuple    # ((i, j), edge) with edge carrying L_i x B_j
    gadget_prefixes: tuple
    projection: AffineMap   # onto the variables of K_{h,h}
    solid_edges: tuple


def _grid_label(x: int, y: int) -> str:
    return "v%d.%d" % (x, y)


def build_grid_with_gadgets(h: int) -> GridWithGadgets:
    """Assemble the grid with gadgets of height h (from the subdivided
    (h+1) x (h+1) grid), its face system, and the projection map."""
    if h < 2:
        raise GadgetError("height must be >= 2")
    g = h + 1
    gadget = crossover_clause_table()
    gadget_pos = {(x, y) for x in range(2, g) for y in range(2, g)}

    vertices = set()
    edges = set()
    equations = []
    gadget_roles = {}
    prefixes = []
    for (x, y) in sorted(gadget_pos):
        prefix = "G%d.%d:" % (x, y)
        prefixes.append(prefix)
        sub, fs, roles = replace_clauses(gadget, prefix)
        vertices |= sub.vertices
        edges |= sub.edges
        equations.extend(fs.equations)
        gadget_roles[(x, y)] = roles

    def port(x, y, role):
        if (x, y) in gadget_pos:
            return gadget_roles[(x, y)][role]
        return _grid_label(x, y)

    # plain grid vertices (corners (1,1) and (g,g) are deleted)
    for x in range(1, g + 1):
        for y in range(1, g + 1):
            if (x, y) in ((1, 1), (g, g)) or (x, y) in gadget_pos:
                continue
            vertices.add(_grid_label(x, y))
    # surviving subdivision vertices: column midpoints c (first column
    # dropped), row midpoints hm (first row dropped)
    for x in range(2, g + 1):
        for y in range(1, g):
            vertices.add("c%d.%d" % (x, y))
    for x in range(1, g):
        for y in range(2, g + 1):
            vertices.add("h%d.%d" % (x, y))

    solid = []
    # column edges; the segment above c{x}.{g-1} is cut
    for x in range(2, g + 1):
        for y in range(1, g):
            solid.append((port(x, y, "t"), "c%d.%d" % (x, y)))
            if y <= g - 2:
                solid.append(("c%d.%d" % (x, y), port(x, y + 1, "b")))
    # row edges; the segment right of h{g-1}.{y} is cut
    for y in range(2, g + 1):
        for x in range(1, g):
            solid.append((port(x, y, "r"), "h%d.%d" % (x, y)))
            if x <= g - 2:
                solid.append(("h%d.%d" % (x, y), port(x + 1, y, "l")))
    for u, v in solid:
        edges.add(edge_key(u, v))
        equations.append(eq_edge_eq(u, v, u))
        equations.append(eq_edge_eq(u, v, v))

    # diagonal edges: row midpoint of row i+1 meets column midpoint of
    # column j+1; carries the product L_i x B_j
    diagonals = []
    for j in range(1, g):        # column index of B_j
        for i in range(1, g):    # row index of L_i
            e = edge_key("h%d.%d" % (j, i + 1), "c%d.%d" % (j + 1, i))
            edges.add(e)
            diagonals.append(((i, j), e))

    bottom = tuple(_grid_label(j + 1, 1) for j in range(1, g))
    left = tuple(_grid_label(1, i + 1) for i in range(1, g))

    graph = Graph(frozenset(vertices), frozenset(edges))
    face = FaceSystem(equations)
    face.validate(graph)

    k = make_complete_bipartite(h, h)
    outputs = tuple(variables(k))
    forms = {}
    for i in range(1, h + 1):
        forms[vvar("a%d" % i)] = ({vvar(left[i - 1]): Fraction(1)}, Fraction(0))
        forms[vvar("b%d" % i)] = ({vvar(bottom[i - 1]): Fraction(1)}, Fraction(0))
    diag_edge = {ij: e for ij, e in diagonals}
    for i in range(1, h + 1):
        for j in range(1, h + 1):
            e = diag_edge[(i, j)]
            forms[evar("a%d" % i, "b%d" % j)] = (
                {evar(*e): Fraction(1)}, Fraction(0))
    projection = AffineMap(outputs, forms)

    return GridWithGadgets(h, graph, face, bottom, left, tuple(diagonals),
                           tuple(prefixes), projection, tuple(solid))


def verify_projection(gw: GridWithGadgets) -> dict:
    """Enumerate the face of the grid's correlation polytope (boundary
    vertices branched first, everything else mostly propagated) and check
    that its projection is exactly the vertex set of COR(K_{h,h}), with
    every diagonal edge coordinate the product of the boundary values
    feeding it."""
    if gw.h > EXHAUSTIVE_HEIGHT_LIMIT:
        raise GadgetError("exhaustive limit: height %d > %d"
                          % (gw.h, EXHAUSTIVE_HEIGHT_LIMIT))
    boundary = list(gw.bottom) + list(gw.left)
    order = boundary + [v for v in gw.graph.sorted_vertices()
                        if v not in set(boundary)]
    verts, assigns = enumerate_face(gw.graph, gw.face, order)
    idx = {v: i for i, v in enumerate(verts)}
    h = gw.h

    diag_idx = []
    for (i, j), (u, v) in gw.diagonals:
        diag_idx.append((idx[gw.left[i - 1]], idx[gw.bottom[j - 1]],
                         idx[u], idx[v]))

    k = make_complete_bipartite(h, h)
    expected = point_set(cor_vertices(k))

    projected = set()
    counts = {}
    diagonal_products_ok = True
    b_idx = [idx[v] for v in gw.bottom]
    l_idx = [idx[v] for v in gw.left]
    # projection outputs, resolved to assignment positions
    out_pos = []
    for z in gw.projection.outputs:
        lin, _off = gw.projection.forms[z]
        (var, _c), = lin.items()
        if var[0] == "v":
            out_pos.append((idx[var[1]], None))
        else:
            out_pos.append((idx[var[1]], idx[var[2]]))
    for a in assigns:
        key = tuple(Fraction(a[i] if j is None else a[i] * a[j])
                    for i, j in out_pos)
        projected.add(key)
        pattern = "".join(str(a[i]) for i in b_idx + l_idx)
        counts[pattern] = counts.get(pattern, 0) + 1
        for li, bi, u, v in diag_idx:
            if a[u] * a[v] != a[li] * a[bi]:
                diagonal_products_ok = False
    set_equal = projected == expected
    return {
        "h": h,
        "face_vertices": len(assigns),
        "projected_points": len(projected),
        "expected_points": len(expected),
        "set_equal": set_equal,
        "diagonal_products_ok": diagonal_products_ok,
        "per_pattern_counts": {p: counts[p] for p in sorted(counts)},
        "patterns_realized": len(counts),
        "ok": set_equal and diagonal_products_ok and len(counts) == 4 ** h,
    }


# ---------------------------------------------------------------------------
# supporting checks and reports

def validate_face_equations(fs: FaceSystem) -> list:
    """For every equation, check that its underlying inequality is valid
    for the correlation polytope of its local support graph.  Returns the
    list of offending equations (empty means all valid)."""
    bad = []
    for eq in fs:
        sg = support_graph(eq)
        lin, rhs = underlying_inequality(eq)
        if not check_valid_inequality(sg, lin, rhs):
            bad.append(eq)
    return bad


def planarity_necessary_check(g: Graph) -> bool:
    """Euler's necessary condition m <= 3n - 6 (necessary only; a True
    answer does not certify planarity)."""
    if g.n < 3:
        raise GadgetError("check needs at least 3 vertices")
    return g.m <= 3 * g.n - 6


def lower_bound_report(n: int, h: int) -> dict:
    """Report the dimension bound n, the cited facet-count bound (3/2)^h
    for the height-h construction (cited, not recomputed here), and their
    geometric mean sqrt(n * (3/2)^h)."""
    if n < 1:
        raise GadgetError("n must be >= 1")
    cited = Fraction(3, 2) ** h
    product = Fraction(n) * cited
    num_r = math.isqrt(product.numerator)
    den_r = math.isqrt(product.denominator)
    exact = (num_r * num_r == product.numerator
             and den_r * den_r == product.denominator)
    report = {
        "dimension_bound": n,
        "gadget_height": h,
        "cited_bound": rat_str(cited),
        "cited_bound_is_citation": True,
        "geometric_mean_squared": rat_str(product),
    }
    if exact:
        report["geometric_mean"] = rat_str(Fraction(num_r, den_r))
    else:
        report["geometric_mean_approx"] = "%.6f" % math.sqrt(product)
    return report


def grid_lower_bound_report(gw: GridWithGadgets) -> dict:
    report = lower_bound_report(gw.graph.n, gw.h)
    report["graph_vertices"] = gw.graph.n
    report["graph_edges"] = gw.graph.m
    return report
