"""Ground truth for COR(G): 0/1 vertex enumeration, brute-force linear
optimization, affine hull dimension, face restriction, and affine images.

Coordinates of R^{V u E} are identified by variable ids:
    ("v", label)        vertex coordinate
    ("e", a, b)         edge coordinate, a < b

Everything here is exact; no floating point.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .graph_core import Graph, edge_key

ENUM_LIMIT = 20  # hard cap on 2^n vertex enumerations


class PolytopeError(ValueError):
    pass


def vvar(label: str) -> tuple:
    return ("v", label)


def evar(u: str, v: str) -> tuple:
    a, b = edge_key(u, v)
    return ("e", a, b)


def variables(g: Graph) -> list:
    """Canonical coordinate order: sorted vertex vars, then sorted edge vars."""
    return [("v", v) for v in g.sorted_vertices()] + \
           [("e", a, b) for a, b in g.sorted_edges()]


def check_var(g: Graph, var: tuple) -> None:
    if var[0] == "v":
        if var[1] not in g.vertices:
            raise PolytopeError("unknown vertex variable %r" % (var,))
    elif var[0] == "e":
        if (var[1], var[2]) not in g.edges:
            raise PolytopeError("unknown edge variable %r" % (var,))
    else:
        raise PolytopeError("malformed variable id %r" % (var,))


class CorPoint:
    """Exact rational point of R^{V u E} for a companion graph."""

    def __init__(self, graph: Graph, coords: dict):
        expected = set(variables(graph))
        if set(coords) != expected:
            raise PolytopeError("coordinate index set does not match V u E")
        self.graph = graph
        self.coords = {k: Fraction(v) for k, v in coords.items()}

    def key(self) -> tuple:
        return tuple(self.coords[z] for z in variables(self.graph))

    def __eq__(self, other):
        return isinstance(other, CorPoint) and \
            self.graph == other.graph and self.coords == other.coords

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return "CorPoint(%r)" % (self.coords,)


class CorVertex(CorPoint):
    """The 0/1 point generated by a vertex subset X: vertex coordinates are
    indicators of X, edge coordinates are products of endpoint indicators."""

    def __init__(self, graph: Graph, X):
        X = frozenset(X)
        if not X <= graph.vertices:
            raise PolytopeError("X is not a subset of V")
        coords = {}
        for v in graph.vertices:
            coords[("v", v)] = Fraction(1 if v in X else 0)
        for a, b in graph.edges:
            coords[("e", a, b)] = Fraction(1 if (a in X and b in X) else 0)
        super().__init__(graph, coords)
        self.X = X


def cor_vertices(g: Graph) -> list:
    """All 2^n generating vertices, in subset-bitmask order over the sorted
    vertex list (bit i = i-th sorted vertex)."""
    if g.n > ENUM_LIMIT:
        raise PolytopeError("graph too large to enumerate (n=%d > %d)"
                            % (g.n, ENUM_LIMIT))
    vs = g.sorted_vertices()
    out = []
    for mask in range(1 << g.n):
        X = frozenset(vs[i] for i in range(g.n) if mask >> i & 1)
        out.append(CorVertex(g, X))
    return out


def map_brute_force(g: Graph, weights: dict):
    """Maximize sum of selected vertex and induced-edge weights over all
    subsets X; ties go to the smallest subset bitmask.

    Returns (optimal value, optimal X).  Weights absent from the dict count
    as zero; weights for variables outside V u E are an error.
    """
    if g.n > ENUM_LIMIT:
        raise PolytopeError("graph too large to enumerate (n=%d > %d)"
                            % (g.n, ENUM_LIMIT))
    for var in weights:
        check_var(g, var)
    vs = g.sorted_vertices()
    idx = {v: i for i, v in enumerate(vs)}
    vweight = [Fraction(weights.get(("v", v), 0)) for v in vs]
    eweight = []
    for a, b in g.sorted_edges():
        w = Fraction(weights.get(("e", a, b), 0))
        eweight.append(((1 << idx[a]) | (1 << idx[b]), w))
    best_val, best_mask = None, None
    for mask in range(1 << g.n):
        val = sum((vweight[i] for i in range(g.n) if mask >> i & 1),
                  Fraction(0))
        for emask, w in eweight:
            if mask & emask == emask:
                val += w
        if best_val is None or val > best_val:
            best_val, best_mask = val, mask
    X = frozenset(vs[i] for i in range(g.n) if best_mask >> i & 1)
    return best_val, X


def dimension(points: list) -> int:
    """Dimension of the affine hull: rank of the translated point matrix,
    by exact Gaussian elimination."""
    if not points:
        raise PolytopeError("need at least one point")
    var_order = variables(points[0].graph)
    for p in points:
        if variables(p.graph) != var_order:
            raise PolytopeError("points have mixed coordinate index sets")
    base = points[0].key()
    rows = [[x - b for x, b in zip(p.key(), base)] for p in points[1:]]
    return _rank(rows)


def _rank(rows: list) -> int:
    rows = [list(r) for r in rows]
    rank = 0
    ncols = len(rows[0]) if rows else 0
    col = 0
    while col < ncols and rank < len(rows):
        pivot = next((i for i in range(rank, len(rows)) if rows[i][col] != 0),
                     None)
        if pivot is None:
            col += 1
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        pr = rows[rank]
        pc = pr[col]
        for i in range(rank + 1, len(rows)):
            f = rows[i][col]
            if f != 0:
                rows[i] = [a - f * b / pc for a, b in zip(rows[i], pr)]
        rank += 1
        col += 1
    return rank


# ---------------------------------------------------------------------------
# affine maps

@dataclass(frozen=True)
class AffineMap:
    """Per-output rational linear form over input variable ids plus offset."""
    outputs: tuple      # output coordinate ids, fixed order
    forms: dict         # output id -> (dict input var -> coeff, offset)

    def apply_key(self, coords: dict) -> tuple:
        out = []
        for z in self.outputs:
            lin, off = self.forms[z]
            val = Fraction(off)
            for var, c in lin.items():
                if var not in coords:
                    raise PolytopeError("input lacks coordinate %r" % (var,))
                val += Fraction(c) * coords[var]
            out.append(val)
        return tuple(out)


def identity_map(g: Graph) -> AffineMap:
    vs = tuple(variables(g))
    return AffineMap(vs, {z: ({z: Fraction(1)}, Fraction(0)) for z in vs})


def apply_affine(m: AffineMap, points: list) -> set:
    """Image of the points under m, deduplicated: a set of coordinate
    tuples in m.outputs order."""
    return {m.apply_key(p.coords if isinstance(p, CorPoint) else p)
            for p in points}


def point_set(points: list) -> set:
    """Coordinate-tuple set of CorPoints (canonical variable order)."""
    return {p.key() for p in points}


# ---------------------------------------------------------------------------
# face systems

TAG_NONNEG_EDGE = "NONNEG-EDGE"
TAG_EDGE_EQ = "EDGE-EQ"
TAG_XOR = "XOR"
TAG_ONE_OF_THREE = "ONE-OF-THREE"

CATALOG_TAGS = (TAG_NONNEG_EDGE, TAG_EDGE_EQ, TAG_XOR, TAG_ONE_OF_THREE)


@dataclass(frozen=True)
class Equation:
    """Tight form of a catalogued valid inequality: sum coeffs*vars = rhs."""
    tag: str
    vars: tuple
    coeffs: tuple
    rhs: Fraction


def eq_nonneg_edge(u: str, v: str) -> Equation:
    """x_uv = 0 (tight form of x_uv >= 0)."""
    return Equation(TAG_NONNEG_EDGE, (evar(u, v),), (Fraction(1),), Fraction(0))


def eq_edge_eq(u: str, v: str, endpoint: str) -> Equation:
    """x_endpoint = x_uv (tight form of x_uv <= x_endpoint)."""
    if endpoint not in (u, v):
        raise PolytopeError("endpoint %r not on edge (%s, %s)" % (endpoint, u, v))
    return Equation(TAG_EDGE_EQ, (vvar(endpoint), evar(u, v)),
                    (Fraction(1), Fraction(-1)), Fraction(0))


def eq_xor(u: str, v: str) -> Equation:
    """x_u + x_v - 2 x_uv = 1 (tight form of ... <= 1): exactly one of u, v."""
    a, b = edge_key(u, v)
    return Equation(TAG_XOR, (vvar(a), vvar(b), evar(a, b)),
                    (Fraction(1), Fraction(1), Fraction(-2)), Fraction(1))


def eq_one_of_three(a: str, b: str, c: str) -> Equation:
    """x_a + x_b + x_c - 2(x_ab + x_ac + x_bc) = 1: exactly one of a, b, c
    (requires the triangle abc in the graph)."""
    a, b, c = sorted((a, b, c))
    return Equation(TAG_ONE_OF_THREE,
                    (vvar(a), vvar(b), vvar(c),
                     evar(a, b), evar(a, c), evar(b, c)),
                    (Fraction(1), Fraction(1), Fraction(1),
                     Fraction(-2), Fraction(-2), Fraction(-2)), Fraction(1))


class FaceSystem:
    """A list of catalogued equations cutting out a face of COR(G)."""

    def __init__(self, equations):
        self.equations = list(equations)
        for eq in self.equations:
            if eq.tag not in CATALOG_TAGS:
                raise PolytopeError("unknown equation tag %r" % eq.tag)

    def validate(self, g: Graph) -> None:
        """Check every referenced variable (and ONE-OF-THREE's pairwise
        edges) exists in g."""
        for eq in self.equations:
            for var in eq.vars:
                check_var(g, var)

    def __len__(self):
        return len(self.equations)

    def __iter__(self):
        return iter(self.equations)


def underlying_inequality(eq: Equation):
    """The valid inequality (lin, rhs) meaning sum lin*x <= rhs whose tight
    form eq is."""
    if eq.tag == TAG_NONNEG_EDGE:
        # x_e >= 0, written as -x_e <= 0
        return ({eq.vars[0]: Fraction(-1)}, Fraction(0))
    if eq.tag == TAG_EDGE_EQ:
        # x_e <= x_u, written as x_e - x_u <= 0
        vert, edge = eq.vars
        return ({edge: Fraction(1), vert: Fraction(-1)}, Fraction(0))
    if eq.tag in (TAG_XOR, TAG_ONE_OF_THREE):
        return (dict(zip(eq.vars, eq.coeffs)), eq.rhs)
    raise PolytopeError("unknown tag %r" % eq.tag)


def support_graph(eq: Equation) -> Graph:
    """Smallest graph on which eq is expressible: its vertex variables'
    labels plus the edges it references."""
    vs = set()
    es = set()
    for var in eq.vars:
        if var[0] == "v":
            vs.add(var[1])
        else:
            vs.update(var[1:3])
            es.add((var[1], var[2]))
    return Graph(frozenset(vs), frozenset(es))


def check_valid_inequality(g: Graph, lin: dict, rhs) -> bool:
    """True iff every generating vertex of COR(g) satisfies
    sum lin*x <= rhs."""
    rhs = Fraction(rhs)
    for var in lin:
        check_var(g, var)
    for p in cor_vertices(g):
        val = sum((Fraction(c) * p.coords[var] for var, c in lin.items()),
                  Fraction(0))
        if val > rhs:
            return False
    return True


# ---------------------------------------------------------------------------
# face enumeration by backtracking with unit propagation

class _FaceSearch:
    def __init__(self, g: Graph, fs: FaceSystem, order=None):
        fs.validate(g)
        self.g = g
        verts = list(order) if order is not None else g.sorted_vertices()
        if sorted(verts) != g.sorted_vertices():
            raise PolytopeError("order is not a permutation of V")
        self.verts = verts
        self.index = {v: i for i, v in enumerate(verts)}
        self.assign = [None] * len(verts)
        # preprocess equations into integer-indexed terms
        self.eqs = []
        self.watch = [[] for _ in verts]
        for eq in fs:
            terms = []
            support = set()
            for var, coeff in zip(eq.vars, eq.coeffs):
                if var[0] == "v":
                    i = self.index[var[1]]
                    terms.append((Fraction(coeff), i, None))
                    support.add(i)
                else:
                    i, j = self.index[var[1]], self.index[var[2]]
                    terms.append((Fraction(coeff), i, j))
                    support.update((i, j))
            ei = len(self.eqs)
            self.eqs.append((terms, Fraction(eq.rhs), sorted(support)))
            for i in support:
                self.watch[i].append(ei)

    def _completions(self, ei):
        """Satisfying 0/1 completions of the equation's unassigned support."""
        terms, rhs, support = self.eqs[ei]
        free = [i for i in support if self.assign[i] is None]
        out = []
        for bits in itertools.product((0, 1), repeat=len(free)):
            trial = dict(zip(free, bits))
            get = lambda i: self.assign[i] if self.assign[i] is not None else trial[i]
            val = Fraction(0)
            for coeff, i, j in terms:
                x = get(i) if j is None else get(i) * get(j)
                val += coeff * x
            if val == rhs:
                out.append(trial)
        return free, out

    def _propagate(self, queue, trail):
        while queue:
            ei = queue.pop()
            free, comps = self._completions(ei)
            if not comps:
                return False
            for i in free:
                vals = {c[i] for c in comps}
                if len(vals) == 1:
                    b = vals.pop()
                    if self.assign[i] is None:
                        self.assign[i] = b
                        trail.append(i)
                        queue.extend(self.watch[i])
        return True

    def enumerate(self, callback):
        """Call callback(assign list aligned to self.verts) for every 0/1
        vertex assignment satisfying all equations."""
        trail0 = []
        if not self._propagate(list(range(len(self.eqs))), trail0):
            return
        self._branch(0, callback)

    def _branch(self, pos, callback):
        n = len(self.verts)
        while pos < n and self.assign[pos] is not None:
            pos += 1
        if pos == n:
            callback(self.assign)
            return
        for b in (0, 1):
            trail = [pos]
            self.assign[pos] = b
            if self._propagate(list(self.watch[pos]), trail):
                self._branch(pos + 1, callback)
            for i in trail:
                self.assign[i] = None


def enumerate_face(g: Graph, fs: FaceSystem, order=None):
    """All 0/1 assignments satisfying the face system, as (vertex label
    order, list of assignment tuples), without materializing CorVertex
    objects."""
    results = []
    search = _FaceSearch(g, fs, order)
    search.enumerate(lambda a: results.append(tuple(a)))
    return search.verts, results


def restrict_to_face(g: Graph, fs: FaceSystem, order=None) -> list:
    """All generating vertices of COR(g) satisfying every equation of fs,
    found by backtracking over vertex values with unit propagation (edge
    coordinates are products of endpoint values throughout)."""
    verts, assigns = enumerate_face(g, fs, order)
    out = []
    for a in assigns:
        X = frozenset(v for v, b in zip(verts, a) if b)
        out.append(CorVertex(g, X))
    # deterministic order: subset bitmask over sorted labels
    svs = g.sorted_vertices()
    pos = {v: i for i, v in enumerate(svs)}
    out.sort(key=lambda p: sum(1 << pos[v] for v in p.X))
    return out
