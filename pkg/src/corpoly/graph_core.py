"""Finite simple undirected graphs with string labels.

Provides the standard families used throughout the package (grids, complete
and complete bipartite graphs, paths, cycles), the minor operations (edge
deletion, edge contraction, isolated-vertex removal), edge subdivision, and
the constraint-graph construction that attaches one fresh node per edge.

Graphs are immutable values; every operation returns a new Graph.
"""

from __future__ import annotations

import json
from dataclasses import dataclass


class GraphError(ValueError):
    """Raised on violated preconditions (missing edge, bad parameter...)."""


def edge_key(u: str, v: str) -> tuple[str, str]:
    """Canonical (sorted) form of an undirected edge; rejects self-loops."""
    if u == v:
        raise GraphError("self-loop on %r" % u)
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Graph:
    vertices: frozenset
    edges: frozenset  # of sorted label pairs

    def __post_init__(self):
        for e in self.edges:
            if len(e) != 2 or e[0] >= e[1]:
                raise GraphError("edge %r is not a sorted pair" % (e,))
            if e[0] not in self.vertices or e[1] not in self.vertices:
                raise GraphError("edge %r has endpoint outside vertex set" % (e,))

    @property
    def n(self) -> int:
        return len(self.vertices)

    @property
    def m(self) -> int:
        return len(self.edges)

    def has_edge(self, u: str, v: str) -> bool:
        return edge_key(u, v) in self.edges

    def neighbors(self, v: str) -> set:
        if v not in self.vertices:
            raise GraphError("unknown vertex %r" % v)
        out = set()
        for a, b in self.edges:
            if a == v:
                out.add(b)
            elif b == v:
                out.add(a)
        return out

    def adjacency(self) -> dict:
        """Label -> set of neighbour labels, for all vertices."""
        adj = {v: set() for v in self.vertices}
        for a, b in self.edges:
            adj[a].add(b)
            adj[b].add(a)
        return adj

    def sorted_vertices(self) -> list:
        return sorted(self.vertices)

    def sorted_edges(self) -> list:
        return sorted(self.edges)


def make_graph(vertices, edges) -> Graph:
    """Build a Graph from any iterables of labels and label pairs."""
    vs = frozenset(vertices)
    es = frozenset(edge_key(u, v) for u, v in edges)
    return Graph(vs, es)


# ---------------------------------------------------------------------------
# standard families

def make_grid(h: int) -> Graph:
    """h-by-h grid: vertices (a,b) in [h]x[h], adjacent at Manhattan
    distance 1.  Labels are 'a,b' (1-based)."""
    if h < 1:
        raise GraphError("grid size must be >= 1")
    vs = ["%d,%d" % (a, b) for a in range(1, h + 1) for b in range(1, h + 1)]
    es = []
    for a in range(1, h + 1):
        for b in range(1, h + 1):
            if a < h:
                es.append(("%d,%d" % (a, b), "%d,%d" % (a + 1, b)))
            if b < h:
                es.append(("%d,%d" % (a, b), "%d,%d" % (a, b + 1)))
    return make_graph(vs, es)


def make_complete(n: int) -> Graph:
    if n < 1:
        raise GraphError("complete graph needs n >= 1")
    vs = ["v%d" % i for i in range(1, n + 1)]
    es = [(vs[i], vs[j]) for i in range(n) for j in range(i + 1, n)]
    return make_graph(vs, es)


def make_complete_bipartite(a: int, b: int) -> Graph:
    """K_{a,b}; side membership is tagged in the labels ('a1..', 'b1..')."""
    if a < 1 or b < 1:
        raise GraphError("bipartite sides must be >= 1")
    left = ["a%d" % i for i in range(1, a + 1)]
    right = ["b%d" % j for j in range(1, b + 1)]
    es = [(u, v) for u in left for v in right]
    return make_graph(left + right, es)


def make_path(n: int) -> Graph:
    if n < 1:
        raise GraphError("path needs n >= 1")
    vs = ["v%d" % i for i in range(1, n + 1)]
    return make_graph(vs, [(vs[i], vs[i + 1]) for i in range(n - 1)])


def make_cycle(n: int) -> Graph:
    if n < 3:
        raise GraphError("cycle needs n >= 3")
    vs = ["v%d" % i for i in range(1, n + 1)]
    es = [(vs[i], vs[(i + 1) % n]) for i in range(n)]
    return make_graph(vs, es)


def make_petersen() -> Graph:
    """Petersen graph: outer 5-cycle, inner 5-star polygon, spokes."""
    outer = ["o%d" % i for i in range(5)]
    inner = ["i%d" % i for i in range(5)]
    es = []
    for i in range(5):
        es.append((outer[i], outer[(i + 1) % 5]))
        es.append((inner[i], inner[(i + 2) % 5]))
        es.append((outer[i], inner[i]))
    return make_graph(outer + inner, es)


# ---------------------------------------------------------------------------
# minor operations

def delete_edge(g: Graph, u: str, v: str) -> Graph:
    e = edge_key(u, v)
    if e not in g.edges:
        raise GraphError("edge %r not in graph" % (e,))
    return Graph(g.vertices, g.edges - {e})


def contracted_label(u: str, v: str) -> str:
    """Deterministic name for the vertex created by contracting uv."""
    a, b = edge_key(u, v)
    return a + "+" + b


def contract_edge(g: Graph, u: str, v: str) -> Graph:
    """Contract uv into a fresh vertex; drops the loop and deduplicates
    parallel edges so the result is simple."""
    e = edge_key(u, v)
    if e not in g.edges:
        raise GraphError("edge %r not in graph" % (e,))
    w = contracted_label(u, v)
    if w in g.vertices:
        raise GraphError("merged label %r already present" % w)
    vs = (g.vertices - {u, v}) | {w}
    es = set()
    for a, b in g.edges:
        if (a, b) == e:
            continue
        a2 = w if a in (u, v) else a
        b2 = w if b in (u, v) else b
        es.add(edge_key(a2, b2))
    return Graph(frozenset(vs), frozenset(es))


def remove_isolated(g: Graph, v: str) -> Graph:
    if v not in g.vertices:
        raise GraphError("unknown vertex %r" % v)
    if g.neighbors(v):
        raise GraphError("vertex %r is not isolated" % v)
    return Graph(g.vertices - {v}, g.edges)


# ---------------------------------------------------------------------------
# subdivision and the constraint graph

def subdivision_label(u: str, v: str) -> str:
    a, b = edge_key(u, v)
    return "s(%s,%s)" % (a, b)


def subdivide_all(g: Graph) -> Graph:
    """Replace every edge uv by the path u - s(u,v) - v."""
    vs = set(g.vertices)
    es = set()
    for a, b in g.edges:
        mid = subdivision_label(a, b)
        if mid in vs:
            raise GraphError("subdivision label %r collides" % mid)
        vs.add(mid)
        es.add(edge_key(a, mid))
        es.add(edge_key(mid, b))
    return Graph(frozenset(vs), frozenset(es))


def edge_node_label(u: str, v: str) -> str:
    a, b = edge_key(u, v)
    return "e(%s,%s)" % (a, b)


def constraint_graph(g: Graph) -> Graph:
    """Graph on the coordinates of R^{V u E}: keep G and add, for each edge
    uv, a node e(u,v) adjacent to both u and v (a length-2 path on top of
    the edge, forming a triangle)."""
    vs = set(g.vertices)
    es = set(g.edges)
    for a, b in g.edges:
        node = edge_node_label(a, b)
        if node in vs:
            raise GraphError("edge-node label %r collides" % node)
        vs.add(node)
        es.add(edge_key(a, node))
        es.add(edge_key(node, b))
    return Graph(frozenset(vs), frozenset(es))


# ---------------------------------------------------------------------------
# file formats

def to_text(g: Graph) -> str:
    """'p edge n m' header, one 'e u v' line per edge, 'n label' per
    isolated vertex."""
    lines = ["p edge %d %d" % (g.n, g.m)]
    covered = set()
    for a, b in g.sorted_edges():
        lines.append("e %s %s" % (a, b))
        covered.add(a)
        covered.add(b)
    for v in g.sorted_vertices():
        if v not in covered:
            lines.append("n %s" % v)
    return "\n".join(lines) + "\n"


def from_text(text: str) -> Graph:
    vs = set()
    es = []
    header = None
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        parts = line.split()
        if parts[0] == "p":
            if len(parts) != 4 or parts[1] != "edge":
                raise GraphError("bad header line: %r" % line)
            header = (int(parts[2]), int(parts[3]))
        elif parts[0] == "e":
            if len(parts) != 3:
                raise GraphError("bad edge line: %r" % line)
            vs.update(parts[1:3])
            es.append((parts[1], parts[2]))
        elif parts[0] == "n":
            if len(parts) != 2:
                raise GraphError("bad vertex line: %r" % line)
            vs.add(parts[1])
        else:
            raise GraphError("unrecognized line: %r" % line)
    g = make_graph(vs, es)
    if header is not None and (g.n, g.m) != header:
        raise GraphError("header says %r, file has (%d, %d)" % (header, g.n, g.m))
    return g


def to_json_obj(g: Graph) -> dict:
    return {"vertices": g.sorted_vertices(),
            "edges": [list(e) for e in g.sorted_edges()]}


def from_json_obj(obj: dict) -> Graph:
    return make_graph(obj["vertices"], [tuple(e) for e in obj["edges"]])


def to_json(g: Graph) -> str:
    return json.dumps(to_json_obj(g), indent=2, sort_keys=True) + "\n"


def from_json(text: str) -> Graph:
    return from_json_obj(json.loads(text))
