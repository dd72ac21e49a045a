"""Tree decompositions: heuristic construction, validation, exact treewidth.

Decompositions are built from elimination orderings via the standard
fill-in/clique-bag procedure.  The exact solver first strips simplicial
vertices (their elimination is always optimal), then runs branch and bound
over elimination orderings of the remaining core, memoized on the set of
eliminated vertices (the filled graph depends only on that set).
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .graph_core import Graph, edge_key

EXACT_CORE_LIMIT = 13  # vertices left after simplicial reduction


class TreewidthError(ValueError):
    pass


@dataclass(frozen=True)
class TreeDecomposition:
    nodes: tuple            # sorted node ids
    tree_edges: frozenset   # sorted pairs of node ids
    bags: dict              # node id -> frozenset of graph vertex labels

    @property
    def width(self) -> int:
        return max(len(b) for b in self.bags.values()) - 1

    def bag(self, t: str) -> frozenset:
        return self.bags[t]

    def node_neighbors(self, t: str) -> list:
        out = []
        for a, b in self.tree_edges:
            if a == t:
                out.append(b)
            elif b == t:
                out.append(a)
        return sorted(out)

    def sorted_tree_edges(self) -> list:
        return sorted(self.tree_edges)


def _node_id(i: int) -> str:
    return "t%03d" % i


# ---------------------------------------------------------------------------
# validation

def validate_decomposition(g: Graph, td: TreeDecomposition) -> list:
    """Return the list of violated conditions (empty means valid).

    Checks, separately: the nodes and tree_edges form a tree, every vertex
    is covered, every edge is covered, and each vertex's bag set induces a
    connected subtree.
    """
    problems = []
    nodes = list(td.nodes)
    node_set = set(nodes)
    if len(nodes) == 0:
        return ["decomposition has no nodes"]
    for a, b in td.tree_edges:
        if a not in node_set or b not in node_set:
            problems.append("tree edge (%s, %s) uses unknown node" % (a, b))
    if set(td.bags) != node_set:
        problems.append("bag index set differs from node set")
        return problems
    # tree check: connected and |E| = |V| - 1
    adj = {t: set() for t in nodes}
    for a, b in td.tree_edges:
        adj[a].add(b)
        adj[b].add(a)
    seen = {nodes[0]}
    stack = [nodes[0]]
    while stack:
        t = stack.pop()
        for s in adj[t]:
            if s not in seen:
                seen.add(s)
                stack.append(s)
    if len(seen) != len(nodes):
        problems.append("tree edges do not connect all nodes")
    if len(td.tree_edges) != len(nodes) - 1:
        problems.append("tree edge count %d != node count - 1" % len(td.tree_edges))
    # vertex coverage
    covered = set()
    for b in td.bags.values():
        covered |= b
        for v in b:
            if v not in g.vertices:
                problems.append("bag contains unknown vertex %r" % v)
    missing = g.vertices - covered
    if missing:
        problems.append("vertices not covered: %s" % sorted(missing))
    # edge coverage
    for u, v in g.sorted_edges():
        if not any(u in b and v in b for b in td.bags.values()):
            problems.append("edge (%s, %s) not covered by any bag" % (u, v))
    # connectivity of each vertex's bag subtree
    for v in g.sorted_vertices():
        holding = [t for t in nodes if v in td.bags[t]]
        if not holding:
            continue  # already reported as uncovered
        seen_v = {holding[0]}
        stack = [holding[0]]
        holding_set = set(holding)
        while stack:
            t = stack.pop()
            for s in adj[t]:
                if s in holding_set and s not in seen_v:
                    seen_v.add(s)
                    stack.append(s)
        if len(seen_v) != len(holding):
            problems.append("bags containing %r are not connected in the tree" % v)
    return problems


# ---------------------------------------------------------------------------
# elimination orderings -> decompositions

def _eliminate(adj: dict, v: str) -> None:
    """Remove v, turning its neighbourhood into a clique (in place)."""
    nbrs = adj.pop(v)
    for u in nbrs:
        adj[u].discard(v)
    nbrs = sorted(nbrs)
    for i, a in enumerate(nbrs):
        for b in nbrs[i + 1:]:
            adj[a].add(b)
            adj[b].add(a)


def decomposition_from_order(g: Graph, order: list) -> TreeDecomposition:
    """Standard construction: bag of v = {v} + its neighbours at elimination
    time; each bag is attached at the bag of the first-eliminated later
    neighbour.  Bags that are subsets of a neighbouring bag are pruned.
    """
    if set(order) != set(g.vertices) or len(order) != g.n:
        raise TreewidthError("order is not a permutation of the vertices")
    adj = g.adjacency()
    pos = {v: i for i, v in enumerate(order)}
    bag_of = {}
    attach = {}  # vertex -> vertex whose bag it hangs from
    for v in order:
        nbrs = set(adj[v])
        bag_of[v] = frozenset({v} | nbrs)
        later = [u for u in nbrs if pos[u] > pos[v]]
        if later:
            attach[v] = min(later, key=lambda u: pos[u])
        _eliminate(adj, v)
    nodes = [_node_id(i) for i in range(len(order))]
    node_of = {v: nodes[i] for i, v in enumerate(order)}
    bags = {node_of[v]: bag_of[v] for v in order}
    edges = set()
    for v, u in attach.items():
        edges.add(edge_key(node_of[v], node_of[u]))
    # connect any remaining components (disconnected graphs) in order
    roots = [v for v in order if v not in attach]
    for a, b in zip(roots, roots[1:]):
        edges.add(edge_key(node_of[a], node_of[b]))
    td = TreeDecomposition(tuple(nodes), frozenset(edges), bags)
    return _prune_subset_bags(td)


def _prune_subset_bags(td: TreeDecomposition) -> TreeDecomposition:
    """Repeatedly contract a tree edge whose one bag contains the other."""
    nodes = list(td.nodes)
    bags = dict(td.bags)
    adj = {t: set() for t in nodes}
    for a, b in td.tree_edges:
        adj[a].add(b)
        adj[b].add(a)
    changed = True
    while changed:
        changed = False
        for t in sorted(adj):
            for s in sorted(adj[t]):
                if bags[t] <= bags[s]:
                    # drop t, reattach its other neighbours to s
                    for r in adj[t]:
                        if r != s:
                            adj[r].discard(t)
                            adj[r].add(s)
                            adj[s].add(r)
                    adj[s].discard(t)
                    del adj[t]
                    del bags[t]
                    changed = True
                    break
            if changed:
                break
    kept = sorted(bags)
    renum = {t: _node_id(i) for i, t in enumerate(kept)}
    edges = set()
    for t in kept:
        for s in adj[t]:
            edges.add(edge_key(renum[t], renum[s]))
    return TreeDecomposition(tuple(renum[t] for t in kept), frozenset(edges),
                             {renum[t]: bags[t] for t in kept})


def _fill_count(adj: dict, v: str) -> int:
    nbrs = sorted(adj[v])
    missing = 0
    for i, a in enumerate(nbrs):
        for b in nbrs[i + 1:]:
            if b not in adj[a]:
                missing += 1
    return missing


def heuristic_order(g: Graph, heuristic: str) -> list:
    """Elimination ordering by 'min-degree' or 'min-fill'; ties broken by
    label order so the result is deterministic."""
    if heuristic not in ("min-degree", "min-fill"):
        raise TreewidthError("unknown heuristic %r" % heuristic)
    adj = g.adjacency()
    order = []
    while adj:
        if heuristic == "min-degree":
            v = min(sorted(adj), key=lambda u: len(adj[u]))
        else:
            v = min(sorted(adj), key=lambda u: _fill_count(adj, u))
        order.append(v)
        _eliminate(adj, v)
    return order


def heuristic_decomposition(g: Graph, heuristic: str = "min-fill") -> TreeDecomposition:
    if g.n == 0:
        raise TreewidthError("empty graph")
    return decomposition_from_order(g, heuristic_order(g, heuristic))


# ---------------------------------------------------------------------------
# exact treewidth

def _simplicial_reduction(adj: dict):
    """Strip vertices whose neighbourhood is a clique; returns the removal
    order and the forced width (max degree seen at removal time)."""
    removed = []
    forced = 0
    changed = True
    while changed:
        changed = False
        for v in sorted(adj):
            nbrs = sorted(adj[v])
            clique = all(b in adj[a] for i, a in enumerate(nbrs) for b in nbrs[i + 1:])
            if clique:
                forced = max(forced, len(nbrs))
                removed.append(v)
                _eliminate(adj, v)
                changed = True
                break
    return removed, forced


def _greedy_clique_bound(adj: dict) -> int:
    """Cheap treewidth lower bound: greedy clique from each vertex."""
    best = 0
    for v in sorted(adj):
        clique = [v]
        for u in sorted(adj[v], key=lambda u: (-len(adj[u]), u)):
            if all(u in adj[c] for c in clique):
                clique.append(u)
        best = max(best, len(clique) - 1)
    return best


def exact_treewidth(g: Graph):
    """Exact treewidth plus a witnessing decomposition of that width.

    Exhaustive search over elimination orderings of the post-reduction
    core, memoized on the remaining vertex set (the filled graph depends
    only on which vertices have been eliminated, not their order).  Cores
    larger than EXACT_CORE_LIMIT vertices are rejected.
    """
    if g.n == 0:
        raise TreewidthError("empty graph")
    adj0 = g.adjacency()
    prefix, forced = _simplicial_reduction(adj0)
    core = adj0
    if len(core) > EXACT_CORE_LIMIT:
        raise TreewidthError(
            "too large for exact mode: %d vertices remain after reduction "
            "(limit %d)" % (len(core), EXACT_CORE_LIMIT))

    memo = {}

    def search(adj: dict):
        """Optimal (width, elimination order) for the remaining graph."""
        if not adj:
            return 0, []
        key = frozenset(adj)
        hit = memo.get(key)
        if hit is not None:
            return hit
        clique_lb = _greedy_clique_bound(adj)
        best_w, best_o = None, None
        for v in sorted(adj, key=lambda u: (len(adj[u]), u)):
            d = len(adj[v])
            if best_w is not None and d >= best_w:
                continue  # max(d, rest) cannot beat the incumbent
            sub = {u: set(nb) for u, nb in adj.items()}
            _eliminate(sub, v)
            w_rest, o_rest = search(sub)
            w = max(d, w_rest)
            if best_w is None or w < best_w:
                best_w, best_o = w, [v] + o_rest
                if best_w <= clique_lb:
                    break  # provably optimal for this state
        memo[key] = (best_w, best_o)
        return best_w, best_o

    w_core, o_core = search({v: set(nb) for v, nb in core.items()})
    width = max(forced, w_core)
    td = decomposition_from_order(g, prefix + o_core)
    assert td.width == width, (td.width, width)
    return width, td


# ---------------------------------------------------------------------------
# JSON interchange

def td_to_json_obj(td: TreeDecomposition) -> dict:
    return {"nodes": list(td.nodes),
            "tree_edges": [list(e) for e in td.sorted_tree_edges()],
            "bags": {t: sorted(td.bags[t]) for t in td.nodes}}


def td_from_json_obj(obj: dict) -> TreeDecomposition:
    nodes = tuple(obj["nodes"])
    edges = frozenset(edge_key(a, b) for a, b in obj["tree_edges"])
    bags = {t: frozenset(obj["bags"][t]) for t in nodes}
    return TreeDecomposition(nodes, edges, bags)


def td_to_json(td: TreeDecomposition) -> str:
    return json.dumps(td_to_json_obj(td), indent=2, sort_keys=True) + "\n"


def td_from_json(text: str) -> TreeDecomposition:
    return td_from_json_obj(json.loads(text))
