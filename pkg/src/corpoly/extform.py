"""Tree-decomposition based extended formulation of COR(G), exact linear
optimization over it by dynamic programming, and the verification loop
that cross-checks the LP route against ground truth.

The formulation lives over the constraint graph: one variable per
(decomposition node, locally consistent 0/1 bag assignment), normalization
per node, marginal consistency per tree edge, nonnegativity per variable.
The projection recovers each coordinate from the lexicographically least
node whose bag contains it.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .graph_core import Graph, constraint_graph, edge_node_label
from .lp_exact import LinearProgram, SimplexSolver
from .polytope import (AffineMap, CorVertex, map_brute_force,
                       variables)
from .rng import SplitMix64
from .treewidth import TreeDecomposition, validate_decomposition

LIFT_CHECK_LIMIT = 12


class ExtFormError(ValueError):
    pass


@dataclass
class ExtendedFormulation:
    graph: Graph
    td: TreeDecomposition
    lp: LinearProgram               # constraints only; objective left zero
    projection: AffineMap           # lambda space -> R^{V u E}
    var_info: dict                  # lambda name -> (node, {bag label: bit})
    accounting: dict


def _label_of(var: tuple) -> str:
    """Constraint-graph label housing a coordinate of R^{V u E}."""
    if var[0] == "v":
        return var[1]
    return edge_node_label(var[1], var[2])


def _consistent_assignments(bag: list, enodes: dict) -> list:
    """All 0/1 assignments of the sorted bag whose edge-node bits equal the
    product of their endpoint bits, whenever all three lie in the bag."""
    bagset = set(bag)
    triples = []
    for pos, z in enumerate(bag):
        if z in enodes:
            u, v = enodes[z]
            if u in bagset and v in bagset:
                triples.append((pos, bag.index(u), bag.index(v)))
    out = []
    for bits in itertools.product((0, 1), repeat=len(bag)):
        if all(bits[e] == bits[i] & bits[j] for e, i, j in triples):
            out.append(bits)
    return out


def _lam_name(node: str, bits: tuple) -> str:
    return "lam[%s|%s]" % (node, "".join(map(str, bits)))


def build_ef(g: Graph, td: TreeDecomposition) -> ExtendedFormulation:
    """Assemble the formulation for COR(g) from a tree decomposition of
    its constraint graph."""
    gprime = constraint_graph(g)
    problems = validate_decomposition(gprime, td)
    if problems:
        raise ExtFormError("invalid decomposition of the constraint graph: "
                           + "; ".join(problems))
    enodes = {edge_node_label(a, b): (a, b) for a, b in g.edges}

    bag_elems = {t: sorted(td.bags[t]) for t in td.nodes}
    assigns = {t: _consistent_assignments(bag_elems[t], enodes)
               for t in td.nodes}
    lam_names = []
    var_info = {}
    for t in td.nodes:
        for bits in assigns[t]:
            name = _lam_name(t, bits)
            lam_names.append(name)
            var_info[name] = (t, dict(zip(bag_elems[t], bits)))

    constraints = []
    for t in td.nodes:
        constraints.append(({_lam_name(t, bits): Fraction(1)
                             for bits in assigns[t]}, Fraction(1)))
    for s, t in td.sorted_tree_edges():
        inter = sorted(td.bags[s] & td.bags[t])
        spos = [bag_elems[s].index(z) for z in inter]
        tpos = [bag_elems[t].index(z) for z in inter]
        for psi in itertools.product((0, 1), repeat=len(inter)):
            lin = {}
            for bits in assigns[s]:
                if all(bits[p] == b for p, b in zip(spos, psi)):
                    lin[_lam_name(s, bits)] = Fraction(1)
            for bits in assigns[t]:
                if all(bits[p] == b for p, b in zip(tpos, psi)):
                    lin[_lam_name(t, bits)] = lin.get(_lam_name(t, bits),
                                                      Fraction(0)) - 1
            constraints.append((lin, Fraction(0)))

    lp = LinearProgram(lam_names, constraints, {})
    lp.validate()

    # projection: read each coordinate off its canonical node
    outputs = tuple(variables(g))
    forms = {}
    for z in outputs:
        label = _label_of(z)
        tz = min(t for t in td.nodes if label in td.bags[t])
        pos = bag_elems[tz].index(label)
        lin = {_lam_name(tz, bits): Fraction(1)
               for bits in assigns[tz] if bits[pos] == 1}
        forms[z] = (lin, Fraction(0))
    projection = AffineMap(outputs, forms)

    w = td.width
    accounting = {
        "lambda_vars": len(lam_names),
        "equalities": len(constraints),
        "inequalities": len(lam_names),   # one nonnegativity per lambda
        "width": w,
        "nodes": len(td.nodes),
        "facet_budget": (g.n + g.m) * 2 ** (w + 1),
    }
    return ExtendedFormulation(g, td, lp, projection, var_info, accounting)


def lift_vertex(ef: ExtendedFormulation, X) -> dict:
    """Extension-space point for the subset X: in every node, the unit mass
    sits on the restriction of the global assignment induced by X."""
    X = frozenset(X)
    if not X <= ef.graph.vertices:
        raise ExtFormError("X is not a vertex subset")
    enodes = {edge_node_label(a, b): (a, b) for a, b in ef.graph.edges}
    point = {name: Fraction(0) for name in ef.lp.variables}
    for t in ef.td.nodes:
        bag = sorted(ef.td.bags[t])
        bits = []
        for z in bag:
            if z in enodes:
                u, v = enodes[z]
                bits.append(1 if (u in X and v in X) else 0)
            else:
                bits.append(1 if z in X else 0)
        point[_lam_name(t, tuple(bits))] = Fraction(1)
    return point


def point_feasible(ef: ExtendedFormulation, point: dict) -> bool:
    """Exact check of all equalities and nonnegativities at a point."""
    if any(x < 0 for x in point.values()):
        return False
    for lin, rhs in ef.lp.constraints:
        val = sum((c * point[name] for name, c in lin.items()), Fraction(0))
        if val != rhs:
            return False
    return True


# ---------------------------------------------------------------------------
# exact optimization by max-sum dynamic programming

def map_dp(g: Graph, td: TreeDecomposition, weights: dict):
    """Maximize a linear objective over COR(g) exactly by message passing
    on the decomposition of the constraint graph; each coordinate's weight
    is charged at its canonical (lexicographically least) node.  Ties break
    to the smallest subset bitmask, matching map_brute_force.

    Returns (optimal value, optimal X).
    """
    gprime = constraint_graph(g)
    problems = validate_decomposition(gprime, td)
    if problems:
        raise ExtFormError("invalid decomposition of the constraint graph: "
                           + "; ".join(problems))
    for var in weights:
        if var[0] == "v":
            if var[1] not in g.vertices:
                raise ExtFormError("weight for unknown vertex %r" % (var,))
        elif var[0] != "e" or (var[1], var[2]) not in g.edges:
            raise ExtFormError("weight for unknown variable %r" % (var,))

    enodes = {edge_node_label(a, b): (a, b) for a, b in g.edges}
    weight_of = {}
    for a, b in g.edges:
        weight_of[edge_node_label(a, b)] = Fraction(weights.get(("e", a, b), 0))
    for v in g.vertices:
        weight_of[v] = Fraction(weights.get(("v", v), 0))
    canonical = {}
    for t in td.nodes:
        for z in td.bags[t]:
            if z not in canonical or t < canonical[z]:
                canonical[z] = t

    vs = g.sorted_vertices()
    bitpos = {v: i for i, v in enumerate(vs)}

    bag_elems = {t: sorted(td.bags[t]) for t in td.nodes}
    assigns = {t: _consistent_assignments(bag_elems[t], enodes)
               for t in td.nodes}

    # root the tree at the first node
    nodes = list(td.nodes)
    adj = {t: set() for t in nodes}
    for a, b in td.tree_edges:
        adj[a].add(b)
        adj[b].add(a)
    root = nodes[0]
    order = [root]
    parent = {root: None}
    for t in order:
        for s in sorted(adj[t]):
            if s not in parent:
                parent[s] = t
                order.append(s)

    def local_entry(t, bits):
        val = Fraction(0)
        mask = 0
        for z, b in zip(bag_elems[t], bits):
            if b and canonical[z] == t:
                val += weight_of[z]
            if b and z not in enodes:
                mask |= 1 << bitpos[z]
        return val, mask

    # upward pass: message[child] keyed by the child's restriction to the
    # parent intersection
    message = {}
    table = {}
    for t in reversed(order):
        tab = {}
        for bits in assigns[t]:
            val, mask = local_entry(t, bits)
            ok = True
            for s in sorted(adj[t]):
                if parent.get(s) != t:
                    continue
                inter = tuple(sorted(td.bags[t] & td.bags[s]))
                key = tuple(bits[bag_elems[t].index(z)] for z in inter)
                got = message[s].get(key)
                if got is None:
                    ok = False
                    break
                val += got[0]
                mask |= got[1]
            if ok:
                tab[bits] = (val, mask)
        table[t] = tab
        p = parent[t]
        if p is not None:
            inter = tuple(sorted(td.bags[t] & td.bags[p]))
            pos = [bag_elems[t].index(z) for z in inter]
            msg = {}
            for bits, (val, mask) in tab.items():
                key = tuple(bits[i] for i in pos)
                cur = msg.get(key)
                if cur is None or val > cur[0] or \
                   (val == cur[0] and mask < cur[1]):
                    msg[key] = (val, mask)
            message[t] = msg

    if not table[root]:
        raise ExtFormError("no consistent assignment at the root bag")
    best_val, best_mask = None, None
    for bits, (val, mask) in table[root].items():
        if best_val is None or val > best_val or \
           (val == best_val and mask < best_mask):
            best_val, best_mask = val, mask
    X = frozenset(vs[i] for i in range(len(vs)) if best_mask >> i & 1)
    return best_val, X


# ---------------------------------------------------------------------------
# behavioural verification of the projection

def objective_stream(g: Graph, seed: int, trials: int) -> list:
    """Reproducible integer objectives in [-10, 10]^{V u E} (SplitMix64)."""
    rng = SplitMix64(seed)
    out = []
    for _ in range(trials):
        out.append({z: Fraction(rng.randint(-10, 10)) for z in variables(g)})
    return out


def verify_ef(g: Graph, ef: ExtendedFormulation, trials: int = 20,
              seed: int = 0) -> dict:
    """Cross-check LP optima over the formulation against brute force, and
    lifted vertices against the constraint system.  Failures are report
    contents, not exceptions."""
    mismatches = []
    objectives = objective_stream(g, seed, trials)
    solver = SimplexSolver(ef.lp)
    for idx, cz in enumerate(objectives):
        lam_obj = {}
        for z, c in cz.items():
            if c == 0:
                continue
            lin, off = ef.projection.forms[z]
            assert off == 0
            for name, coeff in lin.items():
                lam_obj[name] = lam_obj.get(name, Fraction(0)) + c * coeff
        outcome = solver.solve_objective(lam_obj)
        bf_val, _bf_x = map_brute_force(g, cz)
        if outcome.status != "optimal" or outcome.value != bf_val:
            mismatches.append({
                "trial": idx,
                "objective": {" ".join(map(str, z)): str(c)
                              for z, c in cz.items()},
                "lp_status": outcome.status,
                "lp_value": str(outcome.value),
                "brute_force_value": str(bf_val),
            })
        else:
            # sanity: the projected optimum stays in the unit box
            proj = ef.projection.apply_key(
                {name: outcome.point.get(name, Fraction(0))
                 for name in ef.lp.variables})
            if not all(0 <= x <= 1 for x in proj):
                mismatches.append({"trial": idx,
                                   "error": "projection outside [0,1]"})

    lift_failures = []
    lift_checked = g.n <= LIFT_CHECK_LIMIT
    if lift_checked:
        vs = g.sorted_vertices()
        for maskbits in range(1 << g.n):
            X = frozenset(vs[i] for i in range(g.n) if maskbits >> i & 1)
            point = lift_vertex(ef, X)
            if not point_feasible(ef, point):
                lift_failures.append(sorted(X))
                continue
            proj = ef.projection.apply_key(point)
            if proj != CorVertex(g, X).key():
                lift_failures.append(sorted(X))
    return {
        "trials": trials,
        "seed": seed,
        "mismatches": mismatches,
        "lift_checked": lift_checked,
        "lift_failures": lift_failures,
        "accounting": ef.accounting,
        "ok": not mismatches and not lift_failures,
    }
