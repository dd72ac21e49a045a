"""Command-line surface: graph generation and conversion, extended
formulation build/verify/export, exact linear optimization over COR(G),
and the gadget construction pipelines.

Reports are JSON with rationals rendered as 'p/q' strings; every report
embeds the tool version, the seed and limits in force, and a digest of the
input file, so identical invocations produce byte-identical output.
Exit codes: 0 all verifications passed, 1 a verification failed,
2 usage or validation error.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
from fractions import Fraction

from . import __version__
from . import gadgets, graph_core, polytope, treewidth
from .extform import build_ef, map_dp, verify_ef
from .lp_exact import LinearProgram, solve, to_lp_file
from .polytope import map_brute_force, variables
from .rationals import rat_str

DEFAULT_TRIALS = 20
DEFAULT_SEED = 0

LIMITS = {
    "enumeration_cap": polytope.ENUM_LIMIT,
    "exact_treewidth_core_cap": treewidth.EXACT_CORE_LIMIT,
    "exhaustive_grid_height_cap": gadgets.EXHAUSTIVE_HEIGHT_LIMIT,
}


class UsageError(Exception):
    pass


def _digest(path: str) -> str:
    with open(path, "rb") as fh:
        return hashlib.sha256(fh.read()).hexdigest()


def _report_base(args, input_path=None) -> dict:
    base = {"tool": "corpoly", "version": __version__, "limits": LIMITS}
    if input_path is not None:
        base["input"] = os.path.basename(input_path)
        base["input_digest"] = _digest(input_path)
    if getattr(args, "seed", None) is not None:
        base["seed"] = args.seed
    if getattr(args, "trials", None) is not None:
        base["trials"] = args.trials
    return base


def _emit(obj: dict, out=None) -> None:
    text = json.dumps(obj, indent=2, sort_keys=True) + "\n"
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _read_graph(path: str) -> graph_core.Graph:
    with open(path) as fh:
        text = fh.read()
    if text.lstrip().startswith("{"):
        return graph_core.from_json(text)
    return graph_core.from_text(text)


def _write_graph(g, path, fmt):
    text = graph_core.to_json(g) if fmt == "json" else graph_core.to_text(g)
    if path:
        with open(path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _read_weights(path: str, g) -> dict:
    """Weights file: {"vertices": {label: rat}, "edges": [[u, v, rat], ...]}
    with rationals as ints or 'p/q' strings."""
    with open(path) as fh:
        obj = json.load(fh)
    weights = {}
    for label, w in obj.get("vertices", {}).items():
        weights[polytope.vvar(label)] = Fraction(str(w))
    for u, v, w in obj.get("edges", []):
        weights[polytope.evar(u, v)] = Fraction(str(w))
    for var in weights:
        polytope.check_var(g, var)
    return weights


def _decomposition(args, g):
    gprime = graph_core.constraint_graph(g)
    if getattr(args, "td", None):
        with open(args.td) as fh:
            td = treewidth.td_from_json(fh.read())
        problems = treewidth.validate_decomposition(gprime, td)
        if problems:
            raise UsageError("supplied decomposition invalid: "
                             + "; ".join(problems))
        return td
    return treewidth.heuristic_decomposition(gprime, args.heuristic)


# ---------------------------------------------------------------------------
# subcommands

def cmd_graph(args) -> int:
    if args.action == "gen":
        family = args.family
        p = args.params
        try:
            if family == "grid":
                g = graph_core.make_grid(int(p[0]))
            elif family == "complete":
                g = graph_core.make_complete(int(p[0]))
            elif family == "complete-bipartite":
                g = graph_core.make_complete_bipartite(int(p[0]), int(p[1]))
            elif family == "path":
                g = graph_core.make_path(int(p[0]))
            elif family == "cycle":
                g = graph_core.make_cycle(int(p[0]))
            else:
                raise UsageError("unknown family %r (grid, complete, "
                                 "complete-bipartite, path, cycle)" % family)
        except (IndexError, ValueError) as exc:
            if isinstance(exc, UsageError):
                raise
            raise UsageError("bad parameters for family %r: %s" % (family, exc))
        _write_graph(g, args.output, args.format)
        return 0
    # convert
    g = _read_graph(args.input)
    fmt = "json" if args.to == "json" else "text"
    _write_graph(g, args.output, fmt)
    return 0


def cmd_ef(args) -> int:
    g = _read_graph(args.input)
    td = _decomposition(args, g)
    ef = build_ef(g, td)
    report = _report_base(args, args.input)
    report["accounting"] = ef.accounting
    if args.action == "build":
        report["within_facet_budget"] = (
            ef.accounting["inequalities"] <= ef.accounting["facet_budget"])
        _emit(report, args.output)
        return 0 if report["within_facet_budget"] else 1
    if args.action == "verify":
        result = verify_ef(g, ef, trials=args.trials, seed=args.seed)
        report["verification"] = result
        report["matches"] = "%d/%d" % (args.trials - len(result["mismatches"]),
                                       args.trials)
        _emit(report, args.output)
        return 0 if result["ok"] else 1
    # export-lp
    out = args.output or (args.input + ".lp")
    with open(out, "w") as fh:
        fh.write(to_lp_file(ef.lp))
    sidecar = dict(report)
    sidecar["projection"] = {
        " ".join(map(str, z)): {name: rat_str(c) for name, c in lin.items()}
        for z, (lin, _off) in ef.projection.forms.items()}
    sidecar["variable_order"] = list(ef.lp.variables)
    _emit(sidecar, out + ".json")
    sys.stdout.write("wrote %s and %s\n" % (out, out + ".json"))
    return 0


def cmd_map(args) -> int:
    g = _read_graph(args.input)
    weights = _read_weights(args.weights, g)
    report = _report_base(args, args.input)
    results = {}
    methods = ("dp", "bf", "lp") if args.cross_check else (args.method,)
    td = None
    for method in methods:
        if method == "bf":
            val, x = map_brute_force(g, weights)
        elif method == "dp":
            td = td or _decomposition(args, g)
            val, x = map_dp(g, td, weights)
        else:
            td = td or _decomposition(args, g)
            ef = build_ef(g, td)
            obj = {}
            for z, c in weights.items():
                lin, _off = ef.projection.forms[z]
                for name, coeff in lin.items():
                    obj[name] = obj.get(name, Fraction(0)) + c * coeff
            outcome = solve(LinearProgram(ef.lp.variables, ef.lp.constraints,
                                          obj))
            val, x = outcome.value, None
        results[method] = {"value": rat_str(val)}
        if x is not None:
            results[method]["optimizer"] = sorted(x)
    report["results"] = results
    if args.cross_check:
        vals = {r["value"] for r in results.values()}
        report["agreement"] = "dp == bf == lp: %s" % str(len(vals) == 1).lower()
        _emit(report, args.output)
        return 0 if len(vals) == 1 else 1
    _emit(report, args.output)
    return 0


def cmd_gadget(args) -> int:
    report = _report_base(args)
    if args.action == "verify-crossover":
        result = gadgets.verify_crossover()
        report["crossover"] = result
        _emit(report, args.output)
        return 0 if result["ok"] else 1
    if args.action == "build-grid":
        gw = gadgets.build_grid_with_gadgets(args.height)
        prefix = args.output or ("grid%d" % args.height)
        with open(prefix + ".graph", "w") as fh:
            fh.write(graph_core.to_text(gw.graph))
        face = [{"tag": eq.tag,
                 "vars": [" ".join(map(str, z)) for z in eq.vars],
                 "coeffs": [rat_str(c) for c in eq.coeffs],
                 "rhs": rat_str(eq.rhs)} for eq in gw.face]
        desc = dict(report)
        desc["height"] = gw.h
        desc["bottom"] = list(gw.bottom)
        desc["left"] = list(gw.left)
        desc["diagonals"] = [{"i": i, "j": j, "edge": list(e)}
                             for (i, j), e in gw.diagonals]
        desc["face_equations"] = face
        desc["gadget_copies"] = len(gw.gadget_prefixes)
        _emit(desc, prefix + ".json")
        sys.stdout.write("wrote %s.graph and %s.json\n" % (prefix, prefix))
        return 0
    if args.action == "verify-grid":
        gw = gadgets.build_grid_with_gadgets(args.height)
        result = gadgets.verify_projection(gw)
        report["projection"] = result
        _emit(report, args.output)
        return 0 if result["ok"] else 1
    # report
    report["lower_bounds"] = gadgets.lower_bound_report(args.n, args.height)
    _emit(report, args.output)
    return 0


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="corpoly",
        description="exact correlation-polytope toolkit")
    sub = parser.add_subparsers(dest="command", required=True)

    p_graph = sub.add_parser("graph", help="generate or convert graph files")
    g_sub = p_graph.add_subparsers(dest="action", required=True)
    p_gen = g_sub.add_parser("gen")
    p_gen.add_argument("family")
    p_gen.add_argument("params", nargs="*")
    p_gen.add_argument("-o", "--output")
    p_gen.add_argument("--format", choices=("text", "json"), default="text")
    p_conv = g_sub.add_parser("convert")
    p_conv.add_argument("input")
    p_conv.add_argument("--to", choices=("edge-list", "json"), required=True)
    p_conv.add_argument("-o", "--output")

    p_ef = sub.add_parser("ef", help="extended formulation pipelines")
    e_sub = p_ef.add_subparsers(dest="action", required=True)
    for name in ("build", "verify", "export-lp"):
        p = e_sub.add_parser(name)
        p.add_argument("input")
        p.add_argument("--td", help="tree decomposition JSON to use")
        p.add_argument("--heuristic", choices=("min-fill", "min-degree"),
                       default="min-fill")
        p.add_argument("-o", "--output")
        if name == "verify":
            p.add_argument("--trials", type=int,
                           default=int(os.environ.get("CORPOLY_TRIALS",
                                                      DEFAULT_TRIALS)))
            p.add_argument("--seed", type=int,
                           default=int(os.environ.get("CORPOLY_SEED",
                                                      DEFAULT_SEED)))

    p_map = sub.add_parser("map", help="maximize a linear objective over COR(G)")
    m_sub = p_map.add_subparsers(dest="action", required=True)
    p_solve = m_sub.add_parser("solve")
    p_solve.add_argument("input")
    p_solve.add_argument("weights")
    p_solve.add_argument("--method", choices=("dp", "bf", "lp"), default="dp")
    p_solve.add_argument("--cross-check", action="store_true")
    p_solve.add_argument("--heuristic", choices=("min-fill", "min-degree"),
                         default="min-fill")
    p_solve.add_argument("--td")
    p_solve.add_argument("-o", "--output")

    p_gad = sub.add_parser("gadget", help="crossover and grid constructions")
    d_sub = p_gad.add_subparsers(dest="action", required=True)
    d_sub.add_parser("verify-crossover").add_argument("-o", "--output")
    p_bg = d_sub.add_parser("build-grid")
    p_bg.add_argument("height", type=int)
    p_bg.add_argument("-o", "--output")
    p_vg = d_sub.add_parser("verify-grid")
    p_vg.add_argument("height", type=int)
    p_vg.add_argument("-o", "--output")
    p_rep = d_sub.add_parser("report")
    p_rep.add_argument("n", type=int)
    p_rep.add_argument("height", type=int)
    p_rep.add_argument("-o", "--output")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    handler = {"graph": cmd_graph, "ef": cmd_ef,
               "map": cmd_map, "gadget": cmd_gadget}[args.command]
    try:
        return handler(args)
    except (UsageError, graph_core.GraphError, treewidth.TreewidthError,
            polytope.PolytopeError, gadgets.GadgetError) as exc:
        sys.stderr.write("error: %s\n" % exc)
        return 2
    except OSError as exc:
        sys.stderr.write("i/o error: %s\n" % exc)
        return 2


if __name__ == "__main__":
    sys.exit(main())
