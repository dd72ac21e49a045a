"""Exact toolkit for correlation polytopes of graphs: compact extended
formulations from tree decompositions, exact rational linear programming,
MAP inference, and the crossover-gadget grid construction."""

__version__ = "1.0.0"

from .graph_core import (Graph, GraphError, constraint_graph, edge_key,
                         make_complete, make_complete_bipartite, make_cycle,
                         make_graph, make_grid, make_path, make_petersen)
from .treewidth import (TreeDecomposition, TreewidthError, exact_treewidth,
                        heuristic_decomposition, validate_decomposition)
from .polytope import (CorVertex, PolytopeError, cor_vertices, dimension,
                       evar, map_brute_force, variables, vvar)
from .lp_exact import (LinearProgram, LpError, LpOutcome, SimplexSolver,
                       parse_lp_file, solve, solve_many, to_lp_file)
from .extform import ExtendedFormulation, build_ef, map_dp, verify_ef
from .gadgets import (GadgetError, build_grid_with_gadgets, replace_clauses,
                      verify_crossover, verify_projection)

__all__ = [
    "Graph", "GraphError", "constraint_graph", "edge_key",
    "make_complete", "make_complete_bipartite", "make_cycle", "make_graph",
    "make_grid", "make_path", "make_petersen",
    "TreeDecomposition", "TreewidthError", "exact_treewidth",
    "heuristic_decomposition", "validate_decomposition",
    "CorVertex", "PolytopeError", "cor_vertices", "dimension", "evar",
    "map_brute_force", "variables", "vvar",
    "LinearProgram", "LpError", "LpOutcome", "SimplexSolver",
    "parse_lp_file", "solve", "solve_many", "to_lp_file",
    "ExtendedFormulation", "build_ef", "map_dp", "verify_ef",
    "GadgetError", "build_grid_with_gadgets", "replace_clauses",
    "verify_crossover", "verify_projection",
]
