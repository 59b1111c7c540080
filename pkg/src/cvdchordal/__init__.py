"""Exact solver for weighted cluster vertex deletion on chordal graphs."""

from .graph import WeightedGraph, bits, mask_of
from .chordal import (CliqueTree, NotChordalError, build_clique_tree, is_chordal,
                      maximal_cliques, recognize_chordal, try_clique_path,
                      validate_clique_tree)
from .chordal_dp import ChordalDp, DpTable, solve_chordal
from .interval_dp import IntervalDpTable, solve_interval
from .solution import ClusterSolution, validate_solution
from .oracle import (BruteOracle, brute_g, brute_psi, build_interaction_graph,
                     check_supermodularity_of_g, check_theorem2_construction)
from .supermodular import (MaximizerResult, SetFunctionOracle, check_supermodular,
                           maximize_supermodular, minimize_submodular_mnp)
from .generators import GenConfig, gen_chordal, gen_interval, gen_weights, generate
from .graphio import ResultReport, parse_graph, serialize_graph

__version__ = "0.1.0"
