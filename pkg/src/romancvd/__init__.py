"""Exact Roman domination and independent Roman domination solvers
parameterized by a cluster vertex deletion set."""

from .cvd import find_cvd, verify_cvd
from .generators import gen_cluster_plus_k, hitting_set_to_rd_instance, make_rng
from .graph import (ClusterDecomposition, Graph, NotClusterError, ParseError, RomanLabeling,
                    clique_components, find_induced_p3, is_cluster, parse_graph, parse_vertex_set,
                    validate_irdf, validate_rdf)
from .ird import solve_ird
from .oracle import (OracleRefused, brute_force_hitting_set, brute_force_iscp, brute_force_ird,
                     brute_force_rd, brute_force_scp)
from .pipeline import InvariantError, Solution
from .rd import solve_rd
from .scp import DpSolution, ScpInstance, solve_iscp, solve_scp

__all__ = [
    "ClusterDecomposition", "DpSolution", "Graph", "InvariantError", "NotClusterError",
    "OracleRefused", "ParseError", "RomanLabeling", "ScpInstance", "Solution",
    "brute_force_hitting_set", "brute_force_iscp", "brute_force_ird", "brute_force_rd",
    "brute_force_scp", "clique_components", "find_cvd", "find_induced_p3",
    "gen_cluster_plus_k", "hitting_set_to_rd_instance", "is_cluster", "make_rng",
    "parse_graph", "parse_vertex_set", "solve_ird", "solve_iscp", "solve_rd", "solve_scp",
    "validate_irdf", "validate_rdf", "verify_cvd",
]

__version__ = "0.1.0"
