"""Spanning-tree 2-modulus and Nash equilibria of the secure broadcast game."""

__version__ = "0.1.0"

from .graph import (
    CapExceededError,
    Graph,
    GraphError,
    SpanningTree,
    count_spanning_trees,
    enumerate_spanning_trees,
    find_bridges,
    min_spanning_tree,
    parse_graph,
)
from .modulus import (
    ModulusResult,
    RoundingError,
    SolverError,
    TreePmf,
    compute_modulus,
    exact_round,
    expected_overlap,
    extract_pmf,
    solve_qp_restricted,
)
from .game import (
    EdgePmf,
    FeasiblePartition,
    GameSolution,
    check_homogeneity,
    evaluate_uniform_strategy,
    extract_partition,
    solve_game,
    solve_game_1mod,
    strength,
    verify_equilibrium,
)
from .oracle import OracleReport, oracle_meo, oracle_report, oracle_strength
