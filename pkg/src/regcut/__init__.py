"""Weak regularity decompositions of low threshold-rank graphs and the
approximate max cut / bisection algorithms built on them."""

from .cutnorm import CutWitness, cutnorm_exact, cutnorm_heuristic, oracle_bench
from .graph import (Graph, GraphError, cut_value, load_graph, normalized_adjacency,
                    subset_degree)
from .maxcut import (NoFeasibleSample, SolveRequest, SolveResult, brute_force_best_cut,
                     prepare, solve, solve_bisection, solve_maxcut_sweep)
from .partition import (GuessVector, LpInstance, PartitionScheme, build_lp, build_partition,
                        compute_delta, lp_feasible)
from .regularity import (CutMatrix, Decomposition, decompose, evaluate_W_cut,
                         residual_cutnorm_certificate)
from .spectral import Spectrum, ThresholdData, eig_sym, low_rank_B, threshold_rank

__version__ = "0.1.0"
