"""Two-group community detection by profile-likelihood sweeps over spectral orderings."""
from .graph import ComponentLabeling, EdgeListError, Graph, connected_components, degree_sums, parse_edge_list
from .inference import (
    DetectionResult,
    ModelParams,
    SplitStats,
    SweepResult,
    Variant,
    detect,
    full_log_likelihood,
    gamma,
    penalized_cut_objective,
    profile_log_likelihood,
    split_stats,
    sweep,
)
from .oracle import brute_force_max_profile, fraction_correct, min_cut_fixed_sizes
from .sbm import SbmConfig, expected_mean_degree, generate
from .spectral import EigenOptions, EigenResult, EigenSolverError, fiedler_vector, generalized_fiedler_vector

__version__ = "0.1.0"
