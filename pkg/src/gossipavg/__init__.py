"""Gossip averaging on random geometric networks.

Simulates randomized, greedy, and sample-greedy pairwise averaging,
evaluates the matching closed-form convergence quantities, and drives
seeded Monte-Carlo sweeps with CSV output.
"""

from .analysis import (
    BoundReport,
    EpsilonTimeEstimate,
    bound_report,
    empirical_eps_time,
    eta,
    gamma,
    gg_expected_reduction,
    lambda2,
    monotonicity_check,
    rg_eps_time_bound,
    rg_expected_reduction,
    rg_mean_update_matrix,
    sgg_expected_reduction,
    sgg_expected_reduction_bruteforce,
)
from .engine import (
    ALGORITHMS,
    GREEDY,
    RANDOMIZED,
    SAMPLE_GREEDY,
    StateVector,
    StepRecord,
    Trace,
    greedy_step,
    make_state,
    pairwise_average,
    randomized_step,
    run,
    sample_greedy_step,
)
from .fields import (
    FieldSpec,
    gaussian_bumps,
    linear_field,
    make_field,
    random_normal_field,
    spike_field,
)
from .graph import (
    Graph,
    GraphConnectivityError,
    complete_graph,
    connection_radius,
    degree,
    from_edges,
    generate_random_geometric,
    is_connected,
    load_json,
    neighbors,
    save_json,
)
from .harness import (
    ConfigError,
    ExperimentConfig,
    analyze,
    load_config,
    run_experiment,
    run_one,
    sweep_d,
    sweep_p,
)

__version__ = "0.1.0"

__all__ = [
    "ALGORITHMS",
    "BoundReport",
    "ConfigError",
    "EpsilonTimeEstimate",
    "ExperimentConfig",
    "FieldSpec",
    "GREEDY",
    "Graph",
    "GraphConnectivityError",
    "RANDOMIZED",
    "SAMPLE_GREEDY",
    "StateVector",
    "StepRecord",
    "Trace",
    "analyze",
    "bound_report",
    "complete_graph",
    "connection_radius",
    "degree",
    "empirical_eps_time",
    "eta",
    "from_edges",
    "gamma",
    "gaussian_bumps",
    "generate_random_geometric",
    "gg_expected_reduction",
    "greedy_step",
    "is_connected",
    "lambda2",
    "linear_field",
    "load_config",
    "load_json",
    "make_field",
    "make_state",
    "monotonicity_check",
    "neighbors",
    "pairwise_average",
    "random_normal_field",
    "randomized_step",
    "rg_eps_time_bound",
    "rg_expected_reduction",
    "rg_mean_update_matrix",
    "run",
    "run_experiment",
    "run_one",
    "sample_greedy_step",
    "save_json",
    "sgg_expected_reduction",
    "sgg_expected_reduction_bruteforce",
    "spike_field",
    "sweep_d",
    "sweep_p",
]
