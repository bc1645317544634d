"""Submodular maximization under a chance-constrained knapsack.

Greedy solvers (plain, generalized, generalized+max) for monotone
submodular objectives where element weights are uniform around 1 with
per-element dispersion, using the one-sided-Chebyshev surrogate as the
feasibility certificate.
"""

from ._kernels import BACKEND as KERNEL_BACKEND
from .algorithms import GreedyResult, Strategy, TraceStep, run_ga, run_gga, run_ggma
from .chance import (
    ChanceParams,
    Element,
    SelectionState,
    candidate_surrogate,
    is_surrogate_feasible,
    kappa,
    mc_violation_estimate,
    single_violation_prob,
    surrogate_gain,
    surrogate_weight,
)
from .errors import CcsubmodError, GuardError, InputError, ParameterError, ParseError
from .graphio import Graph, degree_dispersions, parse_graph
from .instances import (
    I1Params,
    I2Params,
    Instance,
    build_i1,
    build_i2,
    build_random_instance,
    instance_from_dispersions,
    read_instance,
    write_instance,
)
from .oracles import CoverageOracle, InfluenceOracle, LinearOracle, SubmodularOracle, build_live_edge_samples
from .validation import (
    APPROX_FLOOR,
    AxiomReport,
    ValidationReport,
    brute_force_deterministic_opt,
    brute_force_surrogate_opt,
    check_oracle_axioms,
    check_theorem_bounds,
    run_algorithm,
)

__version__ = "0.1.0"

__all__ = [
    "APPROX_FLOOR",
    "AxiomReport",
    "CcsubmodError",
    "ChanceParams",
    "CoverageOracle",
    "Element",
    "Graph",
    "GreedyResult",
    "GuardError",
    "I1Params",
    "I2Params",
    "InfluenceOracle",
    "InputError",
    "Instance",
    "KERNEL_BACKEND",
    "LinearOracle",
    "ParameterError",
    "ParseError",
    "SelectionState",
    "Strategy",
    "SubmodularOracle",
    "TraceStep",
    "ValidationReport",
    "brute_force_deterministic_opt",
    "brute_force_surrogate_opt",
    "build_i1",
    "build_i2",
    "build_live_edge_samples",
    "build_random_instance",
    "candidate_surrogate",
    "check_oracle_axioms",
    "check_theorem_bounds",
    "degree_dispersions",
    "instance_from_dispersions",
    "is_surrogate_feasible",
    "kappa",
    "mc_violation_estimate",
    "parse_graph",
    "read_instance",
    "run_algorithm",
    "run_ga",
    "run_gga",
    "run_ggma",
    "single_violation_prob",
    "surrogate_gain",
    "surrogate_weight",
    "write_instance",
]
