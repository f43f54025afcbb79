"""Simulation and estimation toolkit for the Gaussian AR(1) process whose
innovations are linked to the lagged level through a Gaussian copula."""

from .dependence import (
    DependenceProfile,
    delta_limit,
    dependence_profile,
    eta_bar,
    mixing_decay_bound,
    ols_bias,
    sigma_bar_sq,
    tau_bar,
    tau_lag_k,
    tau_one_step,
)
from .errors import (
    DegenerateDenominatorError,
    DigarError,
    HorizonExceededError,
    HorizonMismatchError,
    HorizonTooShortError,
    HorizonZeroError,
    NonFiniteError,
    OutOfRangeError,
)
from .estimation import (
    EstimateResult,
    MartingaleDiagnostics,
    correction_term,
    infeasible_estimate,
    ols_estimate,
    studentized_statistic,
    z_series,
)
from .experiments import (
    DEFAULT_PHI_GRID,
    DEFAULT_RHO_GRID,
    AcfRow,
    AcfTable,
    CurveTable,
    ExperimentSummary,
    Moments,
    bias_curve,
    empirical_acf_experiment,
    ks_distance,
    normal_cdf,
    run_clt_experiment,
    run_consistency_experiment,
    vbar_curve,
)
from .model import (
    ModelParams,
    VarianceSequence,
    stationary_sd,
    validate_params,
    variance_sequence,
    variance_sum_form,
    variance_sum_sequence,
    vbar_limit,
)
from .simulation import (
    BLOCK_SIZE,
    BatchSpec,
    SamplePath,
    iter_path_blocks,
    mix_seed,
    normal_stream,
    simulate_batch,
    simulate_path,
    standard_normal,
)

__version__ = "0.1.0"

__all__ = [
    "AcfRow",
    "AcfTable",
    "BLOCK_SIZE",
    "BatchSpec",
    "CurveTable",
    "DEFAULT_PHI_GRID",
    "DEFAULT_RHO_GRID",
    "DegenerateDenominatorError",
    "DependenceProfile",
    "DigarError",
    "EstimateResult",
    "ExperimentSummary",
    "HorizonExceededError",
    "HorizonMismatchError",
    "HorizonTooShortError",
    "HorizonZeroError",
    "MartingaleDiagnostics",
    "ModelParams",
    "Moments",
    "NonFiniteError",
    "OutOfRangeError",
    "SamplePath",
    "VarianceSequence",
    "bias_curve",
    "correction_term",
    "delta_limit",
    "dependence_profile",
    "empirical_acf_experiment",
    "eta_bar",
    "infeasible_estimate",
    "iter_path_blocks",
    "ks_distance",
    "mix_seed",
    "mixing_decay_bound",
    "normal_cdf",
    "normal_stream",
    "ols_bias",
    "ols_estimate",
    "run_clt_experiment",
    "run_consistency_experiment",
    "sigma_bar_sq",
    "simulate_batch",
    "simulate_path",
    "standard_normal",
    "stationary_sd",
    "studentized_statistic",
    "tau_bar",
    "tau_lag_k",
    "tau_one_step",
    "validate_params",
    "variance_sequence",
    "variance_sum_form",
    "variance_sum_sequence",
    "vbar_curve",
    "vbar_limit",
    "z_series",
]
