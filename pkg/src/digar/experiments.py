"""Monte Carlo experiments and figure-data exports.

The asymptotic claims about the process (slope limit tau_bar, corrected
estimator consistency and its sqrt(T) normal limit, level and innovation
autocorrelation limits) are checked here at finite (T, R) with explicit
Monte Carlo standard errors.  Moments of non-stationary quantities are
always computed cross-sectionally: across independent replications at a
fixed time index, never along a single path.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .dependence import delta_limit, eta_bar, ols_bias, tau_bar
from .errors import (
    DegenerateDenominatorError,
    HorizonExceededError,
    NonFiniteError,
    OutOfRangeError,
)
from .model import ModelParams, validate_params, variance_sequence, vbar_limit
from .simulation import BatchSpec, iter_path_blocks

__all__ = [
    "Moments",
    "ExperimentSummary",
    "CurveTable",
    "AcfRow",
    "AcfTable",
    "DEFAULT_PHI_GRID",
    "DEFAULT_RHO_GRID",
    "normal_cdf",
    "ks_distance",
    "run_consistency_experiment",
    "run_clt_experiment",
    "empirical_acf_experiment",
    "vbar_curve",
    "bias_curve",
]

# Grid behind the exported curve tables: six phi values by seven rho values
# at unit innovation scale.
DEFAULT_PHI_GRID = (-0.9, -0.6, -0.3, 0.3, 0.6, 0.9)
DEFAULT_RHO_GRID = (-0.9, -0.6, -0.3, 0.0, 0.3, 0.6, 0.9)

_SQRT2 = math.sqrt(2.0)


@dataclass(frozen=True)
class Moments:
    """Mean, sample variance, skewness and excess kurtosis of a sample.

    Variance uses the unbiased (n-1) denominator; skewness and excess
    kurtosis are the plain method-of-moments ratios.
    """

    mean: float
    variance: float
    skewness: float
    excess_kurtosis: float


@dataclass(frozen=True)
class ExperimentSummary:
    """Aggregated Monte Carlo statistics for one estimator and target."""

    spec: BatchSpec
    target: float
    estimate_mean: float
    estimate_sd: float
    mc_standard_error: float
    standardized_moments: Moments
    ks_distance: float

    def __post_init__(self) -> None:
        if self.mc_standard_error != self.estimate_sd / math.sqrt(self.spec.replications):
            raise OutOfRangeError("mc_standard_error must equal estimate_sd/sqrt(R)")
        if not 0.0 <= self.ks_distance <= 1.0:
            raise OutOfRangeError(f"ks_distance must lie in [0,1], got {self.ks_distance!r}")

    def as_tree(self) -> dict:
        """JSON-compatible tree with all spec fields and statistics."""
        m = self.standardized_moments
        return {
            "spec": _spec_tree(self.spec),
            "target": self.target,
            "estimate_mean": self.estimate_mean,
            "estimate_sd": self.estimate_sd,
            "mc_standard_error": self.mc_standard_error,
            "standardized_moments": {
                "mean": m.mean,
                "variance": m.variance,
                "skewness": m.skewness,
                "excess_kurtosis": m.excess_kurtosis,
            },
            "ks_distance": self.ks_distance,
        }


@dataclass(frozen=True)
class CurveTable:
    """Rows (phi, rho, value) of one exported curve, vbar or bias."""

    kind: str
    rows: tuple[tuple[float, float, float], ...]

    def __post_init__(self) -> None:
        if self.kind not in ("vbar", "bias"):
            raise OutOfRangeError(f"kind must be 'vbar' or 'bias', got {self.kind!r}")
        for phi, rho, _ in self.rows:
            if abs(phi) >= 1.0 or abs(rho) >= 1.0:
                raise OutOfRangeError(f"grid point (phi={phi!r}, rho={rho!r}) out of range")


@dataclass(frozen=True)
class AcfRow:
    """Empirical vs theoretical autocorrelations at one lag k."""

    k: int
    y_empirical: float
    y_theory: float
    y_mc_se: float
    xi_empirical: float
    xi_theory: float
    xi_mc_se: float


@dataclass(frozen=True)
class AcfTable:
    """Cross-sectional autocorrelation comparison at a fixed time t_obs."""

    spec: BatchSpec
    t_obs: int
    rows: tuple[AcfRow, ...]

    def as_tree(self) -> dict:
        return {
            "spec": _spec_tree(self.spec),
            "t_obs": self.t_obs,
            "rows": [
                {
                    "k": r.k,
                    "y_empirical": r.y_empirical,
                    "y_theory": r.y_theory,
                    "y_mc_se": r.y_mc_se,
                    "xi_empirical": r.xi_empirical,
                    "xi_theory": r.xi_theory,
                    "xi_mc_se": r.xi_mc_se,
                }
                for r in self.rows
            ],
        }


def _spec_tree(spec: BatchSpec) -> dict:
    return {
        "phi": spec.params.phi,
        "rho": spec.params.rho,
        "sigma_xi": spec.params.sigma_xi,
        "path_length": spec.path_length,
        "replications": spec.replications,
        "master_seed": spec.master_seed,
    }


def normal_cdf(x: float) -> float:
    """Standard normal CDF via the complementary error function.

    Accurate to well below 1e-12 absolute over the whole real line.
    """
    if not math.isfinite(x):
        raise NonFiniteError(f"x must be finite, got {x!r}")
    return 0.5 * math.erfc(-x / _SQRT2)


def ks_distance(sample: Sequence[float], cdf: Callable[[float], float] | None = None) -> float:
    """Kolmogorov-Smirnov distance of a sample to a continuous CDF.

    Defaults to the standard normal CDF.  Uses the two one-sided suprema
    over the sorted sample, exact for continuous reference distributions.
    """
    x = np.sort(np.asarray(sample, dtype=float))
    n = x.size
    if n < 1:
        raise OutOfRangeError("sample must be nonempty")
    f = normal_cdf if cdf is None else cdf
    fx = np.array([f(float(v)) for v in x])
    grid = np.arange(1, n + 1) / n
    d_plus = float(np.max(grid - fx))
    d_minus = float(np.max(fx - (grid - 1.0 / n)))
    return max(d_plus, d_minus, 0.0)


def _block_estimates(
    params: ModelParams, v: np.ndarray, y_block: np.ndarray
) -> tuple[np.ndarray, np.ndarray]:
    # Row-wise plain and corrected slope estimates for a block of paths.
    lag = y_block[:, 1:-1]
    lead = y_block[:, 2:]
    den = np.einsum("ij,ij->i", lag, lag)
    if np.any(den <= 0.0):
        raise DegenerateDenominatorError("a replication produced an all-zero lag sequence")
    phi_hat = np.einsum("ij,ij->i", lead, lag) / den
    weighted = np.einsum("ij,ij->i", lag / v[:-1], lag)  # sum of Y_{t-1}^2/V_{t-1}
    correction = params.rho * params.sigma_xi * weighted / den
    return phi_hat, phi_hat - correction


def _moments(sample: np.ndarray) -> Moments:
    mean = float(np.mean(sample))
    centered = sample - mean
    m2 = float(np.mean(centered**2))
    m3 = float(np.mean(centered**3))
    m4 = float(np.mean(centered**4))
    if m2 <= 0.0:
        raise DegenerateDenominatorError("sample has zero variance")
    return Moments(
        mean=mean,
        variance=float(np.var(sample, ddof=1)),
        skewness=m3 / m2**1.5,
        excess_kurtosis=m4 / (m2 * m2) - 3.0,
    )


def _summary(
    spec: BatchSpec, target: float, sample: np.ndarray, statistic: np.ndarray | None = None
) -> ExperimentSummary:
    sd = float(np.std(sample, ddof=1))
    if sd <= 0.0:
        raise DegenerateDenominatorError("estimate sample has zero variance")
    if statistic is None:
        statistic = (sample - np.mean(sample)) / sd
    return ExperimentSummary(
        spec=spec,
        target=float(target),
        estimate_mean=float(np.mean(sample)),
        estimate_sd=sd,
        mc_standard_error=sd / math.sqrt(spec.replications),
        standardized_moments=_moments(statistic),
        ks_distance=ks_distance(statistic),
    )


def _collect_estimates(spec: BatchSpec) -> tuple[np.ndarray, np.ndarray]:
    v = variance_sequence(spec.params, spec.path_length).values
    hats = np.empty(spec.replications)
    tildes = np.empty(spec.replications)
    for start, y, _ in iter_path_blocks(spec):
        h, td = _block_estimates(spec.params, v, y)
        hats[start : start + h.size] = h
        tildes[start : start + td.size] = td
    return hats, tildes


def run_consistency_experiment(spec: BatchSpec) -> tuple[ExperimentSummary, ExperimentSummary]:
    """Estimate both slopes on R independent paths of length T.

    Returns one summary for the plain estimator (target tau_bar, which it
    converges to) and one for the corrected estimator (target phi).  The
    standardized-moment and KS fields describe the z-scored estimate
    sample, a shape check of approximate normality.

    Requires R >= 100 and T >= 100.
    """
    if spec.replications < 100:
        raise OutOfRangeError(f"need R >= 100, got {spec.replications}")
    if spec.path_length < 100:
        raise OutOfRangeError(f"need T >= 100, got {spec.path_length}")
    hats, tildes = _collect_estimates(spec)
    return (
        _summary(spec, tau_bar(spec.params), hats),
        _summary(spec, spec.params.phi, tildes),
    )


def run_clt_experiment(spec: BatchSpec, true_phi: float | None = None) -> ExperimentSummary:
    """Distributional check of sqrt(T)*(phi_tilde - true_phi)/eta_bar.

    The summary's estimate fields describe the phi_tilde sample; the
    standardized moments and the KS distance describe the studentized
    statistic, which should approach N(0,1).  true_phi defaults to the
    generating coefficient.

    Requires R >= 1000 and T >= 5000.
    """
    if spec.replications < 1000:
        raise OutOfRangeError(f"need R >= 1000, got {spec.replications}")
    if spec.path_length < 5000:
        raise OutOfRangeError(f"need T >= 5000, got {spec.path_length}")
    truth = spec.params.phi if true_phi is None else float(true_phi)
    if not math.isfinite(truth):
        raise OutOfRangeError(f"true_phi must be finite, got {true_phi!r}")
    _, tildes = _collect_estimates(spec)
    stats = math.sqrt(spec.path_length) * (tildes - truth) / eta_bar(spec.params)
    return _summary(spec, truth, tildes, statistic=stats)


def _corr(a: np.ndarray, b: np.ndarray) -> float:
    return float(np.corrcoef(a, b)[0, 1])


def empirical_acf_experiment(spec: BatchSpec, t_obs: int, k_max: int) -> AcfTable:
    """Cross-sectional autocorrelations of levels and innovations.

    For each lag k = 1..k_max, correlates (Y_t, Y_{t+k}) and
    (xi_t, xi_{t+k}) across replications at t = t_obs, next to the
    theoretical limits tau_bar^k and delta_limit(k).  The MC standard
    errors use the (1-r^2)/sqrt(R-3) approximation for a correlation
    estimate.

    Requires t_obs >= 200 (past the variance burn-in for the admissible
    parameter range), t_obs + k_max <= T, and R >= 30.
    """
    if t_obs < 200:
        raise OutOfRangeError(f"need t_obs >= 200, got {t_obs}")
    if k_max < 1:
        raise OutOfRangeError(f"need k_max >= 1, got {k_max}")
    if t_obs + k_max > spec.path_length:
        raise HorizonExceededError(
            f"t_obs+k_max={t_obs + k_max} exceeds path length {spec.path_length}"
        )
    if spec.replications < 30:
        raise OutOfRangeError(f"need R >= 30, got {spec.replications}")
    n_cols = k_max + 1
    ys = np.empty((spec.replications, n_cols))
    xs = np.empty((spec.replications, n_cols))
    for start, y, xi in iter_path_blocks(spec):
        stop = start + y.shape[0]
        ys[start:stop] = y[:, t_obs : t_obs + n_cols]
        xs[start:stop] = xi[:, t_obs - 1 : t_obs - 1 + n_cols]
    tb = tau_bar(spec.params)
    se_scale = 1.0 / math.sqrt(spec.replications - 3)
    rows = []
    for k in range(1, k_max + 1):
        ry = _corr(ys[:, 0], ys[:, k])
        rx = _corr(xs[:, 0], xs[:, k])
        rows.append(
            AcfRow(
                k=k,
                y_empirical=ry,
                y_theory=tb**k,
                y_mc_se=(1.0 - ry * ry) * se_scale,
                xi_empirical=rx,
                xi_theory=delta_limit(spec.params, k),
                xi_mc_se=(1.0 - rx * rx) * se_scale,
            )
        )
    return AcfTable(spec=spec, t_obs=t_obs, rows=tuple(rows))


def vbar_curve(
    phi_list: Sequence[float], rho_grid: Sequence[float], sigma_xi: float
) -> CurveTable:
    """Table of the variance limit vbar over a (phi, rho) grid."""
    rows = []
    for phi in phi_list:
        for rho in rho_grid:
            p = validate_params(phi, rho, sigma_xi)
            rows.append((p.phi, p.rho, vbar_limit(p)))
    return CurveTable(kind="vbar", rows=tuple(rows))


def bias_curve(
    phi_list: Sequence[float], rho_grid: Sequence[float], sigma_xi: float
) -> CurveTable:
    """Table of the asymptotic slope bias rho*sigma_xi/vbar over a grid."""
    rows = []
    for phi in phi_list:
        for rho in rho_grid:
            p = validate_params(phi, rho, sigma_xi)
            rows.append((p.phi, p.rho, ols_bias(p)))
    return CurveTable(kind="bias", rows=tuple(rows))
