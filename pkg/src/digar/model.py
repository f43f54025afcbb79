"""Model parameters and the deterministic variance structure of the process.

The process is an AR(1) recursion Y_t = phi*Y_{t-1} + xi_t started at
Y_0 = 0, whose innovation xi_t is N(0, sigma_xi^2) marginally but shares a
Gaussian copula with parameter rho with the lagged level Y_{t-1}.  The
standard deviation V_t of Y_t then follows a deterministic recursion with a
closed-form limit vbar; both are implemented here.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import HorizonExceededError, HorizonZeroError, NonFiniteError, OutOfRangeError

__all__ = [
    "ModelParams",
    "VarianceSequence",
    "validate_params",
    "stationary_sd",
    "variance_sequence",
    "variance_sum_sequence",
    "variance_sum_form",
    "vbar_limit",
]


@dataclass(frozen=True)
class ModelParams:
    """Validated parameter triple (phi, rho, sigma_xi).

    Construction enforces |phi| < 1, |rho| < 1 strictly and sigma_xi > 0,
    so every instance in circulation is valid.
    """

    phi: float
    rho: float
    sigma_xi: float

    def __post_init__(self) -> None:
        for name in ("phi", "rho", "sigma_xi"):
            value = getattr(self, name)
            if isinstance(value, bool) or not isinstance(value, (int, float, np.floating, np.integer)):
                raise NonFiniteError(f"{name} must be a real number, got {type(value).__name__}")
            value = float(value)
            if not math.isfinite(value):
                raise NonFiniteError(f"{name} must be finite, got {value!r}")
            object.__setattr__(self, name, value)
        if abs(self.phi) >= 1.0:
            raise OutOfRangeError(f"|phi| < 1 required, got phi={self.phi!r}")
        if abs(self.rho) >= 1.0:
            raise OutOfRangeError(f"|rho| < 1 required, got rho={self.rho!r}")
        if self.sigma_xi <= 0.0:
            raise OutOfRangeError(f"sigma_xi > 0 required, got sigma_xi={self.sigma_xi!r}")


def validate_params(phi: float, rho: float, sigma_xi: float) -> ModelParams:
    """Validate raw reals and pack them into a ModelParams.

    Parameters
    ----------
    phi : float
        Autoregressive coefficient, |phi| < 1 strictly.
    rho : float
        Gaussian copula parameter between the innovation and the lagged
        level, |rho| < 1 strictly.
    sigma_xi : float
        Marginal standard deviation of the innovation, > 0.

    Raises
    ------
    NonFiniteError
        If any input is NaN or infinite.
    OutOfRangeError
        If any constraint is violated.
    """
    return ModelParams(phi, rho, sigma_xi)


@dataclass(frozen=True)
class VarianceSequence:
    """The deterministic sequence V_1..V_T of standard deviations of Y_t."""

    params: ModelParams
    values: np.ndarray
    horizon: int

    def __post_init__(self) -> None:
        values = np.asarray(self.values, dtype=float)
        if self.horizon < 1:
            raise HorizonZeroError(f"horizon must be >= 1, got {self.horizon}")
        if values.shape != (self.horizon,):
            raise OutOfRangeError(
                f"values must have shape ({self.horizon},), got {values.shape}"
            )
        if not np.all(np.isfinite(values)):
            raise NonFiniteError("variance sequence contains non-finite entries")
        if np.any(values <= 0.0):
            raise OutOfRangeError("every V_t must be positive")
        if values[0] != self.params.sigma_xi:
            raise OutOfRangeError("V_1 must equal sigma_xi exactly")
        values = values.copy()
        values.setflags(write=False)
        object.__setattr__(self, "values", values)

    def value_at(self, t: int) -> float:
        """Return V_t for 1 <= t <= horizon."""
        if not 1 <= t <= self.horizon:
            raise HorizonExceededError(f"t={t} outside 1..{self.horizon}")
        return float(self.values[t - 1])


def stationary_sd(params: ModelParams) -> float:
    """Standard deviation sigma_xi/sqrt(1 - phi^2) of the classical AR(1).

    This is the rho = 0 value of the variance limit; with dependence it
    serves as the reference level the limit is compared against.
    """
    return params.sigma_xi / math.sqrt(1.0 - params.phi * params.phi)


def variance_sequence(params: ModelParams, T: int) -> VarianceSequence:
    """Compute V_1..V_T by the one-step recursion.

    Uses V_t^2 = phi^2*V_{t-1}^2 + 2*phi*rho*sigma_xi*V_{t-1} + sigma_xi^2
    with V_1 = sigma_xi, which is Var(phi*Y_{t-1} + xi_t) with
    Cov(Y_{t-1}, xi_t) = rho*sigma_xi*V_{t-1}.  O(T) cost; the expanded
    sum form in variance_sum_sequence is the independent cross-check.

    Parameters
    ----------
    params : ModelParams
    T : int
        Number of entries, >= 1.

    Raises
    ------
    HorizonZeroError
        If T < 1.
    """
    if T < 1:
        raise HorizonZeroError(f"T must be >= 1, got {T}")
    a = params.phi * params.phi
    b = 2.0 * params.phi * params.rho * params.sigma_xi
    c = params.sigma_xi * params.sigma_xi
    out = np.empty(T)
    v = params.sigma_xi
    out[0] = v
    for t in range(1, T):
        v = math.sqrt(a * v * v + b * v + c)
        out[t] = v
    return VarianceSequence(params, out, T)


def variance_sum_sequence(params: ModelParams, T: int) -> np.ndarray:
    """Compute V_1..V_T by the expanded sum formula, O(T^2).

    V_t^2 = sigma^2*(phi^{2(t-1)} + sum_{i=1}^{t-1} phi^{2(i-1)})
            + 2*rho*sigma*sum_{i=1}^{t-1} phi^{2i-1}*V_{t-i},
    where the lower-index V values are themselves produced by this same
    formula, so the route never touches the one-step recursion.
    """
    if T < 1:
        raise HorizonZeroError(f"T must be >= 1, got {T}")
    phi = params.phi
    sig = params.sigma_xi
    even = (phi * phi) ** np.arange(T)  # phi^{2(i-1)} for i = 1..T
    odd = phi * even  # phi^{2i-1}
    prefix = np.cumsum(even)
    sig2 = sig * sig
    two_rho_sig = 2.0 * params.rho * sig
    vs = np.empty(T)
    vs[0] = sig
    for s in range(2, T + 1):
        head = even[s - 1] + prefix[s - 2]
        cross = float(np.dot(odd[: s - 1], vs[s - 2 :: -1]))
        vs[s - 1] = math.sqrt(sig2 * head + two_rho_sig * cross)
    return vs


def variance_sum_form(params: ModelParams, t: int) -> float:
    """Return V_t computed purely by the expanded sum formula."""
    return float(variance_sum_sequence(params, t)[-1])


def vbar_limit(params: ModelParams) -> float:
    """Closed-form limit vbar of V_t as t grows.

    vbar = sigma_xi*(rho*phi + sqrt(rho^2*phi^2 + 1 - phi^2))/(1 - phi^2),
    the positive root of (1-phi^2)*v^2 - 2*rho*phi*sigma_xi*v - sigma_xi^2,
    i.e. the fixed point of the one-step variance recursion.
    """
    phi = params.phi
    rho = params.rho
    disc = rho * rho * phi * phi + 1.0 - phi * phi
    return params.sigma_xi * (rho * phi + math.sqrt(disc)) / (1.0 - phi * phi)
