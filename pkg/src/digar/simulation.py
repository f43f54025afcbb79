"""Exact sequential simulation of the process.

The joint law is generated through the conditional distribution of the
innovation given the lagged level,

    xi_t | Y_{t-1} = y  ~  N(rho*sigma_xi*y/V_{t-1}, sigma_xi^2*(1-rho^2)),

with xi_1 ~ N(0, sigma_xi^2) and Y_0 = 0.  This is the unique law
consistent with the marginal/copula definition of the model plus the
Markov property, so simulating it is exact, not approximate.

Reproducibility contract: standard normals come from numpy's PCG64 bit
generator through Generator.standard_normal (the ziggurat method); each
path consumes exactly T variates drawn as one block.  Replication r of a
batch uses the derived seed mix_seed(master_seed, r), a SplitMix64 step,
so batch output is independent of execution order and worker count, and
batch rows are bit-identical to the corresponding single-path calls.
"""

from __future__ import annotations

import itertools
import math
import os
from collections import deque
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Iterator

import numpy as np

from .errors import HorizonZeroError, NonFiniteError, OutOfRangeError
from .model import ModelParams, variance_sequence

__all__ = [
    "SamplePath",
    "BatchSpec",
    "mix_seed",
    "normal_stream",
    "standard_normal",
    "simulate_path",
    "simulate_batch",
    "iter_path_blocks",
]

_MASK64 = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15
_MIX_A = 0xBF58476D1CE4E5B9
_MIX_B = 0x94D049BB133111EB

# Rows per block in batch generation.  Fixed independently of the worker
# count so that chunking never affects the bytes produced.
BLOCK_SIZE = 500


@dataclass(frozen=True)
class SamplePath:
    """One simulated trajectory: levels Y_0..Y_T and innovations xi_1..xi_T.

    seed is the PCG64 seed that produced the path, or None for paths
    loaded from external data.
    """

    params: ModelParams
    y: np.ndarray
    xi: np.ndarray
    seed: int | None

    def __post_init__(self) -> None:
        y = np.asarray(self.y, dtype=float)
        xi = np.asarray(self.xi, dtype=float)
        if y.ndim != 1 or xi.ndim != 1 or y.shape[0] != xi.shape[0] + 1 or xi.shape[0] < 1:
            raise OutOfRangeError(
                f"need len(y) = len(xi)+1 >= 2, got len(y)={y.shape} len(xi)={xi.shape}"
            )
        if not (np.all(np.isfinite(y)) and np.all(np.isfinite(xi))):
            raise NonFiniteError("path contains non-finite values")
        if y[0] != 0.0:
            raise OutOfRangeError(f"y[0] must be exactly 0, got {y[0]!r}")
        resid = y[1:] - (self.params.phi * y[:-1] + xi)
        atol = 1e-12 * max(1.0, float(np.max(np.abs(y))))
        worst = float(np.max(np.abs(resid)))
        if worst > atol:
            raise OutOfRangeError(
                f"path violates y[t] = phi*y[t-1] + xi[t] (max residual {worst:.3e})"
            )
        if self.seed is not None:
            _check_seed(self.seed)
        y = y.copy()
        xi = xi.copy()
        y.setflags(write=False)
        xi.setflags(write=False)
        object.__setattr__(self, "y", y)
        object.__setattr__(self, "xi", xi)

    @property
    def horizon(self) -> int:
        return int(self.xi.shape[0])


@dataclass(frozen=True)
class BatchSpec:
    """Specification of a Monte Carlo batch of independent paths."""

    params: ModelParams
    path_length: int
    replications: int
    master_seed: int

    def __post_init__(self) -> None:
        if self.path_length < 2:
            raise OutOfRangeError(f"path_length must be >= 2, got {self.path_length}")
        if self.replications < 1:
            raise OutOfRangeError(f"replications must be >= 1, got {self.replications}")
        _check_seed(self.master_seed)


def _check_seed(seed: int) -> None:
    if isinstance(seed, bool) or not isinstance(seed, (int, np.integer)):
        raise OutOfRangeError(f"seed must be an integer, got {type(seed).__name__}")
    if not 0 <= int(seed) < 1 << 64:
        raise OutOfRangeError(f"seed must be a 64-bit unsigned integer, got {seed}")


def mix_seed(master_seed: int, r: int) -> int:
    """Derived seed for replication r: SplitMix64 output number r+1 when
    the generator state starts at master_seed.

    The full 64-bit avalanche makes the derived seeds effectively
    independent, and the direct formula (no sequential state walk) is what
    makes batches order- and parallelism-independent.
    """
    _check_seed(master_seed)
    if r < 0:
        raise OutOfRangeError(f"replication index must be >= 0, got {r}")
    z = (master_seed + (r + 1) * _GOLDEN) & _MASK64
    z = ((z ^ (z >> 30)) * _MIX_A) & _MASK64
    z = ((z ^ (z >> 27)) * _MIX_B) & _MASK64
    return (z ^ (z >> 31)) & _MASK64


def normal_stream(seed: int) -> np.random.Generator:
    """Fresh deterministic stream of standard normals for one path."""
    _check_seed(seed)
    return np.random.Generator(np.random.PCG64(seed))


def standard_normal(stream: np.random.Generator) -> float:
    """Draw one N(0,1) variate, advancing the stream deterministically."""
    return float(stream.standard_normal())


def _drive(params: ModelParams, v: np.ndarray, eps: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    # Vectorized over replication rows; every operation is elementwise, so
    # each row's arithmetic is identical whatever the batch size.
    n, T = eps.shape
    y = np.zeros((n, T + 1))
    xi = np.empty((n, T))
    cond_sd = params.sigma_xi * math.sqrt(1.0 - params.rho * params.rho)
    slope = params.rho * params.sigma_xi / v  # conditional-mean slope at each t
    xi[:, 0] = params.sigma_xi * eps[:, 0]
    y[:, 1] = params.phi * y[:, 0] + xi[:, 0]
    for t in range(2, T + 1):
        xi[:, t - 1] = slope[t - 2] * y[:, t - 1] + cond_sd * eps[:, t - 1]
        y[:, t] = params.phi * y[:, t - 1] + xi[:, t - 1]
    return y, xi


def simulate_path(params: ModelParams, T: int, seed: int) -> SamplePath:
    """Simulate one trajectory of length T from the given seed.

    Identical (params, T, seed) yield bit-identical paths, and the result
    is bit-identical to the corresponding row of any batch that derives
    this seed.  Scalar loop; the batch kernel performs the same IEEE
    operations in the same order on whole columns.

    Raises
    ------
    HorizonZeroError
        If T < 1.
    """
    if T < 1:
        raise HorizonZeroError(f"T must be >= 1, got {T}")
    _check_seed(seed)
    eps = normal_stream(seed).standard_normal(T).tolist()
    v = variance_sequence(params, T).values
    phi = params.phi
    sig = params.sigma_xi
    cond_sd = sig * math.sqrt(1.0 - params.rho * params.rho)
    slope = (params.rho * sig / v).tolist()
    y = np.empty(T + 1)
    xi = np.empty(T)
    y[0] = 0.0
    x = sig * eps[0]
    xi[0] = x
    level = phi * 0.0 + x
    y[1] = level
    for t in range(2, T + 1):
        x = slope[t - 2] * level + cond_sd * eps[t - 1]
        xi[t - 1] = x
        level = phi * level + x
        y[t] = level
    return SamplePath(params, y, xi, seed)


def _worker_count() -> int:
    raw = os.environ.get("DIGAR_THREADS", "").strip()
    if raw == "":
        return 1
    try:
        n = int(raw)
    except ValueError:
        raise OutOfRangeError(f"DIGAR_THREADS must be a nonnegative integer, got {raw!r}")
    if n < 0:
        raise OutOfRangeError(f"DIGAR_THREADS must be a nonnegative integer, got {n}")
    if n == 0:
        return os.cpu_count() or 1
    return n


def iter_path_blocks(
    spec: BatchSpec, block_size: int = BLOCK_SIZE
) -> Iterator[tuple[int, np.ndarray, np.ndarray]]:
    """Yield (start_index, y_block, xi_block) in replication order.

    y_block has shape (n, T+1) and xi_block (n, T); row i holds
    replication start_index + i.  The variance sequence is computed once
    per batch.  DIGAR_THREADS > 1 computes blocks concurrently, but block
    boundaries and all arithmetic are fixed, so output bytes never depend
    on the worker count.
    """
    if block_size < 1:
        raise OutOfRangeError(f"block_size must be >= 1, got {block_size}")
    v = variance_sequence(spec.params, spec.path_length).values
    T = spec.path_length

    def make(start: int) -> tuple[np.ndarray, np.ndarray]:
        n = min(block_size, spec.replications - start)
        eps = np.empty((n, T))
        for i in range(n):
            eps[i] = normal_stream(mix_seed(spec.master_seed, start + i)).standard_normal(T)
        return _drive(spec.params, v, eps)

    starts = range(0, spec.replications, block_size)
    workers = _worker_count()
    if workers <= 1 or len(starts) <= 1:
        for start in starts:
            y, xi = make(start)
            yield start, y, xi
        return
    with ThreadPoolExecutor(max_workers=workers) as pool:
        # Bounded look-ahead keeps at most workers+1 blocks in memory.
        it = iter(starts)
        pending: deque[tuple[int, object]] = deque(
            (s, pool.submit(make, s)) for s in itertools.islice(it, workers + 1)
        )
        while pending:
            start, fut = pending.popleft()
            y, xi = fut.result()
            nxt = next(it, None)
            if nxt is not None:
                pending.append((nxt, pool.submit(make, nxt)))
            yield start, y, xi


def simulate_batch(spec: BatchSpec) -> tuple[SamplePath, ...]:
    """Simulate all replications of a batch, in replication order.

    Replication r uses seed mix_seed(spec.master_seed, r) and equals the
    output of simulate_path with that seed bit for bit.
    """
    paths = []
    for start, y, xi in iter_path_blocks(spec):
        for i in range(y.shape[0]):
            paths.append(
                SamplePath(spec.params, y[i], xi[i], mix_seed(spec.master_seed, start + i))
            )
    return tuple(paths)
