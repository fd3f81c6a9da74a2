"""Synthetic matrix-variate series generation.

The generator draws a two-way factor model ``Y_t = R F_t C' + E_t``:
AR(1) factor entries with randomized coefficient signs, uniform loadings
scaled for a chosen factor strength, and Gaussian noise that is either
entrywise independent or equicorrelated on both sides.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from ._accel import HAS_NUMBA, USE_NUMBA
from .exceptions import ConfigError
from .linalg import eig_sym

NOISE_CASES = ("identity", "equicorrelated", "none")
EQUICORRELATION = 0.1


@dataclass(frozen=True)
class DgpConfig:
    """Parameters of one simulated series.

    ``delta`` and ``omega`` are the factor-strength exponents: loading
    matrices are normalized so the squared spectral norms equal
    ``p**(1-delta)`` and ``q**(1-omega)`` exactly, so strength decays as
    the exponents grow from 0 (strong) to 1.  ``r = c = 0`` yields a
    pure-noise series.
    """

    p: int
    q: int
    r: int
    c: int
    n: int
    a: float = 0.5
    delta: float = 0.0
    omega: float = 0.0
    noise_case: str = "identity"
    seed: int = 0

    def __post_init__(self) -> None:
        if self.p < 1:
            raise ConfigError(f"p must be >= 1, got {self.p}")
        if self.q < 1:
            raise ConfigError(f"q must be >= 1, got {self.q}")
        if not 0 <= self.r <= self.p:
            raise ConfigError(f"r must satisfy 0 <= r <= p, got r={self.r}")
        if not 0 <= self.c <= self.q:
            raise ConfigError(f"c must satisfy 0 <= c <= q, got c={self.c}")
        if self.n < 3:
            raise ConfigError(f"n must be >= 3, got {self.n}")
        if not 0.0 <= self.a < 1.0:
            raise ConfigError(f"a must lie in [0, 1), got {self.a}")
        if not 0.0 <= self.delta <= 1.0:
            raise ConfigError(f"delta must lie in [0, 1], got {self.delta}")
        if not 0.0 <= self.omega <= 1.0:
            raise ConfigError(f"omega must lie in [0, 1], got {self.omega}")
        if self.noise_case not in NOISE_CASES:
            raise ConfigError(
                f"noise_case must be one of {NOISE_CASES}, got {self.noise_case!r}"
            )
        if not 0 <= self.seed < 2**64:
            raise ConfigError(f"seed must be a 64-bit unsigned integer, got {self.seed}")


class SimulationResult(NamedTuple):
    """Simulated series plus the ground truth behind it."""

    y: np.ndarray  # (n, p, q)
    row_loadings: np.ndarray  # (p, r)
    col_loadings: np.ndarray  # (q, c)
    factors: np.ndarray  # (n, r, c)


def _ar1_path_numpy(coeffs: np.ndarray, start: np.ndarray, shocks: np.ndarray) -> np.ndarray:
    n = shocks.shape[0]
    out = np.empty_like(shocks)
    prev = start
    for t in range(n):
        prev = coeffs * prev + shocks[t]
        out[t] = prev
    return out


if HAS_NUMBA:
    from numba import njit

    @njit(cache=True)
    def _ar1_path_numba(coeffs, start, shocks):  # pragma: no cover - jit body
        n, r, c = shocks.shape
        out = np.empty((n, r, c))
        prev = start.copy()
        for t in range(n):
            for i in range(r):
                for j in range(c):
                    prev[i, j] = coeffs[i, j] * prev[i, j] + shocks[t, i, j]
                    out[t, i, j] = prev[i, j]
        return out

else:  # pragma: no cover - numba is a declared dependency
    _ar1_path_numba = None


def _ar1_path(coeffs: np.ndarray, start: np.ndarray, shocks: np.ndarray) -> np.ndarray:
    if USE_NUMBA:
        return _ar1_path_numba(coeffs, start, shocks)
    return _ar1_path_numpy(coeffs, start, shocks)


def equicorrelated_sqrt(dim: int, rho: float = EQUICORRELATION) -> np.ndarray:
    """Symmetric square root of the equicorrelation matrix (1-rho)I + rho*J."""
    sigma = np.full((dim, dim), rho)
    np.fill_diagonal(sigma, 1.0)
    values, vectors = eig_sym(sigma)
    return (vectors * np.sqrt(np.maximum(values, 0.0))) @ vectors.T


def replication_seed(master_seed: int, index: int) -> int:
    """Deterministic 64-bit stream seed for replication ``index`` under a master seed."""
    ss = np.random.SeedSequence(entropy=[master_seed, index])
    return int(ss.generate_state(1, np.uint64)[0])


def _draw_loadings(rng: np.random.Generator, dim: int, count: int, exponent: float) -> np.ndarray:
    """Loading matrix with squared spectral norm exactly ``dim**(1-exponent)``.

    Drawn as Uniform(-1, 1) entries, orthonormalized, then scaled; the
    orthonormalization pins the strength constant at 1 so the exponent
    alone controls how the factor signal compares to unit noise.
    """
    raw = rng.uniform(-1.0, 1.0, size=(dim, count))
    basis = np.linalg.qr(raw)[0] if count else raw
    return basis * dim ** ((1.0 - exponent) / 2.0)


def simulate(config: DgpConfig) -> SimulationResult:
    """Draw one series from the two-way factor model.

    Factor entries follow AR(1) recursions ``F[t] = a_ij F[t-1] + eps``
    with ``a_ij = +-a`` (sign fair-coin per entry) and stationary
    ``N(0, 1/(1-a^2))`` initial values.  Identical seeds yield
    bit-identical output.
    """
    rng = np.random.default_rng(config.seed)
    p, q, r, c, n = config.p, config.q, config.r, config.c, config.n

    signs = rng.integers(0, 2, size=(r, c)) * 2 - 1
    coeffs = signs * config.a
    stat_sd = 1.0 / math.sqrt(1.0 - config.a * config.a)
    start = rng.standard_normal((r, c)) * stat_sd
    shocks = rng.standard_normal((n, r, c))
    factors = _ar1_path(coeffs.astype(np.float64), start, shocks)

    row_loadings = _draw_loadings(rng, p, r, config.delta)
    col_loadings = _draw_loadings(rng, q, c, config.omega)

    if config.noise_case == "none":
        noise = np.zeros((n, p, q))
    else:
        noise = rng.standard_normal((n, p, q))
        if config.noise_case == "equicorrelated":
            left = equicorrelated_sqrt(p)
            right = equicorrelated_sqrt(q)
            noise = left @ noise @ right

    y = row_loadings @ factors @ col_loadings.T + noise
    return SimulationResult(
        y=y,
        row_loadings=row_loadings,
        col_loadings=col_loadings,
        factors=factors,
    )
