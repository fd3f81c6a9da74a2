"""Monte Carlo experiment harness and cross-validation model comparison."""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace
from typing import Optional, Sequence

import numpy as np

from .dgp import DgpConfig, replication_seed, simulate
from .estimation import (
    COL,
    METHODS,
    MODES,
    ONE_STEP,
    ROW,
    TWO_STEP,
    LagParams,
    estimate_one_step,
    estimate_two_step,
    loading_basis,
)
from .exceptions import ConfigError


@dataclass(frozen=True)
class McCellConfig:
    """One Monte Carlo cell: a DGP, lag settings, and which estimators to tally."""

    dgp: DgpConfig
    params: LagParams = LagParams()
    m: Optional[int] = None
    replications: int = 200
    methods: tuple[str, ...] = METHODS
    modes: tuple[str, ...] = MODES

    def __post_init__(self) -> None:
        if self.replications < 1:
            raise ConfigError(f"replications must be >= 1, got {self.replications}")
        bad = [x for x in self.methods if x not in METHODS]
        if bad or not self.methods:
            raise ConfigError(f"methods must be a non-empty subset of {METHODS}, got {self.methods}")
        bad = [x for x in self.modes if x not in MODES]
        if bad or not self.modes:
            raise ConfigError(f"modes must be a non-empty subset of {MODES}, got {self.modes}")


@dataclass
class McReport:
    """Exact / under / over tallies per (method, mode, side)."""

    replications: int
    counts: dict[tuple[str, str, str], np.ndarray] = field(default_factory=dict)

    def exact_frequency(self, method: str, mode: str, side: str) -> float:
        return float(self.counts[(method, mode, side)][0]) / self.replications

    def frequencies(self, method: str, mode: str, side: str) -> tuple[float, float, float]:
        exact, under, over = self.counts[(method, mode, side)]
        return (
            exact / self.replications,
            under / self.replications,
            over / self.replications,
        )

    def cell(self, method: str, mode: str, side: str) -> str:
        """Frequency with raw under/over counts, formatted ``x(y|z)``."""
        exact, under, over = self.counts[(method, mode, side)]
        return f"{exact / self.replications:.3f}({under}|{over})"


def _tally_one(config: McCellConfig, index: int) -> dict[tuple[str, str, str], np.ndarray]:
    seed = replication_seed(config.dgp.seed, index)
    sim = simulate(replace(config.dgp, seed=seed))
    truths = {ROW: config.dgp.r, COL: config.dgp.c}
    counts: dict[tuple[str, str, str], np.ndarray] = {}
    for mode in config.modes:
        if mode == ONE_STEP:
            result = estimate_one_step(sim.y, config.params)
        else:
            result = estimate_two_step(sim.y, config.params, m=config.m)
        for side, side_est in ((ROW, result.row), (COL, result.col)):
            truth = truths[side]
            for method in config.methods:
                got = side_est.estimate(method)
                slot = 0 if got == truth else (1 if got < truth else 2)
                tally = np.zeros(3, dtype=np.int64)
                tally[slot] = 1
                counts[(method, mode, side)] = tally
    return counts


def run_monte_carlo(config: McCellConfig, workers: int = 1) -> McReport:
    """Run all replications of one cell and tally estimation outcomes.

    Replication ``k`` is simulated under a stream seed derived from the
    cell's master seed and ``k``, so the report is identical for any
    ``workers`` value; tallies are merged in replication order.
    """
    indices = range(1, config.replications + 1)
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            per_rep = list(pool.map(lambda k: _tally_one(config, k), indices))
    else:
        per_rep = [_tally_one(config, k) for k in indices]

    report = McReport(replications=config.replications)
    for counts in per_rep:
        for key, tally in counts.items():
            if key not in report.counts:
                report.counts[key] = np.zeros(3, dtype=np.int64)
            report.counts[key] += tally
    for key, tally in report.counts.items():
        assert int(tally.sum()) == config.replications, key
    return report


def fit_loadings(
    series: np.ndarray, r: int, c: int, params: LagParams = LagParams()
) -> tuple[np.ndarray, np.ndarray]:
    """Orthonormal loading estimates: leading eigenvectors of each side's M matrix."""
    return (
        loading_basis(series, ROW, r, params.h0),
        loading_basis(series, COL, c, params.h0),
    )


def _fold_bounds(n: int, folds: int) -> list[tuple[int, int]]:
    base, extra = divmod(n, folds)
    bounds = []
    start = 0
    for l in range(folds):
        size = base + (1 if l < extra else 0)
        bounds.append((start, start + size))
        start += size
    return bounds


def cv_rss(
    series: np.ndarray,
    r: int,
    c: int,
    folds: int = 5,
    params: LagParams = LagParams(),
    squared: bool = False,
) -> float:
    """Out-of-sample residual score under an (r, c) factor model.

    The series is split into ``folds`` contiguous time blocks (the first
    ``n mod folds`` blocks get one extra observation).  For each block,
    loadings are fitted on the remaining observations and the held-out
    frames are projected onto them; the score accumulates the Frobenius
    norms of the residuals (unsquared by default) divided by the frame
    size ``p * q``.
    """
    series = np.asarray(series, dtype=np.float64)
    n, p, q = series.shape
    if folds < 2:
        raise ConfigError(f"folds must be >= 2, got {folds}")
    if n < 2 * folds:
        raise ConfigError(f"series length {n} too short for {folds} folds")
    if not 1 <= r <= p or not 1 <= c <= q:
        raise ConfigError(f"candidate (r={r}, c={c}) out of range for {p}x{q} frames")

    total = 0.0
    for start, end in _fold_bounds(n, folds):
        train = np.concatenate([series[:start], series[end:]])
        row_basis, col_basis = fit_loadings(train, r, c, params)
        held_out = series[start:end]
        # Full bases are exact identity projectors; skip the roundtrip.
        fitted = held_out
        if r < p:
            fitted = np.matmul(row_basis @ row_basis.T, fitted)
        if c < q:
            fitted = np.matmul(fitted, col_basis @ col_basis.T)
        resid = held_out - fitted
        norms = np.sqrt(np.sum(resid * resid, axis=(1, 2)))
        total += float(np.sum(norms * norms)) if squared else float(np.sum(norms))
    return total / (p * q)


@dataclass(frozen=True)
class CvReport:
    """Cross-validation scores over candidate (r, c) pairs."""

    candidates: tuple[tuple[int, int], ...]
    rss: tuple[float, ...]
    folds: int

    def best(self) -> tuple[int, int]:
        return self.candidates[int(np.argmin(self.rss))]


def cross_validate(
    series: np.ndarray,
    candidates: Sequence[tuple[int, int]],
    folds: int = 5,
    params: LagParams = LagParams(),
    squared: bool = False,
) -> CvReport:
    if not candidates:
        raise ConfigError("candidate list is empty")
    scores = tuple(
        cv_rss(series, r, c, folds=folds, params=params, squared=squared)
        for r, c in candidates
    )
    return CvReport(candidates=tuple(tuple(rc) for rc in candidates), rss=scores, folds=folds)
