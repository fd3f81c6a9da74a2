"""Factor-count estimation for matrix-variate time series.

The estimation pipeline, per side (row / column):

1. lagged autocovariance matrices of the series,
2. their quadratic accumulation ``M = sum_h Sigma(h)' Sigma(h)``, whose
   leading eigenspace estimates the loading space,
3. whiteness statistics of the series projected onto trailing
   eigenvector blocks: a max-type curve ``T_i`` (scaled entrywise max
   over lags) and a sum-type curve ``G_i`` (summed squared Frobenius
   norms over lags), both non-increasing in ``i``,
4. ratio estimators: MR maximizes ``T_i / T_{i+1}``, SR maximizes the
   difference ratio ``(G_i - G_{i+1}) / (G_{i+1} - G_{i+2})``, and ER
   maximizes consecutive eigenvalue ratios of ``M``.

One-step estimation works on the raw series.  Two-step estimation first
projects the series onto the other side's estimated loading space, which
removes the interaction between row and column factor strengths, then
repeats the pipeline on the projected series.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .exceptions import ConfigError, ShapeError, ValidationError
from .linalg import EigenDecomposition, eig_sym

ROW = "row"
COL = "col"
SIDES = (ROW, COL)
METHODS = ("ER", "SR", "MR")
ONE_STEP = "one-step"
TWO_STEP = "two-step"
MODES = (ONE_STEP, TWO_STEP)

ORTHONORMAL_TOL = 1e-8


@dataclass(frozen=True)
class LagParams:
    """Lag horizons and the ratio search bound.

    ``h0`` bounds the lags accumulated into the M matrix, ``K`` bounds
    the lags entering the whiteness statistics.  ``i_max`` caps the
    ratio argmax search; ``None`` resolves to ``dim // 2`` clamped so
    the SR ratio's ``i + 2`` index stays in range.
    """

    h0: int = 2
    K: int = 3
    i_max: Optional[int] = None

    def __post_init__(self) -> None:
        if self.h0 < 1:
            raise ConfigError(f"h0 must be >= 1, got {self.h0}")
        if self.K < 1:
            raise ConfigError(f"K must be >= 1, got {self.K}")
        if self.i_max is not None and self.i_max < 1:
            raise ConfigError(f"i_max must be >= 1, got {self.i_max}")

    def resolve_i_max(self, dim: int) -> int:
        if dim < 3:
            raise ConfigError(f"ratio search needs dimension >= 3, got {dim}")
        if self.i_max is None:
            return max(1, min(dim // 2, dim - 2))
        if self.i_max > dim - 2:
            raise ConfigError(
                f"i_max={self.i_max} exceeds dim - 2 = {dim - 2} (SR needs i + 2)"
            )
        return self.i_max


@dataclass(frozen=True)
class AutocovStack:
    """Sample lagged autocovariances Sigma(1..H) for one side."""

    side: str
    lags: np.ndarray  # (H, dim, dim)
    n: int

    @property
    def depth(self) -> int:
        return self.lags.shape[0]

    @property
    def dim(self) -> int:
        return self.lags.shape[1]


@dataclass(frozen=True)
class WhitenessCurves:
    """Max-type (``t_curve``) and sum-type (``g_curve``) statistics for i = 1..dim."""

    t_curve: np.ndarray
    g_curve: np.ndarray


@dataclass(frozen=True)
class FactorCountResult:
    """One estimator's decision together with the ratio curve behind it."""

    method: str
    estimate: int
    ratio_curve: np.ndarray  # ratio_curve[k] is the ratio at i = k + 1
    side: Optional[str] = None
    mode: Optional[str] = None


@dataclass(frozen=True)
class SideEstimate:
    """Everything one side's pipeline produced: spectrum, curves, decisions."""

    side: str
    mode: str
    eigenvalues: np.ndarray
    curves: WhitenessCurves
    i_max: int
    results: dict[str, FactorCountResult] = field(default_factory=dict)

    def estimate(self, method: str) -> int:
        return self.results[method].estimate


@dataclass(frozen=True)
class EstimationResult:
    mode: str
    row: SideEstimate
    col: SideEstimate

    def counts(self, method: str) -> tuple[int, int]:
        """(row estimate, column estimate) for one method."""
        return self.row.estimate(method), self.col.estimate(method)


def _as_series(series: np.ndarray) -> np.ndarray:
    series = np.asarray(series, dtype=np.float64)
    if series.ndim != 3:
        raise ShapeError(f"series must be (n, p, q), got shape {series.shape}")
    return series


def transpose_series(series: np.ndarray) -> np.ndarray:
    """Swap the row and column dimensions of every frame."""
    return _as_series(series).transpose(0, 2, 1)


def autocov(series: np.ndarray, h: int, side: str = ROW) -> np.ndarray:
    """Lag-``h`` autocovariance, averaged with divisor ``n - h``.

    Row side contracts over columns (``Y_t Y_{t+h}'``, p x p); column
    side contracts over rows (``Y_t' Y_{t+h}``, q x q).
    """
    series = _as_series(series)
    n = series.shape[0]
    if h < 1 or h > n - 2:
        raise ValidationError(f"lag h={h} needs 1 <= h <= n - 2 with n={n}")
    if side not in SIDES:
        raise ConfigError(f"side must be one of {SIDES}, got {side!r}")
    lead, lag = series[: n - h], series[h:]
    if side == ROW:
        acc = np.tensordot(lead, lag, axes=([0, 2], [0, 2]))
    else:
        acc = np.tensordot(lead, lag, axes=([0, 1], [0, 1]))
    return acc / (n - h)


def autocov_stack(series: np.ndarray, side: str, depth: int) -> AutocovStack:
    """Autocovariances for lags 1..``depth`` in one pass."""
    series = _as_series(series)
    lags = np.stack([autocov(series, h, side) for h in range(1, depth + 1)])
    return AutocovStack(side=side, lags=lags, n=series.shape[0])


def m_matrix(stack: AutocovStack, h0: int) -> np.ndarray:
    """Quadratic lag accumulation ``sum_{h<=h0} Sigma(h)' Sigma(h)`` (symmetric PSD)."""
    if h0 < 1 or h0 > stack.depth:
        raise ValidationError(f"h0={h0} exceeds stack depth {stack.depth}")
    dim = stack.dim
    m = np.zeros((dim, dim))
    for h in range(h0):
        s = stack.lags[h]
        m += s.T @ s
    return 0.5 * (m + m.T)


def project_columns(series: np.ndarray, basis: np.ndarray) -> np.ndarray:
    """Right-multiply every frame by an orthonormal-column basis."""
    series = _as_series(series)
    basis = np.asarray(basis, dtype=np.float64)
    if basis.ndim != 2 or basis.shape[0] != series.shape[2]:
        raise ShapeError(
            f"basis shape {basis.shape} does not match frame width {series.shape[2]}"
        )
    gram_err = float(np.max(np.abs(basis.T @ basis - np.eye(basis.shape[1]))))
    if gram_err > ORTHONORMAL_TOL:
        raise ValidationError(
            f"basis columns are not orthonormal (gram deviation {gram_err:.3e})"
        )
    return series @ basis


def _suffix_abs_max(a: np.ndarray) -> np.ndarray:
    """s[i] = max |a[i:, i:]| for every i, by a suffix scan."""
    x = np.abs(a)
    row_sfx = np.maximum.accumulate(x[:, ::-1], axis=1)[:, ::-1]
    col_sfx = np.maximum.accumulate(x[::-1, :], axis=0)[::-1, :]
    contrib = np.diagonal(row_sfx).copy()
    if a.shape[0] > 1:
        below = np.diagonal(col_sfx[1:, :])
        contrib[:-1] = np.maximum(contrib[:-1], below)
    return np.maximum.accumulate(contrib[::-1])[::-1]


def _suffix_sq_sum(a: np.ndarray) -> np.ndarray:
    """s[i] = sum of squares over a[i:, i:] for every i, by a suffix scan."""
    x = a * a
    row_sfx = np.cumsum(x[:, ::-1], axis=1)[:, ::-1]
    contrib = np.diagonal(row_sfx).copy()
    if a.shape[0] > 1:
        col_sfx = np.cumsum(x[::-1, :], axis=0)[::-1, :]
        contrib[:-1] += np.diagonal(col_sfx[1:, :])
    return np.cumsum(contrib[::-1])[::-1]


def whiteness_curves(
    stack: AutocovStack, basis: EigenDecomposition, K: int, n: int
) -> WhitenessCurves:
    """Whiteness statistics of the series projected onto trailing eigenvector blocks.

    With ``A(h) = V' Sigma(h) V`` (``V`` = all eigenvectors), the lag-h
    autocovariance of the projection onto eigenvectors ``i..dim`` is
    exactly the trailing block ``A(h)[i-1:, i-1:]``, so both curves
    come from suffix scans over each ``A(h)`` in O(K dim^2) after the
    projection:

    - ``t_curve[i-1] = max_h sqrt(n) * max|A(h)[i-1:, i-1:]|``
    - ``g_curve[i-1] = sum_h  sum of squares over the same block``
    """
    if K < 1 or K > stack.depth:
        raise ValidationError(f"K={K} exceeds stack depth {stack.depth}")
    v = basis.vectors
    dim = stack.dim
    if v.shape != (dim, dim):
        raise ShapeError(f"basis shape {v.shape} does not match stack dim {dim}")
    t_curve = np.zeros(dim)
    g_curve = np.zeros(dim)
    for h in range(K):
        a = v.T @ stack.lags[h] @ v
        t_curve = np.maximum(t_curve, _suffix_abs_max(a))
        g_curve += _suffix_sq_sum(a)
    t_curve *= np.sqrt(n)
    return WhitenessCurves(t_curve=t_curve, g_curve=g_curve)


def _guarded_ratios(num: np.ndarray, den: np.ndarray) -> np.ndarray:
    """Elementwise num/den over non-negative terms: x/0 -> inf, 0/0 -> 1."""
    out = np.empty(num.shape)
    pos = den > 0.0
    out[pos] = num[pos] / den[pos]
    out[(~pos) & (num > 0.0)] = np.inf
    out[(~pos) & (num <= 0.0)] = 1.0
    return out


def _pick(ratio_curve: np.ndarray) -> int:
    # np.argmax returns the first maximizer, which implements the
    # smallest-index tie-break.
    return int(np.argmax(ratio_curve)) + 1


def mr_estimator(
    curves: WhitenessCurves,
    i_max: int,
    side: Optional[str] = None,
    mode: Optional[str] = None,
) -> FactorCountResult:
    """Max-type ratio estimator: argmax of ``T_i / T_{i+1}``."""
    t = curves.t_curve
    if t.size == 0:
        raise ValidationError("empty whiteness curve")
    if i_max < 1 or i_max > t.size - 1:
        raise ConfigError(f"i_max={i_max} needs 1 <= i_max <= {t.size - 1}")
    ratios = _guarded_ratios(t[:i_max], t[1 : i_max + 1])
    return FactorCountResult("MR", _pick(ratios), ratios, side=side, mode=mode)


def sr_estimator(
    curves: WhitenessCurves,
    i_max: int,
    side: Optional[str] = None,
    mode: Optional[str] = None,
) -> FactorCountResult:
    """Sum-type ratio estimator: argmax of ``(G_i - G_{i+1}) / (G_{i+1} - G_{i+2})``."""
    g = curves.g_curve
    if g.size == 0:
        raise ValidationError("empty whiteness curve")
    if i_max < 1 or i_max > g.size - 2:
        raise ConfigError(f"i_max={i_max} needs 1 <= i_max <= {g.size - 2}")
    # Differences are non-negative by monotonicity; clip rounding residue.
    diffs = np.maximum(g[:-1] - g[1:], 0.0)
    ratios = _guarded_ratios(diffs[:i_max], diffs[1 : i_max + 1])
    return FactorCountResult("SR", _pick(ratios), ratios, side=side, mode=mode)


def er_estimator(
    eigenvalues: np.ndarray,
    i_max: int,
    side: Optional[str] = None,
    mode: Optional[str] = None,
) -> FactorCountResult:
    """Eigenvalue-ratio estimator: argmax of ``lambda_i / lambda_{i+1}``.

    Negative eigenvalues are clamped to zero, and so is anything below
    the rounding floor ``1e-12 * lambda_1``; otherwise rank-deficient
    spectra turn rounding residue into spurious infinite ratios.
    """
    lam = np.asarray(eigenvalues, dtype=np.float64)
    if lam.size == 0:
        raise ValidationError("empty spectrum")
    if i_max < 1 or i_max > lam.size - 1:
        raise ConfigError(f"i_max={i_max} needs 1 <= i_max <= {lam.size - 1}")
    lam = np.maximum(lam, 0.0)
    lam[lam < 1e-12 * lam[0]] = 0.0
    ratios = _guarded_ratios(lam[:i_max], lam[1 : i_max + 1])
    return FactorCountResult("ER", _pick(ratios), ratios, side=side, mode=mode)


def _side_estimate(stack: AutocovStack, params: LagParams, side: str, mode: str) -> SideEstimate:
    m = m_matrix(stack, params.h0)
    decomposition = eig_sym(m)
    curves = whiteness_curves(stack, decomposition, params.K, stack.n)
    i_max = params.resolve_i_max(stack.dim)
    results = {
        "MR": mr_estimator(curves, i_max, side=side, mode=mode),
        "SR": sr_estimator(curves, i_max, side=side, mode=mode),
        "ER": er_estimator(decomposition.values, i_max, side=side, mode=mode),
    }
    return SideEstimate(
        side=side,
        mode=mode,
        eigenvalues=decomposition.values,
        curves=curves,
        i_max=i_max,
        results=results,
    )


def _check_length(n: int, params: LagParams) -> None:
    if n <= max(params.h0, params.K) + 2:
        raise ValidationError(
            f"series length n={n} too short for h0={params.h0}, K={params.K}"
        )


def estimate_one_step(series: np.ndarray, params: LagParams = LagParams()) -> EstimationResult:
    """Run ER/SR/MR on the raw series, both sides."""
    series = _as_series(series)
    _check_length(series.shape[0], params)
    depth = max(params.h0, params.K)
    row = _side_estimate(autocov_stack(series, ROW, depth), params, ROW, ONE_STEP)
    col = _side_estimate(autocov_stack(series, COL, depth), params, COL, ONE_STEP)
    return EstimationResult(mode=ONE_STEP, row=row, col=col)


def loading_basis(series: np.ndarray, side: str, width: int, h0: int) -> np.ndarray:
    """First ``width`` unit eigenvectors of the side's M matrix."""
    series = _as_series(series)
    dim = series.shape[1] if side == ROW else series.shape[2]
    if not 1 <= width <= dim:
        raise ConfigError(f"basis width {width} must lie in [1, {dim}] for side {side}")
    stack = autocov_stack(series, side, h0)
    decomposition = eig_sym(m_matrix(stack, h0))
    return decomposition.vectors[:, :width]


def estimate_two_step(
    series: np.ndarray,
    params: LagParams = LagParams(),
    m: Optional[int] = None,
) -> EstimationResult:
    """Project onto first-pass loading spaces, then re-estimate.

    ``m`` is the projection width (for both sides); ``None`` uses half
    the relevant dimension per side.  The projections use the leading
    eigenvectors of the raw-series M matrices; all scale constants drop
    because every estimator is a ratio.
    """
    series = _as_series(series)
    _check_length(series.shape[0], params)
    n, p, q = series.shape
    if m is not None and not 1 <= m <= min(p, q):
        raise ConfigError(f"projection width m={m} must lie in [1, {min(p, q)}]")
    m_col = m if m is not None else max(1, q // 2)
    m_row = m if m is not None else max(1, p // 2)

    col_basis = loading_basis(series, COL, m_col, params.h0)
    row_basis = loading_basis(series, ROW, m_row, params.h0)
    depth = max(params.h0, params.K)

    projected_rows = project_columns(series, col_basis)  # (n, p, m_col)
    row = _side_estimate(
        autocov_stack(projected_rows, ROW, depth), params, ROW, TWO_STEP
    )
    projected_cols = project_columns(transpose_series(series), row_basis)  # (n, q, m_row)
    col = _side_estimate(
        autocov_stack(projected_cols, ROW, depth), params, COL, TWO_STEP
    )
    return EstimationResult(mode=TWO_STEP, row=row, col=col)


def estimate(
    series: np.ndarray,
    params: LagParams = LagParams(),
    mode: str = TWO_STEP,
    m: Optional[int] = None,
) -> EstimationResult:
    """Dispatch to one- or two-step estimation."""
    if mode == ONE_STEP:
        return estimate_one_step(series, params)
    if mode == TWO_STEP:
        return estimate_two_step(series, params, m=m)
    raise ConfigError(f"mode must be one of {MODES}, got {mode!r}")
