"""Dense real matrix arithmetic and a deterministic symmetric eigensolver.

All data lives in plain float64 ndarrays.  The eigensolver runs cyclic
Jacobi sweeps, which is accurate and dependency-free at the matrix sizes
used here (at most ~100x100).  The sweep kernel has a numba ``@njit``
build and a pure-numpy fallback; see :mod:`matfac._accel`.
"""

from __future__ import annotations

import math
from typing import NamedTuple

import numpy as np

from ._accel import HAS_NUMBA, USE_NUMBA
from .exceptions import ShapeError, ValidationError

SWEEP_LIMIT = 100
OFFDIAG_RTOL = 1e-12
ASYMMETRY_TOL = 1e-9
SIGN_EPS = 1e-12


class EigenDecomposition(NamedTuple):
    """Full spectrum of a symmetric matrix.

    ``values`` is sorted in non-increasing order; column ``j`` of
    ``vectors`` is the unit eigenvector paired with ``values[j]``.  Each
    eigenvector is sign-normalized so its first component with absolute
    value above ``SIGN_EPS`` is positive.
    """

    values: np.ndarray
    vectors: np.ndarray


def matmul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Matrix product with explicit shape validation."""
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    if a.ndim != 2 or b.ndim != 2:
        raise ShapeError(f"matmul expects 2-d operands, got {a.shape} and {b.shape}")
    if a.shape[1] != b.shape[0]:
        raise ShapeError(f"cannot multiply {a.shape} by {b.shape}")
    return a @ b


def _jacobi_sweeps_numpy(a: np.ndarray, v: np.ndarray, off_target: float) -> None:
    """Cyclic Jacobi sweeps on ``a`` in place, accumulating rotations in ``v``."""
    n = a.shape[0]
    for _ in range(SWEEP_LIMIT):
        off_diag = a - np.diag(np.diag(a))
        off = math.sqrt(np.sum(off_diag * off_diag))
        if off <= off_target:
            return
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if apq == 0.0:
                    continue
                app = a[p, p]
                aqq = a[q, q]
                diff = aqq - app
                if abs(diff) + 100.0 * abs(apq) == abs(diff):
                    t = apq / diff  # pivot negligible next to the gap
                else:
                    theta = diff / (2.0 * apq)
                    if theta >= 0.0:
                        t = 1.0 / (theta + math.sqrt(1.0 + theta * theta))
                    else:
                        t = -1.0 / (-theta + math.sqrt(1.0 + theta * theta))
                c = 1.0 / math.sqrt(1.0 + t * t)
                s = t * c
                col_p = a[:, p].copy()
                col_q = a[:, q].copy()
                new_p = c * col_p - s * col_q
                new_q = s * col_p + c * col_q
                a[:, p] = new_p
                a[p, :] = new_p
                a[:, q] = new_q
                a[q, :] = new_q
                a[p, p] = app - t * apq
                a[q, q] = aqq + t * apq
                a[p, q] = 0.0
                a[q, p] = 0.0
                vp = v[:, p].copy()
                vq = v[:, q].copy()
                v[:, p] = c * vp - s * vq
                v[:, q] = s * vp + c * vq


if HAS_NUMBA:
    from numba import njit

    @njit(cache=True)
    def _jacobi_sweeps_numba(a, v, off_target):  # pragma: no cover - jit body
        n = a.shape[0]
        for _ in range(SWEEP_LIMIT):
            off = 0.0
            for i in range(n - 1):
                for j in range(i + 1, n):
                    off += 2.0 * a[i, j] * a[i, j]
            if math.sqrt(off) <= off_target:
                return
            for p in range(n - 1):
                for q in range(p + 1, n):
                    apq = a[p, q]
                    if apq == 0.0:
                        continue
                    app = a[p, p]
                    aqq = a[q, q]
                    diff = aqq - app
                    if abs(diff) + 100.0 * abs(apq) == abs(diff):
                        t = apq / diff
                    else:
                        theta = diff / (2.0 * apq)
                        if theta >= 0.0:
                            t = 1.0 / (theta + math.sqrt(1.0 + theta * theta))
                        else:
                            t = -1.0 / (-theta + math.sqrt(1.0 + theta * theta))
                    c = 1.0 / math.sqrt(1.0 + t * t)
                    s = t * c
                    for i in range(n):
                        aip = a[i, p]
                        aiq = a[i, q]
                        a[i, p] = c * aip - s * aiq
                        a[i, q] = s * aip + c * aiq
                    for i in range(n):
                        a[p, i] = a[i, p]
                        a[q, i] = a[i, q]
                    a[p, p] = app - t * apq
                    a[q, q] = aqq + t * apq
                    a[p, q] = 0.0
                    a[q, p] = 0.0
                    for i in range(n):
                        vip = v[i, p]
                        viq = v[i, q]
                        v[i, p] = c * vip - s * viq
                        v[i, q] = s * vip + c * viq

else:  # pragma: no cover - numba is a declared dependency
    _jacobi_sweeps_numba = None


def _jacobi(a: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Diagonalize symmetric ``a`` (consumed in place); returns unsorted (values, vectors)."""
    n = a.shape[0]
    v = np.eye(n, dtype=np.float64)
    off_target = OFFDIAG_RTOL * math.sqrt(np.sum(a * a))
    if USE_NUMBA:
        _jacobi_sweeps_numba(a, v, off_target)
    else:
        _jacobi_sweeps_numpy(a, v, off_target)
    return np.diag(a).copy(), v


def _sign_normalize(vectors: np.ndarray) -> np.ndarray:
    for j in range(vectors.shape[1]):
        col = vectors[:, j]
        nz = np.nonzero(np.abs(col) > SIGN_EPS)[0]
        if nz.size and col[nz[0]] < 0.0:
            vectors[:, j] = -col
    return vectors


def eig_sym(a: np.ndarray) -> EigenDecomposition:
    """Full spectrum of a symmetric matrix, sorted descending.

    The input must be square and symmetric within ``ASYMMETRY_TOL`` in the
    entrywise max norm; it is symmetrized by averaging before solving.

    Raises
    ------
    ShapeError
        If the input is not a square 2-d array.
    ValidationError
        If the input has non-finite entries or exceeds the asymmetry
        tolerance.
    """
    a = np.asarray(a, dtype=np.float64)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ShapeError(f"eig_sym expects a square matrix, got {a.shape}")
    if not np.all(np.isfinite(a)):
        raise ValidationError("eig_sym input contains non-finite entries")
    asym = float(np.max(np.abs(a - a.T))) if a.size else 0.0
    if asym > ASYMMETRY_TOL:
        raise ValidationError(
            f"matrix asymmetry {asym:.3e} exceeds tolerance {ASYMMETRY_TOL:.0e}"
        )
    work = 0.5 * (a + a.T)
    values, vectors = _jacobi(work)
    order = np.argsort(-values, kind="stable")
    values = values[order]
    vectors = _sign_normalize(vectors[:, order])
    return EigenDecomposition(values=values, vectors=vectors)
