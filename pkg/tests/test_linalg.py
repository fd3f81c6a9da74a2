"""Eigensolver and matrix-product tests against independent oracles."""

import numpy as np
import pytest

from matfac import linalg
from matfac.exceptions import ShapeError, ValidationError
from matfac.linalg import eig_sym, matmul


def triple_loop_matmul(a, b):
    out = np.zeros((a.shape[0], b.shape[1]))
    for i in range(a.shape[0]):
        for j in range(b.shape[1]):
            s = 0.0
            for k in range(a.shape[1]):
                s += a[i, k] * b[k, j]
            out[i, j] = s
    return out


class TestMatmul:
    def test_identity(self):
        a = np.arange(9.0).reshape(3, 3)
        np.testing.assert_array_equal(matmul(np.eye(3), a), a)

    def test_hand_example(self):
        got = matmul(np.array([[1.0, 2.0], [3.0, 4.0]]), np.array([[0.0], [1.0]]))
        np.testing.assert_array_equal(got, np.array([[2.0], [4.0]]))

    def test_against_triple_loop(self):
        rng = np.random.default_rng(7)
        a = rng.standard_normal((7, 5))
        b = rng.standard_normal((5, 3))
        assert np.max(np.abs(matmul(a, b) - triple_loop_matmul(a, b))) <= 1e-12

    def test_shape_mismatch(self):
        with pytest.raises(ShapeError, match=r"\(2, 3\).*\(2, 2\)"):
            matmul(np.zeros((2, 3)), np.zeros((2, 2)))

    def test_non_2d(self):
        with pytest.raises(ShapeError):
            matmul(np.zeros(3), np.zeros((3, 1)))


class TestEigSym:
    def test_identity(self):
        dec = eig_sym(np.eye(4))
        np.testing.assert_allclose(dec.values, np.ones(4))

    def test_diagonal(self):
        dec = eig_sym(np.diag([3.0, 1.0]))
        np.testing.assert_allclose(dec.values, [3.0, 1.0])
        np.testing.assert_allclose(np.abs(dec.vectors), np.eye(2), atol=1e-12)
        # sign convention makes both basis vectors positive
        assert dec.vectors[0, 0] > 0 and dec.vectors[1, 1] > 0

    def test_random_psd_residual(self):
        rng = np.random.default_rng(11)
        b = rng.standard_normal((8, 8))
        a = b.T @ b
        dec = eig_sym(a)
        resid = np.max(np.abs(a @ dec.vectors - dec.vectors * dec.values))
        assert resid <= 1e-8 * (1.0 + abs(dec.values[0]))
        assert np.all(dec.values >= -1e-10)

    def test_matches_lapack_spectrum(self):
        rng = np.random.default_rng(12)
        for _ in range(10):
            n = int(rng.integers(2, 25))
            b = rng.standard_normal((n, n))
            a = b + b.T
            got = eig_sym(a).values
            want = np.linalg.eigvalsh(a)[::-1]
            np.testing.assert_allclose(got, want, atol=1e-9 * (1 + np.abs(want).max()))

    def test_orthonormal_columns(self):
        rng = np.random.default_rng(13)
        a = rng.standard_normal((12, 12))
        a = a + a.T
        v = eig_sym(a).vectors
        assert np.max(np.abs(v.T @ v - np.eye(12))) <= 1e-9

    def test_sorted_non_increasing(self):
        rng = np.random.default_rng(14)
        a = rng.standard_normal((10, 10))
        values = eig_sym(a + a.T).values
        assert np.all(np.diff(values) <= 1e-12)

    def test_trace_identity_psd(self):
        rng = np.random.default_rng(15)
        b = rng.standard_normal((9, 9))
        a = b.T @ b
        values = eig_sym(a).values
        tr = np.trace(a)
        assert abs(values.sum() - tr) <= 1e-8 * (1 + tr)

    def test_idempotent_in_law(self):
        rng = np.random.default_rng(16)
        b = rng.standard_normal((7, 7))
        dec = eig_sym(b.T @ b)
        rebuilt = dec.vectors @ np.diag(dec.values) @ dec.vectors.T
        np.testing.assert_allclose(eig_sym(rebuilt).values, dec.values, atol=1e-8)

    def test_bit_deterministic(self):
        rng = np.random.default_rng(17)
        b = rng.standard_normal((10, 10))
        a = b.T @ b
        d1 = eig_sym(a.copy())
        d2 = eig_sym(a.copy())
        assert np.array_equal(d1.values, d2.values)
        assert np.array_equal(d1.vectors, d2.vectors)

    def test_sign_convention(self):
        rng = np.random.default_rng(18)
        b = rng.standard_normal((6, 6))
        v = eig_sym(b.T @ b).vectors
        for j in range(6):
            col = v[:, j]
            first = col[np.abs(col) > 1e-12][0]
            assert first > 0

    def test_zero_matrix(self):
        dec = eig_sym(np.zeros((5, 5)))
        np.testing.assert_array_equal(dec.values, np.zeros(5))

    def test_non_square_rejected(self):
        with pytest.raises(ShapeError):
            eig_sym(np.zeros((3, 4)))

    def test_asymmetry_rejected(self):
        a = np.eye(3)
        a[0, 1] = 1e-6
        with pytest.raises(ValidationError, match="asymmetry"):
            eig_sym(a)

    def test_small_asymmetry_tolerated(self):
        a = np.eye(3)
        a[0, 1] = 5e-10
        eig_sym(a)

    def test_non_finite_rejected(self):
        a = np.eye(3)
        a[1, 1] = np.nan
        with pytest.raises(ValidationError, match="finite"):
            eig_sym(a)


class TestKernelPaths:
    def test_numpy_fallback_matches_numba(self, monkeypatch):
        rng = np.random.default_rng(19)
        b = rng.standard_normal((14, 14))
        a = b.T @ b
        fast = eig_sym(a)
        monkeypatch.setattr(linalg, "USE_NUMBA", False)
        slow = eig_sym(a)
        np.testing.assert_allclose(fast.values, slow.values, atol=1e-10)
        np.testing.assert_allclose(np.abs(fast.vectors), np.abs(slow.vectors), atol=1e-8)
