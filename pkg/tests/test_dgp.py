"""Generator checks: determinism, AR(1) laws, loading strength, noise structure."""

import numpy as np
import pytest

from matfac import dgp
from matfac.dgp import DgpConfig, equicorrelated_sqrt, replication_seed, simulate
from matfac.exceptions import ConfigError


def test_fixed_seed_bit_identical():
    cfg = DgpConfig(p=6, q=5, r=2, c=2, n=50, a=0.5, seed=42)
    s1 = simulate(cfg)
    s2 = simulate(cfg)
    assert np.array_equal(s1.y, s2.y)
    assert np.array_equal(s1.factors, s2.factors)
    assert np.array_equal(s1.row_loadings, s2.row_loadings)


def test_distinct_seeds_differ():
    base = dict(p=4, q=4, r=1, c=1, n=30)
    a = simulate(DgpConfig(seed=1, **base)).y
    b = simulate(DgpConfig(seed=2, **base)).y
    assert not np.array_equal(a, b)


def test_zero_a_kills_serial_dependence():
    sim = simulate(DgpConfig(p=2, q=2, r=2, c=2, n=100_000, a=0.0, seed=5))
    f = sim.factors
    for i in range(2):
        for j in range(2):
            x = f[:, i, j]
            corr = np.corrcoef(x[:-1], x[1:])[0, 1]
            assert abs(corr) <= 0.02


def test_stationary_variance_at_high_a():
    sim = simulate(DgpConfig(p=2, q=2, r=1, c=1, n=200_000, a=0.9, seed=7))
    var = np.var(sim.factors[:, 0, 0])
    target = 1.0 / (1.0 - 0.81)
    assert abs(var - target) <= 0.05 * target


def test_loading_strength_normalization():
    for p, delta in ((20, 0.0), (20, 0.5), (40, 1.0)):
        sim = simulate(DgpConfig(p=p, q=10, r=3, c=2, n=10, delta=delta, seed=3))
        norm_sq = np.linalg.svd(sim.row_loadings, compute_uv=False)[0] ** 2
        assert abs(norm_sq - p ** (1.0 - delta)) <= 1e-9 * p


def test_strong_loading_order_p_band():
    # ratio ||R||_2^2 / p over many seeds stays in the order-p band
    ratios = []
    for seed in range(100):
        sim = simulate(DgpConfig(p=20, q=20, r=3, c=3, n=10, delta=0.0, omega=0.0, seed=seed))
        ratios.append(np.linalg.svd(sim.row_loadings, compute_uv=False)[0] ** 2 / 20)
    assert min(ratios) >= 0.05
    assert max(ratios) <= 1.0 + 1e-9


def test_pure_noise_lag1_autocov_near_zero():
    sim = simulate(DgpConfig(p=5, q=5, r=0, c=0, n=100_000, noise_case="identity", seed=9))
    y = sim.y
    n = y.shape[0]
    acov = np.tensordot(y[:-1], y[1:], axes=([0, 2], [0, 2])) / (n - 1)
    assert np.max(np.abs(acov)) <= 0.02


def test_equicorrelated_row_covariance():
    sim = simulate(DgpConfig(p=4, q=6, r=0, c=0, n=100_000, noise_case="equicorrelated", seed=10))
    e = sim.y
    q = e.shape[2]
    # E[E E'] = tr(Sigma2) * Sigma1, so entry (1,2) of E[E E']/q is rho = 0.1
    cov = np.einsum("tij,tkj->ik", e, e) / e.shape[0]
    assert abs(cov[0, 1] / q - 0.1) <= 0.05 * 0.1


def test_noise_none_is_exact_signal():
    sim = simulate(DgpConfig(p=5, q=4, r=2, c=2, n=20, noise_case="none", seed=11))
    rebuilt = sim.row_loadings @ sim.factors @ sim.col_loadings.T
    np.testing.assert_array_equal(sim.y, rebuilt)


def test_equicorrelated_sqrt_squares_back():
    for dim in (3, 17):
        s = equicorrelated_sqrt(dim)
        sigma = np.full((dim, dim), 0.1)
        np.fill_diagonal(sigma, 1.0)
        assert np.max(np.abs(s @ s - sigma)) <= 1e-12


def test_replication_seeds_are_independent_streams():
    s1 = replication_seed(123, 1)
    s2 = replication_seed(123, 2)
    assert s1 != s2
    assert replication_seed(123, 1) == s1
    a = simulate(DgpConfig(p=2, q=2, r=0, c=0, n=10_000, seed=s1)).y.ravel()
    b = simulate(DgpConfig(p=2, q=2, r=0, c=0, n=10_000, seed=s2)).y.ravel()
    assert abs(np.corrcoef(a, b)[0, 1]) <= 0.03


def test_ar_kernel_paths_agree(monkeypatch):
    cfg = DgpConfig(p=3, q=3, r=2, c=2, n=500, a=0.7, seed=21)
    fast = simulate(cfg)
    monkeypatch.setattr(dgp, "USE_NUMBA", False)
    slow = simulate(cfg)
    np.testing.assert_allclose(fast.factors, slow.factors, atol=1e-12)


@pytest.mark.parametrize(
    "field,value",
    [
        ("r", 7),  # r > p
        ("c", 9),  # c > q
        ("n", 2),
        ("a", 1.0),
        ("a", -0.1),
        ("delta", 1.5),
        ("omega", -0.5),
        ("noise_case", "weird"),
    ],
)
def test_config_validation(field, value):
    base = dict(p=6, q=6, r=2, c=2, n=50)
    base[field] = value
    with pytest.raises(ConfigError, match=field if field != "noise_case" else "noise_case"):
        DgpConfig(**base)
