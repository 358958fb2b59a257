import itertools

import numpy as np
import pytest

from predictu.errors import ValidationError
from predictu.isotonic import pava
from predictu.risk_model import build_risk_table
from predictu.summary_indices import u_statistic


def brute_force_isotonic(y, w):
    """Minimize sum w (y - f)^2 over nondecreasing f by enumerating all
    contiguous block partitions; the optimum is blockwise weighted means
    with nondecreasing values."""
    n = len(y)
    best = None
    best_sse = np.inf
    for cuts in itertools.product([0, 1], repeat=n - 1):
        bounds = [0] + [i + 1 for i, c in enumerate(cuts) if c] + [n]
        fit = np.empty(n)
        means = []
        for lo, hi in zip(bounds[:-1], bounds[1:]):
            mean = np.average(y[lo:hi], weights=w[lo:hi])
            means.append(mean)
            fit[lo:hi] = mean
        if any(b < a - 1e-12 for a, b in zip(means, means[1:])):
            continue
        sse = float(np.sum(w * (y - fit) ** 2))
        if sse < best_sse - 1e-15:
            best_sse = sse
            best = fit
    return best


def test_monotone_input_returned_unchanged():
    y = np.array([0.1, 0.2, 0.2, 0.7])
    w = np.array([1.0, 2.0, 1.0, 0.5])
    np.testing.assert_allclose(pava(y, w).fitted, y, atol=1e-15)


def test_symmetric_pair_pools_to_mean():
    fit = pava(np.array([3.0, 1.0]), np.array([1.0, 1.0]))
    np.testing.assert_allclose(fit.fitted, [2.0, 2.0], atol=1e-15)
    assert len(fit.blocks) == 1
    assert fit.blocks[0].weight == pytest.approx(2.0)


def test_four_point_hand_example():
    y = np.array([0.1, 0.5, 0.3, 0.9])
    w = np.full(4, 0.25)
    fit = pava(y, w)
    np.testing.assert_allclose(fit.fitted, [0.1, 0.4, 0.4, 0.9], atol=1e-12)
    np.testing.assert_allclose(brute_force_isotonic(y, w), fit.fitted, atol=1e-12)


def test_matches_partition_brute_force():
    rng = np.random.default_rng(401)
    for _ in range(300):
        n = int(rng.integers(2, 7))
        y = rng.uniform(0, 1, n)
        w = rng.uniform(0.1, 2.0, n)
        fit = pava(y, w).fitted
        np.testing.assert_allclose(fit, brute_force_isotonic(y, w), atol=1e-12)


def test_idempotent_and_mean_preserving():
    rng = np.random.default_rng(402)
    for _ in range(100):
        n = int(rng.integers(2, 12))
        y = rng.uniform(0, 1, n)
        w = rng.uniform(0.1, 2.0, n)
        fit = pava(y, w)
        again = pava(fit.fitted, w)
        np.testing.assert_allclose(again.fitted, fit.fitted, atol=1e-14)
        assert float(w @ fit.fitted) == pytest.approx(float(w @ y), abs=1e-12)


def test_block_characterization():
    rng = np.random.default_rng(403)
    for _ in range(100):
        n = int(rng.integers(2, 10))
        y = rng.uniform(0, 1, n)
        w = rng.uniform(0.1, 2.0, n)
        fit = pava(y, w)
        values = [b.value for b in fit.blocks]
        assert all(b > a for a, b in zip(values, values[1:]))
        for block in fit.blocks:
            mean = np.average(y[block.start:block.end], weights=w[block.start:block.end])
            assert block.value == pytest.approx(mean, abs=1e-12)
            np.testing.assert_allclose(fit.fitted[block.start:block.end], block.value)


def test_refit_u_equals_merged_table_u():
    # pooling genotypes by block and recomputing U must agree with
    # evaluating U on the refit risks at the original resolution
    rng = np.random.default_rng(404)
    for _ in range(50):
        g = int(rng.integers(3, 8))
        case = rng.dirichlet(np.ones(g))
        control = rng.dirichlet(np.ones(g))
        table = build_risk_table(case, control, rho=0.3)
        noisy = np.clip(table.r + rng.normal(0, 0.1, g), 0, 1)
        fit = pava(noisy, table.p)
        u_refit = float(u_statistic(table.p, fit.fitted))
        merged_p = np.array([b.weight for b in fit.blocks])
        merged_r = np.array([b.value for b in fit.blocks])
        u_merged = float(u_statistic(merged_p, merged_r))
        assert u_refit == pytest.approx(u_merged, abs=1e-12)


def test_rejects_nonpositive_weights():
    with pytest.raises(ValidationError):
        pava(np.array([0.1, 0.2]), np.array([1.0, 0.0]))
    with pytest.raises(ValidationError):
        pava(np.array([0.1, 0.2]), np.array([1.0]))
