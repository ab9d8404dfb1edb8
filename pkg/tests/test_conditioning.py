import math

import numpy as np
import pytest

from dimform.conditioning import (
    NumericError,
    SaddleBlocks,
    assemble_saddle,
    bound_experiment,
    cond2,
    det_identity_residual,
    loglog_slope,
    power_iteration_norm,
    random_saddle_blocks,
    singular_values,
)


@pytest.mark.parametrize(
    "mat,expected",
    [
        (np.eye(4), 1.0),
        (np.diag([1.0, 1e-3]), 1e3),
        (np.diag([5.0, 1.0, 0.2]), 25.0),
        ([[2.0]], 1.0),
    ],
)
def test_cond2_examples(mat, expected):
    assert cond2(mat) == pytest.approx(expected, rel=1e-12)


def test_singular_and_invalid():
    assert cond2([[1.0, 1.0], [1.0, 1.0]]) == math.inf
    with pytest.raises(ValueError):
        cond2(np.zeros((2, 2)))
    with pytest.raises(ValueError):
        cond2(np.ones((2, 3)))


def test_singular_values_match_lapack():
    rng = np.random.default_rng(3)
    for shape in [(5, 5), (7, 4), (3, 6)]:
        m = rng.standard_normal(shape)
        assert np.allclose(singular_values(m), np.linalg.svd(m, compute_uv=False), rtol=1e-10)


def test_scale_and_orthogonal_invariance():
    rng = np.random.default_rng(1)
    m = rng.standard_normal((6, 6))
    q, _ = np.linalg.qr(rng.standard_normal((6, 6)))
    k = cond2(m)
    assert cond2(1e-7 * m) == pytest.approx(k, rel=1e-9)
    assert cond2(q @ m) == pytest.approx(k, rel=1e-9)


def test_power_iteration_cross_check():
    blocks = random_saddle_blocks(8, 3, seed=2)
    K = assemble_saddle(blocks, 0.7)
    assert power_iteration_norm(K, iters=5000) == pytest.approx(singular_values(K)[0], rel=1e-8)


def test_det_identity():
    blocks = random_saddle_blocks(8, 3, seed=0)
    for eu in (1e-3, 0.1, 1.0, 30.0):
        assert det_identity_residual(blocks, eu) < 1e-9


def test_no_constraints():
    A = np.diag([1.0, 4.0])
    blocks = SaddleBlocks(A, np.zeros((0, 2)))
    pts = bound_experiment(blocks, [1e-3, 1.0, 1e3])
    assert all(k == pytest.approx(4.0) for _, k in pts)
    assert det_identity_residual(blocks, 0.5) < 1e-12


def test_one_by_one_block():
    # [[1, Eu], [Eu, 0]] has eigenvalues near 1 and -Eu^2
    blocks = SaddleBlocks(np.eye(2), np.array([[1.0, 0.0]]))
    slope = loglog_slope(bound_experiment(blocks, np.logspace(-6, -4, 5)))
    assert slope == pytest.approx(-2.0, abs=1e-3)
    assert slope <= -2 * blocks.m / (blocks.n + blocks.m)


def test_block_validation():
    with pytest.raises(ValueError):
        SaddleBlocks(np.eye(2), np.ones((2, 2)))
    with pytest.raises(ValueError):
        SaddleBlocks(np.eye(3), np.array([[1.0, 2.0, 3.0], [2.0, 4.0, 6.0]]))
    with pytest.raises(ValueError):
        SaddleBlocks(np.ones((2, 3)), np.ones((1, 3)))
    with pytest.raises(NumericError):
        det_identity_residual(SaddleBlocks(np.zeros((2, 2)), np.array([[1.0, 0.0]])), 1.0)


def test_grid_validation():
    blocks = random_saddle_blocks(4, 1)
    with pytest.raises(ValueError):
        bound_experiment(blocks, [1.0, 0.5])
    with pytest.raises(ValueError):
        bound_experiment(blocks, [0.0, 1.0])


def test_seeded_generator_is_reproducible():
    a = random_saddle_blocks(6, 2, seed=5)
    b = random_saddle_blocks(6, 2, seed=5)
    assert np.array_equal(a.A, b.A) and np.array_equal(a.B, b.B)
    assert np.allclose(a.A, a.A.T)
    assert np.all(np.linalg.eigvalsh(a.A) > 0)
