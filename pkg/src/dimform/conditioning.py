"""Condition numbers of Euler-number-scaled saddle-point matrices.

    K(Eu) = [[A, Eu B^T], [Eu B, 0]]

For small Eu the determinant identity |det K| = Eu^(2m) |det A det(B A^-1 B^T)|
forces kappa_2(K) >= C Eu^(-2m/N); for large Eu the condition number levels
off.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np


class NumericError(ArithmeticError):
    pass


@dataclass(frozen=True)
class SaddleBlocks:
    A: np.ndarray
    B: np.ndarray

    def __post_init__(self):
        A = np.asarray(self.A, dtype=float)
        B = np.asarray(self.B, dtype=float)
        if B.ndim == 1 and B.size == 0:
            B = B.reshape(0, A.shape[0])
        if A.ndim != 2 or A.shape[0] != A.shape[1]:
            raise ValueError(f"A must be square, got shape {A.shape}")
        if B.ndim != 2 or B.shape[1] != A.shape[0]:
            raise ValueError(f"B must be m x {A.shape[0]}, got shape {B.shape}")
        m, n = B.shape
        if m >= n and m > 0:
            raise ValueError(f"need fewer constraints than unknowns, got m={m}, n={n}")
        if m and np.linalg.matrix_rank(B) < m:
            raise ValueError("B must have full row rank")
        object.__setattr__(self, "A", A)
        object.__setattr__(self, "B", B)

    @property
    def n(self) -> int:
        return self.A.shape[0]

    @property
    def m(self) -> int:
        return self.B.shape[0]


def assemble_saddle(blocks: SaddleBlocks, eu: float) -> np.ndarray:
    n, m = blocks.n, blocks.m
    K = np.zeros((n + m, n + m))
    K[:n, :n] = blocks.A
    K[:n, n:] = eu * blocks.B.T
    K[n:, :n] = eu * blocks.B
    return K


def singular_values(mat, tol: float = 1e-12, max_sweeps: int = 60) -> np.ndarray:
    """Singular values in descending order by one-sided Jacobi rotations.

    Columns are orthogonalized pairwise until every normalized off-diagonal
    inner product falls below ``tol``.
    """
    U = np.array(mat, dtype=float, copy=True)
    if U.ndim != 2:
        raise ValueError("expected a matrix")
    if U.shape[0] < U.shape[1]:
        U = U.T.copy()
    ncols = U.shape[1]
    for _ in range(max_sweeps):
        rotated = False
        for p in range(ncols - 1):
            for q in range(p + 1, ncols):
                up, uq = U[:, p], U[:, q]
                alpha = up @ up
                beta = uq @ uq
                gamma = up @ uq
                if gamma == 0.0 or abs(gamma) <= tol * math.sqrt(alpha * beta):
                    continue
                rotated = True
                zeta = (beta - alpha) / (2.0 * gamma)
                t = math.copysign(1.0, zeta) / (abs(zeta) + math.sqrt(1.0 + zeta * zeta))
                c = 1.0 / math.sqrt(1.0 + t * t)
                s = c * t
                new_p = c * up - s * uq
                new_q = s * up + c * uq
                U[:, p] = new_p
                U[:, q] = new_q
        if not rotated:
            break
    else:
        raise NumericError("Jacobi SVD did not converge")
    return np.sort(np.linalg.norm(U, axis=0))[::-1]


def cond2(mat) -> float:
    """Spectral condition number; +inf when numerically singular."""
    mat = np.asarray(mat, dtype=float)
    if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
        raise ValueError(f"cond2 needs a square matrix, got shape {mat.shape}")
    sigma = singular_values(mat)
    smax, smin = sigma[0], sigma[-1]
    if smax == 0.0:
        raise ValueError("cond2 of the zero matrix is undefined")
    if smin <= smax * mat.shape[0] * np.finfo(float).eps:
        return math.inf
    return float(smax / smin)


def power_iteration_norm(mat, iters: int = 500, seed: int = 0) -> float:
    """Spectral norm from power iteration on M^T M (cross-check for the SVD)."""
    mat = np.asarray(mat, dtype=float)
    x = np.random.default_rng(seed).standard_normal(mat.shape[1])
    x /= np.linalg.norm(x)
    est = 0.0
    for _ in range(iters):
        y = mat.T @ (mat @ x)
        ny = np.linalg.norm(y)
        if ny == 0.0:
            return 0.0
        x = y / ny
        new = math.sqrt(ny)
        if abs(new - est) <= 1e-15 * new:
            break
        est = new
    return float(np.linalg.norm(mat @ x))


def det_identity_residual(blocks: SaddleBlocks, eu: float) -> float:
    """|log|det K| - (2m log Eu + log C0)| with C0 = |det A det(B A^-1 B^T)|."""
    if eu <= 0:
        raise ValueError("eu must be positive")
    sign_a, logdet_a = np.linalg.slogdet(blocks.A)
    if sign_a == 0 or not np.isfinite(logdet_a):
        raise NumericError("A is singular")
    if np.linalg.cond(blocks.A) > 1e12:
        raise NumericError("A is numerically singular")
    log_c0 = logdet_a
    if blocks.m:
        S = blocks.B @ np.linalg.solve(blocks.A, blocks.B.T)
        sign_s, logdet_s = np.linalg.slogdet(S)
        if sign_s == 0:
            raise NumericError("Schur complement is singular")
        log_c0 += logdet_s
    sign_k, logdet_k = np.linalg.slogdet(assemble_saddle(blocks, eu))
    if sign_k == 0:
        raise NumericError("saddle matrix is singular")
    return float(abs(logdet_k - (2 * blocks.m * math.log(eu) + log_c0)))


def random_saddle_blocks(
    n: int, m: int, seed: int = 0, spread: float = 1e4, coupling: float = 3.0
) -> SaddleBlocks:
    """Seeded SPD A with eigenvalues log-spaced over [1, spread], Gaussian B.

    A spread-out spectrum mimics a discretized elliptic operator; with a
    narrow one the Eu-scaled coupling dominates K for large Eu and no
    plateau forms.
    """
    rng = np.random.default_rng(seed)
    Q, _ = np.linalg.qr(rng.standard_normal((n, n)))
    A = Q @ np.diag(np.logspace(0.0, math.log10(spread), n)) @ Q.T
    A = 0.5 * (A + A.T)
    B = coupling * rng.standard_normal((m, n))
    return SaddleBlocks(A, B)


def bound_experiment(blocks: SaddleBlocks, eu_grid: Sequence[float]) -> list[tuple[float, float]]:
    grid = [float(x) for x in eu_grid]
    if any(x <= 0 for x in grid):
        raise ValueError("eu grid must be positive")
    if any(b < a for a, b in zip(grid, grid[1:])):
        raise ValueError("eu grid must be sorted ascending")
    return [(eu, cond2(assemble_saddle(blocks, eu))) for eu in grid]


def loglog_slope(points: Sequence[tuple[float, float]]) -> float:
    x = np.log([p[0] for p in points])
    y = np.log([p[1] for p in points])
    return float(np.polyfit(x, y, 1)[0])


def relative_variation(points: Sequence[tuple[float, float]]) -> float:
    """(max - min)/min of the condition numbers."""
    values = [p[1] for p in points]
    return (max(values) - min(values)) / min(values)


def bound_constant(blocks: SaddleBlocks, points: Sequence[tuple[float, float]]) -> float:
    """min over the grid of kappa_2(Eu) Eu^(2m/N)."""
    N = blocks.n + blocks.m
    return min(k * eu ** (2 * blocks.m / N) for eu, k in points)
