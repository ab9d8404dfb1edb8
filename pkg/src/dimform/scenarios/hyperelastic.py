"""Neo-Hooke strain energy: full form, its third-order expansion in the
displacement scale, and a probe for the cancellation in F = I + pi3 grad u."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np


class InadmissibleDeformation(ValueError):
    pass


@dataclass(frozen=True)
class StrainState:
    gradu: np.ndarray
    pi3: float
    mu: float = 1.0
    kappa: float = 1.0

    def __post_init__(self):
        g = np.asarray(self.gradu, dtype=float)
        if g.shape != (3, 3):
            raise ValueError(f"gradu must be 3x3, got shape {g.shape}")
        object.__setattr__(self, "gradu", g)


def neo_hooke_W_full(s: StrainState) -> float:
    F = np.eye(3) + s.pi3 * s.gradu
    C = F.T @ F
    detC = float(np.linalg.det(C))
    if np.linalg.det(F) <= 0 or detC <= 0:
        raise InadmissibleDeformation(f"det F = {np.linalg.det(F):.3g} is not positive")
    J = math.sqrt(detC)
    I1 = float(np.trace(C))
    return 0.5 * s.mu * (I1 - 3.0 - 2.0 * math.log(J)) + 0.5 * s.kappa * (J - 1.0) ** 2


def strain_parts(gradu: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Linear and quadratic parts of the Green-Lagrange strain."""
    g = np.asarray(gradu, dtype=float)
    return 0.5 * (g + g.T), 0.5 * g.T @ g


def neo_hooke_W_expanded(s: StrainState) -> float:
    E1, E2 = strain_parts(s.gradu)
    mu, kappa, p = s.mu, s.kappa, s.pi3
    tr1 = np.trace(E1)
    E1sq = E1 @ E1
    second = mu * np.trace(E1sq) + 0.5 * kappa * tr1**2
    third = (
        np.sum((2.0 * mu * E1 + kappa * tr1 * np.eye(3)) * E2)
        + kappa * (0.5 * tr1**3 - tr1 * np.trace(E1sq))
        - (4.0 * mu / 3.0) * np.trace(E1sq @ E1)
    )
    return float(p**2 * second + p**3 * third)


def cancellation_probe(pi3: float, gradu) -> bool:
    """True when I + pi3 * gradu is bit-for-bit the identity."""
    F = np.eye(3) + pi3 * np.asarray(gradu, dtype=float)
    return bool(np.array_equal(F, np.eye(3)))


def random_symmetric_dominant(rng: np.random.Generator, skew: float = 0.1) -> np.ndarray:
    a = rng.standard_normal((3, 3))
    w = rng.standard_normal((3, 3))
    return 0.5 * (a + a.T) + skew * 0.5 * (w - w.T)


def expansion_error_ratio(s: StrainState) -> float:
    """err(pi3) / err(pi3 / 2) with err = |W_full - W_expanded|."""
    half = StrainState(s.gradu, s.pi3 / 2, s.mu, s.kappa)
    err = abs(neo_hooke_W_full(s) - neo_hooke_W_expanded(s))
    err_half = abs(neo_hooke_W_full(half) - neo_hooke_W_expanded(half))
    return err / err_half
