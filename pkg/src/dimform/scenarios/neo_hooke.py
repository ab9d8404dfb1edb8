"""Neo-Hooke hyperelasticity in three dimensions, as an energy expanded to
third order in the displacement scale, plus the direct formulation in terms
of the deformation gradient that cannot be factorized."""
from __future__ import annotations

from .. import form as F
from ..passes import Mapping
from ..units import make_quantity
from .base import Scenario, TermGroup
from .navier_stokes import _fractions

YOUNG_GPA = 2.0
POISSON = 0.4


def moduli_gpa(E: float = YOUNG_GPA, nu: float = POISSON) -> tuple[float, float]:
    """Shear and bulk modulus from Young's modulus and Poisson's ratio."""
    lam = E * nu / ((1 + nu) * (1 - 2 * nu))
    mu = E / (2 * (1 + nu))
    return mu, lam + 2 / 3 * mu


def _setup():
    d = 3
    mu_gpa, kappa_gpa = moduli_gpa()
    quantities = (
        make_quantity("μ", mu_gpa, "GPa"),
        make_quantity("κ", kappa_gpa, "GPa"),
        make_quantity("l_ref", 1.0, "mm"),
        make_quantity("τ_ref", 100, "kPa"),
        make_quantity("u_ref", 0.001, "mm"),
    )
    u = F.field("u", (d,))
    t = F.field("t", (d,))
    u_ref = F.quantity(quantities[4])
    mapping = Mapping({u: u_ref * u, t: t}, length=quantities[2], dim=d)
    return d, quantities, u, t, mapping


def _force(quantities, u, t, d):
    tau = F.quantity(quantities[3])
    return F.ds(-(tau * F.inner(t, u)), d)


def build() -> Scenario:
    d, quantities, u, t, mapping = _setup()
    mu, kappa = F.quantity(quantities[0]), F.quantity(quantities[1])
    gu = F.grad(u)
    E1 = F.sym(gu)
    E2 = 0.5 * F.dot(F.transpose(gu), gu)
    trE1 = F.tr(E1)
    E1E1 = F.dot(E1, E1)
    dx = lambda e: F.dx(e, d)  # noqa: E731
    terms = {
        "shear_2": dx(mu * F.tr(E1E1)),
        "bulk_2": dx(kappa / 2 * F.power(trE1, 2)),
        "shear_3": dx(mu * (2 * F.inner(E1, E2) - F.constant(4) / 3 * F.tr(F.dot(E1E1, E1)))),
        "bulk_3": dx(kappa * (trE1 * F.tr(E2) + 0.5 * F.power(trE1, 3) - trE1 * F.tr(E1E1))),
        "force": _force(quantities, u, t, d),
    }
    expected = _fractions({
        "pi": [
            ((-1, 1, 0, 0, 0), 4.667),
            ((-1, 0, 0, 1, 0), 1.4e-4),
            ((0, 0, -1, 0, 1), 1e-3),
        ],
        "groups": {
            "energy": {
                "reference_factor": ((0, 1, 1, 0, 2), 3.333e-6),
                "terms": {
                    "shear_2": ((1, -1, 0, 0, 0), 0.2143),
                    "bulk_2": ((0,) * 5, 1.0),
                    "shear_3": ((1, -1, -1, 0, 1), 0.0002143),
                    "bulk_3": ((0, 0, -1, 0, 1), 0.001),
                    "force": ((0, -1, 1, 1, -1), 0.03),
                },
            }
        },
    })
    return Scenario(
        "neo_hooke", quantities, d, {"u": u, "t": t}, {}, mapping,
        (TermGroup("energy", terms, "bulk_2"),), expected,
    )


def build_direct() -> Scenario:
    d, quantities, u, t, mapping = _setup()
    mu, kappa = F.quantity(quantities[0]), F.quantity(quantities[1])
    Fdef = F.identity(d) + F.grad(u)
    C = F.dot(F.transpose(Fdef), Fdef)
    J = F.sqrt(F.det(C))
    dx = lambda e: F.dx(e, d)  # noqa: E731
    terms = {
        "shear": dx(mu / 2 * (F.tr(C) - 3 - 2 * F.ln(J))),
        "bulk": dx(kappa / 2 * F.power(J - 1, 2)),
        "force": _force(quantities, u, t, d),
    }
    expected = {"error": "Different factors: 1 != u_ref/l_ref."}
    return Scenario(
        "neo_hooke_direct", quantities, d, {"u": u, "t": t}, {}, mapping,
        (TermGroup("energy", terms, "bulk"),), expected,
    )
