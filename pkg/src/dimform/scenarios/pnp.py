"""Poisson-Nernst-Planck electrolyte with four ionic species and an
extended Debye-Hückel activity model, split into a term constant in the ion
radius and a term linear in it."""
from __future__ import annotations

import math

from .. import form as F
from ..passes import Mapping
from ..units import make_quantity
from .base import Scenario, TermGroup
from .navier_stokes import _fractions

VALENCES = (-2, 2, 1, 1)
RADII = (6, 8, 4, 3)  # in units of l_ref
DIFFUSIVITIES = (3, 3, 3, 5)  # in units of D_ref
INITIAL = (0.6, 0.3, 0.4, 0.6)  # in units of c_ref
EPS_R = 80.0


def fixed_charge() -> float:
    return sum(c * z for c, z in zip(INITIAL, VALENCES))


def quantities():
    return (
        make_quantity("c_ref", 50, "mol/m^3"),
        make_quantity("φ_ref", 1, "V"),
        make_quantity("D_ref", 1e-10, "m^2/s"),
        make_quantity("ε0", 8.8541878128e-12, "F/m"),
        make_quantity("F", 96485.33212, "C/mol"),
        make_quantity("R", 8.314462618, "J/(K*mol)"),
        make_quantity("T", 300, "K"),
        make_quantity("l_ref", 1, "angstrom"),
        make_quantity("e0", 1.602176634e-19, "C"),
    )


class _Model:
    def __init__(self):
        self.d = 1
        self.quantities = quantities()
        q = {x.name: F.quantity(x) for x in self.quantities}
        self.q = q
        n = len(VALENCES)
        self.c = [F.field(f"c{i + 1}") for i in range(n)]
        self.dc = [F.test(f"dc{i + 1}") for i in range(n)]
        self.phi = F.field("φ")
        self.dphi = F.test("dφ")
        self.w = F.field("w")
        eps = q["ε0"] * EPS_R
        RT = q["R"] * q["T"]
        self.eps = eps
        self.A = (
            math.sqrt(2) * F.power(q["F"], 2) * q["e0"]
            / (8 * math.pi * F.power(eps * RT, "3/2"))
        )
        self.B = F.sqrt(2 * F.power(q["F"], 2) / (eps * RT))
        total = None
        for z, c in zip(VALENCES, self.c):
            part = z**2 * c + self.w
            total = part if total is None else total + part
        self.ionic_strength = 0.5 * total
        c_ref = q["c_ref"]
        entries = {c: c_ref * c for c in self.c}
        entries.update({dc: c_ref * dc for dc in self.dc})
        entries[self.phi] = q["φ_ref"] * self.phi
        entries[self.dphi] = q["φ_ref"] * self.dphi
        entries[self.w] = c_ref * F.constant(fixed_charge())
        self.mapping = Mapping(entries, length=self.quantities[7], dim=self.d)

    def dx(self, e):
        return F.dx(e, self.d)

    def radius(self, i):
        return RADII[i] * self.q["l_ref"]

    def species_sum(self, build):
        total = None
        for i in range(len(VALENCES)):
            part = build(i)
            total = part if total is None else total + part
        return total

    def flux_term(self, i, potential):
        """D_i c_i grad(potential) . grad(dc_i)"""
        D = DIFFUSIVITIES[i] * self.q["D_ref"]
        return D * self.c[i] * F.inner(F.grad(potential, self.d), F.grad(self.dc[i], self.d))

    def ln_gamma_0(self, i):
        return -(self.A * VALENCES[i] ** 2 * F.sqrt(self.ionic_strength))

    def ln_gamma_1(self, i):
        return self.A * self.B * self.radius(i) * VALENCES[i] ** 2 * self.ionic_strength

    def ln_gamma_full(self, i):
        sqrt_I = F.sqrt(self.ionic_strength)
        return -(self.A * VALENCES[i] ** 2 * sqrt_I) / (1 + self.B * self.radius(i) * sqrt_I)


def build() -> Scenario:
    m = _Model()
    q = m.q
    d = m.d
    grad = lambda x: F.grad(x, d)  # noqa: E731
    charge = m.species_sum(lambda i: VALENCES[i] * m.c[i]) + m.w
    poisson = {
        "potential": m.dx(m.eps * F.inner(grad(m.phi), grad(m.dphi))),
        "electroneutrality": m.dx(-(q["F"] * charge * m.dphi)),
    }
    RT = q["R"] * q["T"]
    nernst_planck = {
        "diffusion": m.dx(m.species_sum(
            lambda i: DIFFUSIVITIES[i] * q["D_ref"] * F.inner(grad(m.c[i]), grad(m.dc[i]))
        )),
        "convection": m.dx(m.species_sum(
            lambda i: VALENCES[i] * q["F"] / RT * m.flux_term(i, m.phi)
        )),
        "debye_0th": m.dx(m.species_sum(lambda i: m.flux_term(i, m.ln_gamma_0(i)))),
        "debye_1st": m.dx(m.species_sum(lambda i: m.flux_term(i, m.ln_gamma_1(i)))),
    }
    h = "1/2"
    expected = _fractions({
        "pi": [
            ((0, -1, 0, 0, -1, 1, 1, 0, 0), 0.02585),
            ((h, "-1/2", 0, "-1/2", h, 0, 0, 1, 0), 0.0738),
            ((h, "-3/2", 0, "-3/2", h, 0, 0, 0, 1), 13.4),
        ],
        "groups": {
            "poisson": {
                "reference_factor": ((0, 2, 0, 1, 0, 0, 0, -1, 0), 0.08854),
                "terms": {
                    "potential": ((0,) * 9, 1.0),
                    "electroneutrality": ((1, -1, 0, -1, 1, 0, 0, 2, 0), 0.005449),
                },
            },
            "nernst_planck": {
                "reference_factor": ((2, 0, 1, 0, 0, 0, 0, -1, 0), 2500.0),
                "terms": {
                    "diffusion": ((0,) * 9, 1.0),
                    "convection": ((0, 1, 0, 0, 1, -1, -1, 0, 0), 38.68),
                    "debye_0th": ((h, 0, 0, "-3/2", 2, "-3/2", "-3/2", 0, 1), 3213.0),
                    "debye_1st": ((1, 0, 0, -2, 3, -2, -2, 1, 1), 1475.0),
                },
            },
        },
    })
    return Scenario(
        "pnp",
        m.quantities,
        d,
        {**{c.name: c for c in m.c}, "φ": m.phi, "w": m.w},
        {**{dc.name: dc for dc in m.dc}, "dφ": m.dphi},
        m.mapping,
        (
            TermGroup("poisson", poisson, "potential"),
            TermGroup("nernst_planck", nernst_planck, "diffusion"),
        ),
        expected,
    )


def unexpanded_debye_term():
    """The Debye flux with the full extended Debye-Hückel denominator."""
    m = _Model()
    term = m.dx(m.species_sum(lambda i: m.flux_term(i, m.ln_gamma_full(i))))
    return term, m.quantities, m.mapping


def debye_beta(order: int, i: int, ionic_strength: float) -> float:
    """Dimensionless Debye-Hückel coefficients in the normalized Nernst-Planck form.

    ``order`` 0 gives -(sqrt(2) / (8 pi eps_r^(3/2))) z_i^2 sqrt(I) and
    order 1 gives the matching linear-in-radius counterpart, with I the
    dimensionless ionic strength.
    """
    z = VALENCES[i]
    pre = math.sqrt(2) / (8 * math.pi * EPS_R**1.5)
    if order == 0:
        return -pre * z**2 * math.sqrt(ionic_strength)
    if order == 1:
        return pre * math.sqrt(2 / EPS_R) * RADII[i] * z**2 * ionic_strength
    raise ValueError("order must be 0 or 1")
