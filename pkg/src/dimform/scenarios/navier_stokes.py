"""Incompressible Navier-Stokes in two dimensions."""
from __future__ import annotations

from fractions import Fraction

from .. import form as F
from ..passes import Mapping
from ..units import make_quantity
from .base import Scenario, TermGroup


def build() -> Scenario:
    d = 2
    quantities = (
        make_quantity("v_ref", 1, "m/s"),
        make_quantity("l_ref", 1, "m"),
        make_quantity("ρ", 5000, "kg/m^3"),
        make_quantity("ν", 1000, "mm^2/s"),
        make_quantity("g_ref", 10, "m/s^2"),
        make_quantity("p_ref", 5000, "Pa"),
        make_quantity("t_ref", 1 / 60, "min"),
    )
    v_ref, l_ref, rho, nu, g_ref, p_ref, t_ref = (F.quantity(q) for q in quantities)

    v, v0, b = (F.field(n, (d,)) for n in ("v", "v0", "b"))
    p = F.field("p")
    dv = F.test("dv", (d,))
    dp = F.test("dp")

    def D(x):
        return F.sym(F.grad(x))

    dx = lambda e: F.dx(e, d)  # noqa: E731
    terms = {
        "unsteady": dx(F.inner(dv, rho * (v - v0) / (t_ref * 0.1))),
        "convection": dx(F.inner(dv, rho * F.dot(v, F.grad(v)))),
        "viscous": dx(F.inner(D(dv), 2 * rho * nu * D(v))),
        "incompressibility": dx(F.inner(dp, F.div_(v))),
        "pressure": dx(-F.inner(F.div_(dv), p)),
        "force": dx(-F.inner(dv, rho * g_ref * b)),
    }
    mapping = Mapping(
        {v: v_ref * v, v0: v_ref * v0, p: p_ref * p, b: b, dv: v_ref * dv, dp: p_ref * dp},
        length=quantities[1],
        dim=d,
    )
    expected = {
        "pi": [
            ((-1, -1, 0, 1, 0, 0, 0), 0.001),
            ((-2, 1, 0, 0, 1, 0, 0), 10.0),
            ((-2, 0, -1, 0, 0, 1, 0), 1.0),
            ((1, -1, 0, 0, 0, 0, 1), 1.0),
        ],
        "groups": {
            "momentum": {
                "reference_factor": ((3, 1, 1, 0, 0, 0, 0), 5000.0),
                "terms": {
                    "unsteady": ((-1, 1, 0, 0, 0, 0, -1), 1.0),
                    "convection": ((0,) * 7, 1.0),
                    "viscous": ((-1, -1, 0, 1, 0, 0, 0), 0.001),
                    "incompressibility": ((-2, 0, -1, 0, 0, 1, 0), 1.0),
                    "pressure": ((-2, 0, -1, 0, 0, 1, 0), 1.0),
                    "force": ((-2, 1, 0, 0, 1, 0, 0), 10.0),
                },
            }
        },
    }
    expected = _fractions(expected)
    return Scenario(
        "navier_stokes",
        quantities,
        d,
        {"v": v, "v0": v0, "p": p, "b": b},
        {"dv": dv, "dp": dp},
        mapping,
        (TermGroup("momentum", terms, "convection"),),
        expected,
    )


def _fractions(obj):
    """Turn the integer tuples of an expected table into Fraction tuples."""
    if isinstance(obj, dict):
        return {k: _fractions(v) for k, v in obj.items()}
    if isinstance(obj, list):
        return [_fractions(x) for x in obj]
    if isinstance(obj, tuple) and len(obj) == 2 and isinstance(obj[0], tuple):
        return (tuple(Fraction(x) for x in obj[0]), obj[1])
    return obj
