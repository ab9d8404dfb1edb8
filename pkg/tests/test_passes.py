from fractions import Fraction

import pytest

from dimform import form as F
from dimform.dimension import DIMENSIONLESS, Dimension, dim_mul, dim_pow
from dimform.form import Op
from dimform.passes import (
    AlreadyTransformedError,
    DimensionalMismatchAcrossTerms,
    InconsistentFactors,
    Mapping,
    NonHomogeneousArgument,
    UnknownQuantityError,
    UnknownReferenceTerm,
    UnmappedTerminalError,
    factorize,
    factorize_terms,
    get_dimension,
    normalize,
    transform,
)
from dimform.scenarios import pnp
from dimform.units import make_quantity

l_ref = make_quantity("l_ref", 2.0, "m")
f_ref = make_quantity("f_ref", 3.0, "N/m^2")
u_ref = make_quantity("u_ref", 0.5, "mm")
Q = [l_ref, f_ref, u_ref]


def _mapping(d, **fields):
    entries = {}
    for name, (ctor, shape) in fields.items():
        entries[ctor(name, shape)] = F.quantity(u_ref) * ctor(name, shape)
    return Mapping(entries, length=l_ref, dim=d)


def test_facet_measure_scales_with_d_minus_1():
    u = F.field("u", (3,))
    f = F.field("f", (3,))
    mapping = Mapping({u: F.quantity(u_ref) * u, f: F.quantity(f_ref) * f}, length=l_ref, dim=3)
    term = factorize(transform(F.ds(F.inner(f, u), 3), mapping), Q)
    assert term.factor == (2, 1, 1)
    term = factorize(transform(F.dx(F.inner(f, u), 3), mapping), Q)
    assert term.factor == (3, 1, 1)


def test_transform_rewrites_gradients():
    u = F.field("u")
    mapping = Mapping({u: F.quantity(u_ref) * u}, length=l_ref, dim=2)
    out = transform(F.grad(u, 2), mapping)
    assert out.op is Op.DIVISION
    assert out.children[1] == F.quantity(l_ref)
    assert out.children[0] == F.grad(F.quantity(u_ref) * u, 2)
    assert out.transformed


def test_transform_does_not_mark_input():
    u = F.field("u")
    e = F.grad(u, 2)
    transform(e, Mapping({u: u}, length=l_ref, dim=2))
    assert not e.transformed


def test_second_transform_rejected():
    u = F.field("u")
    mapping = Mapping({u: F.quantity(u_ref) * u}, length=l_ref, dim=2)
    once = transform(F.dx(u, 2), mapping)
    with pytest.raises(AlreadyTransformedError):
        transform(once, mapping)
    assert transform(once, Mapping({u: u})) is once


def test_unmapped_terminal():
    u, v = F.field("u"), F.field("v")
    with pytest.raises(UnmappedTerminalError, match="'v'"):
        transform(u * v, Mapping({u: u}))
    with pytest.raises(UnmappedTerminalError):
        transform(F.grad(u, 2), Mapping({u: u}))


def test_mapping_shape_checked():
    u = F.field("u", (2,))
    with pytest.raises(F.ShapeError):
        Mapping({u: F.field("w")})


def test_sqrt_and_det_rules():
    u = F.field("u")
    e = F.sqrt(F.quantity(f_ref) * u)
    assert factorize(e, Q).factor == (0, Fraction(1, 2), 0)
    m = F.field("m", (3, 3))
    e = F.det(F.quantity(l_ref) * m)
    assert factorize(e, Q).factor == (3, 0, 0)


def test_ln_needs_quantity_free_argument():
    u = F.field("u")
    assert factorize(F.ln(u), Q).factor == (0, 0, 0)
    with pytest.raises(NonHomogeneousArgument):
        factorize(F.ln(F.quantity(l_ref) / F.quantity(u_ref) * u), Q)


def test_unknown_quantity():
    other = make_quantity("g", 1.0, "s")
    with pytest.raises(UnknownQuantityError):
        factorize(F.quantity(other), Q)


def test_residual_strips_quantities():
    u = F.field("u")
    term = factorize(F.quantity(f_ref) * u / F.quantity(l_ref), Q)
    assert not any(n.op is Op.QUANTITY for n in F.walk(term.residual))
    assert term.factor_value == pytest.approx(1.5)


def _dimension(e):
    """Dimension by direct propagation of quantity dimensions."""
    op = e.op
    if op is Op.QUANTITY:
        return e.data.dimension
    if op in F.TERMINALS:
        return DIMENSIONLESS
    kids = [_dimension(c) for c in e.children]
    if op in (Op.PRODUCT, Op.INNER, Op.DOT):
        return dim_mul(*kids)
    if op is Op.DIVISION:
        return dim_mul(kids[0], dim_pow(kids[1], -1))
    if op is Op.POWER:
        return dim_pow(kids[0], e.data)
    if op is Op.SQRT:
        return dim_pow(kids[0], Fraction(1, 2))
    if op is Op.DET:
        return dim_pow(kids[0], e.children[0].shape[0])
    if op is Op.LN:
        return DIMENSIONLESS
    if op is Op.SUM:
        assert kids[0] == kids[1]
    return kids[0]


def test_factor_dimension_agrees_with_direct_propagation(scenarios):
    for name in ("navier_stokes", "neo_hooke", "pnp"):
        s = scenarios[name]
        for group in s.groups:
            for tname, e in group.terms.items():
                t = transform(e, s.mapping)
                expected = _dimension(t)
                assert get_dimension(e, s.quantities, s.mapping) == expected, (name, tname)


def test_normalize_errors():
    u = F.field("u")
    terms = {"a": F.quantity(l_ref) * u, "b": F.quantity(f_ref) * u}
    fz = factorize_terms(terms, Q, Mapping({u: u}))
    with pytest.raises(DimensionalMismatchAcrossTerms):
        normalize(fz, "a", Q)
    with pytest.raises(UnknownReferenceTerm):
        normalize(fz, "missing", Q)


def test_term_name_attached_to_errors():
    u = F.field("u")
    terms = {"ok": u, "bad": F.quantity(l_ref) * u + F.quantity(u_ref) * u}
    with pytest.raises(InconsistentFactors) as info:
        factorize_terms(terms, Q, Mapping({u: u}))
    assert info.value.term == "bad"


def test_reference_coefficient_is_one():
    u = F.field("u")
    terms = {"a": F.quantity(l_ref) * u, "b": F.quantity(u_ref) * u}
    ng = normalize(factorize_terms(terms, Q, Mapping({u: u})), "a", Q)
    assert ng.terms["a"].coefficient_exponents == (0, 0, 0)
    assert ng.terms["a"].coefficient_value == 1.0
    assert ng.terms["b"].coefficient_value == pytest.approx(0.5e-3 / 2.0)


def test_unexpanded_debye_term_is_not_homogeneous():
    term, quantities, mapping = pnp.unexpanded_debye_term()
    with pytest.raises(InconsistentFactors, match="Different factors"):
        factorize(transform(term, mapping), quantities)


def test_dimension_class_sanity():
    assert dim_pow(Dimension(L=2), Fraction(1, 2)) == Dimension(L=1)
