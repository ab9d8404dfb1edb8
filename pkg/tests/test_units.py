import math

import pytest
from hypothesis import given, strategies as st

from dimform.dimension import DIMENSIONLESS, Dimension
from dimform.units import (
    PREFIXES,
    REGISTRY,
    UnitError,
    UnknownUnitError,
    dims_equivalent,
    make_quantity,
    parse_unit,
    render_base_unit,
)

TABLE = {
    "N": (0, 0, 1, 0, 1, 0, -2),
    "J": (0, 0, 2, 0, 1, 0, -2),
    "W": (0, 0, 2, 0, 1, 0, -3),
    "Pa": (0, 0, -1, 0, 1, 0, -2),
    "Hz": (0, 0, 0, 0, 0, 0, -1),
    "C": (0, 1, 0, 0, 0, 0, 1),
    "V": (0, -1, 2, 0, 1, 0, -3),
    "Ω": (0, -2, 2, 0, 1, 0, -3),
}


@pytest.mark.parametrize("symbol,exps", TABLE.items())
def test_derived_units(symbol, exps):
    u = parse_unit(symbol)
    assert u.dimension == Dimension(exps)
    assert u.scale_to_base == 1.0


def test_examples():
    u = parse_unit("mm^2/s")
    assert u.dimension == Dimension(L=2, T=-1)
    assert math.isclose(u.scale_to_base, 1e-6, rel_tol=1e-15)
    one = parse_unit("1")
    assert one.dimension == DIMENSIONLESS and one.scale_to_base == 1.0


def test_grammar():
    assert parse_unit("J/(K*mol)").dimension == Dimension(L=2, M=1, T=-2, Θ=-1, N=-1)
    assert parse_unit("m/s/s").dimension == Dimension(L=1, T=-2)
    assert parse_unit(" kg * m ^ 2 ").dimension == Dimension(M=1, L=2)
    assert parse_unit("m^(1/2)").dimension == Dimension(L="1/2")
    assert parse_unit("(m/s)^-2").dimension == Dimension(L=-2, T=2)
    assert parse_unit("1/s").dimension == Dimension(T=-1)


@pytest.mark.parametrize("text", ["furlong", "m^x", "m^0.5", "2*m", "(m", "m)", "", "m//s", "m^(1/0)", "kkg"])
def test_bad_units(text):
    with pytest.raises(UnitError):
        parse_unit(text)


def test_unknown_symbol_error_type():
    with pytest.raises(UnknownUnitError, match="furlong"):
        parse_unit("furlong")


def test_prefixes_and_gram():
    assert parse_unit("GPa").scale_to_base == 1e9
    assert parse_unit("mg").scale_to_base == pytest.approx(1e-6)
    assert parse_unit("µm").scale_to_base == parse_unit("μm").scale_to_base == 1e-6
    assert parse_unit("Qm").scale_to_base == 1e30
    assert parse_unit("dam").scale_to_base == 10.0
    # "min" is a unit, not milli-inch
    assert parse_unit("min").scale_to_base == 60.0
    assert len({k for k in PREFIXES if k != "μ"}) == 24


def test_make_quantity_examples():
    assert make_quantity("t_ref", 1 / 60, "min").base_value == pytest.approx(1.0, rel=1e-15)
    assert make_quantity("l_ref", 1, "angstrom").base_value == 1e-10
    assert make_quantity("x", 0, "m").base_value == 0


def test_base_value_invariance():
    a = make_quantity("ν", 1000, "mm^2/s")
    b = make_quantity("ν", 0.001, "m^2/s")
    assert math.isclose(a.base_value, b.base_value, rel_tol=1e-15)


def test_quantity_validation():
    with pytest.raises(ValueError):
        make_quantity("not a name", 1, "m")
    with pytest.raises(ValueError):
        make_quantity("x", math.inf, "m")
    with pytest.raises(UnitError):
        make_quantity("x", 1, "parsec")


def test_dims_equivalent():
    assert dims_equivalent(parse_unit("V/m^2").dimension, parse_unit("V").dimension * parse_unit("m").dimension ** -2)
    assert dims_equivalent(parse_unit("J").dimension, parse_unit("N*m").dimension)
    assert not dims_equivalent(parse_unit("Pa").dimension, parse_unit("J").dimension)


@pytest.mark.parametrize("symbol", sorted(REGISTRY))
def test_render_round_trip(symbol):
    unit = REGISTRY[symbol]
    back = parse_unit(render_base_unit(unit.dimension))
    assert back.dimension == unit.dimension
    assert back.scale_to_base == 1.0


def test_render_examples():
    assert render_base_unit(parse_unit("Pa").dimension) == "kg/(m*s^2)"
    assert render_base_unit(parse_unit("V").dimension) == "kg*m^2/(A*s^3)"
    assert render_base_unit(DIMENSIONLESS) == "1"


@given(
    st.sampled_from(sorted(p for p in PREFIXES)),
    st.sampled_from(sorted(s for s in REGISTRY if s != "kg")),
    st.floats(min_value=1e-3, max_value=1e3),
)
def test_prefix_representation_invariance(prefix, symbol, value):
    try:
        prefixed = make_quantity("q", value, prefix + symbol)
    except UnitError:
        return
    if prefixed.unit.scale_to_base != PREFIXES[prefix] * REGISTRY[symbol].scale_to_base:
        # the longest-match rule resolved the text to a different unit
        return
    plain = make_quantity("q", value * PREFIXES[prefix], symbol)
    assert math.isclose(prefixed.base_value, plain.base_value, rel_tol=4e-16)
