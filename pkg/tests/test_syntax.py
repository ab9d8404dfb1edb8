import pytest

from dimform import form as F
from dimform.syntax import FormSyntaxError, UndeclaredIdentifierError, parse_expr, to_text
from dimform.units import make_quantity

D = 2
ρ = make_quantity("ρ", 1000, "kg/m^3")
t_ref = make_quantity("t_ref", 1, "s")
NAMES = {
    "v": F.field("v", (D,)),
    "v0": F.field("v0", (D,)),
    "p": F.field("p"),
    "dv": F.test("dv", (D,)),
    "dp": F.test("dp"),
    "E": F.field("E", (D, D)),
    "ρ": F.quantity(ρ),
    "t_ref": F.quantity(t_ref),
}

CANONICAL = [
    "inner(grad(v), grad(dv)) * dx",
    "inner(dv, ρ * (v - v0) / (t_ref * 0.1)) * dx",
    "dp * div(v) * dx",
    "-(p * div(dv)) * dx",
    "pow(p, 1/2) + ln(p) - 2 * tr(E)",
    "pow(p, -3/2) * det(E + Identity(2))",
    "inner(dv, dot(grad(v), v)) * ds",
    "abs(p) * sqrt(p) - tr(sym(transpose(E)))",
    "p - -2",
]


@pytest.mark.parametrize("text", CANONICAL)
def test_fixed_point(text):
    e = parse_expr(text, NAMES, D)
    out = to_text(e)
    assert parse_expr(out, NAMES, D) == e
    assert to_text(parse_expr(out, NAMES, D)) == out


def test_builder_round_trip():
    v, dv = NAMES["v"], NAMES["dv"]
    e = F.dx(-F.inner(dv, F.quantity(ρ) * F.dot(F.grad(v), v)), D)
    assert parse_expr(to_text(e), NAMES, D) == e


def test_measure_wraps_whole_expression():
    e = parse_expr("dp * p + dp * dx", NAMES, D)
    assert e.op is F.Op.MEASURE and e.children[0].op is F.Op.SUM


def test_precedence():
    e = parse_expr("p + p * p", NAMES, D)
    assert e.op is F.Op.SUM
    e = parse_expr("p / p / p", NAMES, D)
    assert e.children[0].op is F.Op.DIVISION


def test_undeclared_identifier_location():
    with pytest.raises(UndeclaredIdentifierError) as info:
        parse_expr("dp * w * dx", NAMES, D, line=7, column=12)
    assert info.value.line == 7
    assert info.value.column == 17
    assert "w" in info.value.detail


@pytest.mark.parametrize(
    "text",
    ["p +", "inner(v)", "pow(p, 0.5)", "p * * p", "(p", "foo(p)", "p @ p", "pow(p, 1/0)"],
)
def test_syntax_errors(text):
    with pytest.raises(FormSyntaxError):
        parse_expr(text, NAMES, D)


def test_shape_error_surfaces():
    with pytest.raises((FormSyntaxError, F.ShapeError)):
        parse_expr("v + p", NAMES, D)
