from pathlib import Path

import pytest

import dimform
from dimform.scenario_file import (
    ScenarioSyntaxError,
    parse_scenario,
    parse_scenario_text,
    serialize_scenario,
)
from dimform.scenarios import SCENARIO_NAMES
from dimform.syntax import UndeclaredIdentifierError

DATA = Path(dimform.__file__).parent / "data"

SMALL = """\
[scenario]
name = heat

[dimension]
d = 2

[quantities]
k = 0.6 W/(m*K)
l_ref = 10 cm
T_ref = 300 K

[fields]
u: scalar

[test_fields]
du: scalar

[mapping]
domain = l_ref
u = T_ref * u
du = T_ref * du

[terms.heat]
reference = conduction
conduction = k * inner(grad(u), grad(du)) * dx
"""


@pytest.mark.parametrize("name", SCENARIO_NAMES)
def test_shipped_files_match_builtins(scenarios, name):
    parsed = parse_scenario(DATA / f"{name}.scn")
    assert parsed == scenarios[name]
    text = serialize_scenario(parsed)
    assert text == (DATA / f"{name}.scn").read_text(encoding="utf-8")
    assert serialize_scenario(parse_scenario_text(text)) == text


def test_small_file():
    s = parse_scenario_text(SMALL)
    assert s.name == "heat" and s.dim == 2
    assert [q.name for q in s.quantities] == ["k", "l_ref", "T_ref"]
    assert s.mapping.length.name == "l_ref"
    assert s.groups[0].reference == "conduction"
    assert parse_scenario_text(serialize_scenario(s)) == s


def test_comments_and_blank_lines():
    text = "# header\n\n" + SMALL.replace("[fields]", "[fields]\n# the temperature")
    assert parse_scenario_text(text) == parse_scenario_text(SMALL)


def test_unknown_unit():
    text = SMALL.replace("10 cm", "10 furlong")
    with pytest.raises(ScenarioSyntaxError) as info:
        parse_scenario_text(text)
    assert info.value.line == 9
    assert "furlong" in str(info.value)


def test_undeclared_identifier():
    text = SMALL.replace("k * inner", "k * w * inner")
    with pytest.raises(UndeclaredIdentifierError) as info:
        parse_scenario_text(text)
    assert info.value.line == 25
    assert info.value.column == 18
    assert "'w'" in str(info.value)


@pytest.mark.parametrize(
    "old,new",
    [
        ("d = 2", "d = 4"),
        ("[fields]", "[velocity]"),
        ("u: scalar", "u: tensor"),
        ("reference = conduction", "reference = missing"),
        ("T_ref = 300 K", "T_ref = 300"),
        ("T_ref = 300 K", "T_ref = abc K"),
        ("du: scalar", "u: scalar"),
        ("name = heat", "title = heat"),
    ],
)
def test_malformed(old, new):
    with pytest.raises(ScenarioSyntaxError):
        parse_scenario_text(SMALL.replace(old, new))


def test_missing_reference():
    with pytest.raises(ScenarioSyntaxError):
        parse_scenario_text(SMALL.replace("reference = conduction\n", ""))


def test_mapping_target_must_be_declared():
    with pytest.raises(UndeclaredIdentifierError):
        parse_scenario_text(SMALL.replace("u = T_ref * u", "q = T_ref * u"))
