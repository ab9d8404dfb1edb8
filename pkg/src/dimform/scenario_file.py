"""Line-oriented scenario files.

::

    [scenario]
    name = navier_stokes

    [dimension]
    d = 2

    [quantities]
    ρ = 5000 kg/m^3

    [fields]
    v: vector

    [test_fields]
    dv: vector

    [mapping]
    domain = l_ref
    v = v_ref * v

    [terms.momentum]
    reference = convection
    convection = inner(dv, ρ * dot(v, grad(v))) * dx

Blank lines and lines starting with ``#`` are ignored.  Sections may appear
in any order as long as names are declared before they are used.
"""
from __future__ import annotations

import math
import re
from pathlib import Path

from . import form as F
from .form import Expr, ShapeError
from .passes import Mapping
from .scenarios.base import Scenario, TermGroup
from .syntax import FormSyntaxError, UndeclaredIdentifierError, format_number, parse_expr, to_text
from .units import Quantity, UnitError, parse_unit

_SECTION = re.compile(r"^\[([A-Za-z_][\w.]*)\]\s*$")
_SIMPLE_SECTIONS = ("scenario", "dimension", "quantities", "fields", "test_fields", "mapping")


class ScenarioSyntaxError(FormSyntaxError):
    pass


def _split(raw: str, sep: str, lineno: int):
    if sep not in raw:
        raise ScenarioSyntaxError(f"expected '{sep}' in {raw.strip()!r}", lineno, 1)
    idx = raw.index(sep)
    key = raw[:idx].strip()
    value = raw[idx + 1:]
    col = idx + 2 + (len(value) - len(value.lstrip()))
    if not key.isidentifier():
        start = len(raw) - len(raw.lstrip()) + 1
        raise ScenarioSyntaxError(f"{key!r} is not a valid name", lineno, start)
    return key, value.strip(), col


class _Reader:
    def __init__(self, text: str):
        self.name: str | None = None
        self.d: int | None = None
        self.quantities: dict[str, Quantity] = {}
        self.fields: dict[str, Expr] = {}
        self.tests: dict[str, Expr] = {}
        self.mapping_lines: list[tuple[str, str, int, int]] = []
        self.domain: tuple[str, int, int] | None = None
        self.groups: dict[str, dict] = {}
        self.section: str | None = None
        self.text = text

    def names(self) -> dict[str, Expr]:
        out: dict[str, Expr] = {}
        out.update({n: F.quantity(q) for n, q in self.quantities.items()})
        out.update(self.fields)
        out.update(self.tests)
        return out

    def declare(self, name: str, lineno: int):
        if name in self.quantities or name in self.fields or name in self.tests:
            raise ScenarioSyntaxError(f"{name!r} is declared twice", lineno, 1)

    def read(self) -> Scenario:
        for lineno, raw in enumerate(self.text.splitlines(), 1):
            stripped = raw.strip()
            if not stripped or stripped.startswith("#"):
                continue
            m = _SECTION.match(stripped)
            if m:
                self.enter(m.group(1), lineno)
                continue
            if self.section is None:
                raise ScenarioSyntaxError("content before the first [section]", lineno, 1)
            getattr(self, "line_" + self.section.split(".")[0])(raw, lineno)
        return self.finish()

    def enter(self, section: str, lineno: int):
        if section.startswith("terms."):
            group = section[len("terms."):]
            if not group.isidentifier():
                raise ScenarioSyntaxError(f"invalid term group name {group!r}", lineno, 2)
            if group in self.groups:
                raise ScenarioSyntaxError(f"term group {group!r} defined twice", lineno, 2)
            self.groups[group] = {"terms": {}, "reference": None, "line": lineno}
            self.current_group = group
            self.section = "terms"
        elif section in _SIMPLE_SECTIONS:
            self.section = section
        else:
            raise ScenarioSyntaxError(f"unknown section [{section}]", lineno, 2)

    def line_scenario(self, raw: str, lineno: int):
        key, value, col = _split(raw, "=", lineno)
        if key != "name":
            raise ScenarioSyntaxError(f"unknown key {key!r} in [scenario]", lineno, 1)
        self.name = value

    def line_dimension(self, raw: str, lineno: int):
        key, value, col = _split(raw, "=", lineno)
        if key != "d":
            raise ScenarioSyntaxError(f"unknown key {key!r} in [dimension]", lineno, 1)
        if value not in ("1", "2", "3"):
            raise ScenarioSyntaxError(f"d must be 1, 2 or 3, got {value!r}", lineno, col)
        self.d = int(value)

    def line_quantities(self, raw: str, lineno: int):
        name, rest, col = _split(raw, "=", lineno)
        self.declare(name, lineno)
        parts = rest.split(None, 1)
        if len(parts) != 2:
            raise ScenarioSyntaxError(f"quantity {name!r} needs a value and a unit", lineno, col)
        number, unit_text = parts
        try:
            value = float(number)
        except ValueError:
            raise ScenarioSyntaxError(f"invalid number {number!r}", lineno, col) from None
        if not math.isfinite(value):
            raise ScenarioSyntaxError(f"quantity {name!r} has non-finite value", lineno, col)
        try:
            unit = parse_unit(unit_text)
        except UnitError as exc:
            unit_col = col + len(number) + (len(rest) - len(number) - len(rest[len(number):].lstrip()))
            raise ScenarioSyntaxError(str(exc), lineno, unit_col) from exc
        self.quantities[name] = Quantity(name, value, unit)

    def _shape_line(self, raw: str, lineno: int, target: dict, maker):
        name, kind, col = _split(raw, ":", lineno)
        self.declare(name, lineno)
        if self.d is None:
            raise ScenarioSyntaxError("[dimension] must come before fields", lineno, 1)
        try:
            shape = F.shape_from_kind(kind, self.d)
        except ShapeError as exc:
            raise ScenarioSyntaxError(str(exc), lineno, col) from None
        target[name] = maker(name, shape)

    def line_fields(self, raw: str, lineno: int):
        self._shape_line(raw, lineno, self.fields, F.field)

    def line_test_fields(self, raw: str, lineno: int):
        self._shape_line(raw, lineno, self.tests, F.test)

    def line_mapping(self, raw: str, lineno: int):
        key, value, col = _split(raw, "=", lineno)
        if key == "domain":
            self.domain = (value, lineno, col)
        else:
            self.mapping_lines.append((key, value, lineno, col))

    def line_terms(self, raw: str, lineno: int):
        key, value, col = _split(raw, "=", lineno)
        group = self.groups[self.current_group]
        if key == "reference":
            group["reference"] = (value, lineno, col)
            return
        if key in group["terms"]:
            raise ScenarioSyntaxError(f"term {key!r} defined twice", lineno, 1)
        group["terms"][key] = parse_expr(value, self.names(), self.d, line=lineno, column=col)

    def finish(self) -> Scenario:
        if self.name is None:
            raise ScenarioSyntaxError("missing [scenario] name", 1, 1)
        if self.d is None:
            raise ScenarioSyntaxError("missing [dimension] d", 1, 1)
        names = self.names()
        entries = {}
        for key, value, lineno, col in self.mapping_lines:
            target = self.fields.get(key) or self.tests.get(key)
            if target is None:
                raise UndeclaredIdentifierError(f"mapping target {key!r} is not a declared field", lineno, 1)
            rhs = parse_expr(value, names, self.d, line=lineno, column=col)
            if rhs.shape != target.shape:
                raise ScenarioSyntaxError(f"mapping for {key!r} changes its shape", lineno, col)
            entries[target] = rhs
        length = None
        if self.domain is not None:
            value, lineno, col = self.domain
            if value not in self.quantities:
                raise UndeclaredIdentifierError(f"undeclared quantity {value!r}", lineno, col)
            length = self.quantities[value]
        groups = []
        for gname, g in self.groups.items():
            if g["reference"] is None:
                raise ScenarioSyntaxError(f"term group {gname!r} has no reference", g["line"], 1)
            ref, lineno, col = g["reference"]
            if ref not in g["terms"]:
                raise ScenarioSyntaxError(f"reference {ref!r} is not a term of group {gname!r}", lineno, col)
            groups.append(TermGroup(gname, g["terms"], ref))
        return Scenario(
            self.name,
            tuple(self.quantities.values()),
            self.d,
            dict(self.fields),
            dict(self.tests),
            Mapping(entries, length=length, dim=self.d),
            tuple(groups),
        )


def parse_scenario_text(text: str) -> Scenario:
    return _Reader(text).read()


def parse_scenario(path) -> Scenario:
    return parse_scenario_text(Path(path).read_text(encoding="utf-8"))


def serialize_scenario(s: Scenario) -> str:
    lines = ["[scenario]", f"name = {s.name}", "", "[dimension]", f"d = {s.dim}", "", "[quantities]"]
    lines += [f"{q.name} = {format_number(q.value)} {q.unit.text}" for q in s.quantities]
    lines += ["", "[fields]"]
    lines += [f"{n}: {F.shape_kind(e.shape)}" for n, e in s.fields.items()]
    if s.test_fields:
        lines += ["", "[test_fields]"]
        lines += [f"{n}: {F.shape_kind(e.shape)}" for n, e in s.test_fields.items()]
    lines += ["", "[mapping]"]
    if s.mapping.length is not None:
        lines.append(f"domain = {s.mapping.length.name}")
    lines += [f"{k.name} = {to_text(v)}" for k, v in s.mapping.entries.items()]
    for g in s.groups:
        lines += ["", f"[terms.{g.name}]", f"reference = {g.reference}"]
        lines += [f"{n} = {to_text(e)}" for n, e in g.terms.items()]
    return "\n".join(lines) + "\n"
