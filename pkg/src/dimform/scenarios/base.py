"""The Scenario container shared by the built-in fixtures and scenario files."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

from ..form import Expr
from ..passes import Mapping
from ..units import Quantity


@dataclass(frozen=True)
class TermGroup:
    name: str
    terms: dict[str, Expr]
    reference: str


@dataclass(frozen=True)
class Scenario:
    name: str
    quantities: tuple[Quantity, ...]
    dim: int
    fields: dict[str, Expr]
    test_fields: dict[str, Expr]
    mapping: Mapping
    groups: tuple[TermGroup, ...]
    expected: dict[str, Any] = field(default_factory=dict, compare=False)

    def quantity(self, name: str) -> Quantity:
        for q in self.quantities:
            if q.name == name:
                return q
        raise KeyError(name)

    def group(self, name: str) -> TermGroup:
        for g in self.groups:
            if g.name == name:
                return g
        raise KeyError(f"no term group {name!r} in scenario {self.name!r}; have {[g.name for g in self.groups]}")
