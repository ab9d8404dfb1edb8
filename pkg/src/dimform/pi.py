"""Dimensional matrix and Buckingham Pi groups."""
from __future__ import annotations

import math
import unicodedata
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .dimension import BASE_SYMBOLS, Dimension, format_fraction
from .linalg import integer_normalized, matvec, nullspace_rational, rank
from .units import Quantity


class DuplicateQuantityError(ValueError):
    pass


@dataclass(frozen=True)
class DimensionalMatrix:
    entries: tuple[tuple[Fraction, ...], ...]  # 7 rows, one column per quantity
    column_order: tuple[str, ...]

    def column(self, j: int) -> Dimension:
        return Dimension(row[j] for row in self.entries)

    def nonzero_rows(self) -> list[tuple[str, tuple[Fraction, ...]]]:
        return [(sym, row) for sym, row in zip(BASE_SYMBOLS, self.entries) if any(row)]

    def apply(self, exponents: Sequence) -> Dimension:
        """Dimension of the monomial with the given exponents."""
        return Dimension(matvec(self.entries, exponents))

    @property
    def rank(self) -> int:
        return rank(self.entries) if self.column_order else 0


@dataclass(frozen=True)
class PiGroup:
    exponents: tuple[Fraction, ...]
    value: float
    names: tuple[str, ...]

    @property
    def expression(self) -> str:
        return render_monomial(self.names, self.exponents)

    @property
    def integer_exponents(self) -> list[int]:
        return integer_normalized(self.exponents)


def check_unique(quantities: Sequence[Quantity]) -> None:
    seen = set()
    for q in quantities:
        if q.name in seen:
            raise DuplicateQuantityError(f"duplicate quantity name {q.name!r}")
        seen.add(q.name)


def dimensional_matrix(quantities: Sequence[Quantity]) -> DimensionalMatrix:
    check_unique(quantities)
    rows = tuple(tuple(q.dimension[i] for q in quantities) for i in range(7))
    return DimensionalMatrix(rows, tuple(q.name for q in quantities))


def monomial_value(quantities: Sequence[Quantity], exponents: Sequence[Fraction]) -> float:
    """Product of base values raised to the exponents, skipping zero exponents."""
    value = 1.0
    for q, e in zip(quantities, exponents):
        if e != 0:
            value *= q.base_value ** float(e) if e.denominator != 1 else q.base_value ** int(e)
    return value


def buckingham_pi(quantities: Sequence[Quantity]) -> list[PiGroup]:
    """One group per kernel basis vector of the dimensional matrix.

    Exponents are the raw free-variable-set-to-one basis, which may be
    fractional (square roots of quantities appear in electrochemistry).
    """
    m = dimensional_matrix(quantities)
    basis = nullspace_rational(m.entries, len(quantities))
    names = m.column_order
    return [PiGroup(tuple(v), monomial_value(quantities, v), names) for v in basis]


# rendering ------------------------------------------------------------------

def _sort_key(name: str) -> str:
    # Greek letters sort by their spelled-out name so that ρ files under r.
    out = []
    for ch in name:
        if "Ͱ" <= ch <= "Ͽ":
            spelled = unicodedata.name(ch, ch).split()[-1].lower()
            out.append(spelled)
        else:
            out.append(ch)
    return "".join(out)


def _power(name: str, e: Fraction) -> str:
    if e == 1:
        return name
    if e.denominator == 1:
        return f"{name}^{e.numerator}"
    return f"{name}^({format_fraction(e)})"


def render_monomial(names: Sequence[str], exponents: Sequence[Fraction]) -> str:
    """Render ``q1^a q2^b ...`` as ``num/den``; ``1`` for the empty monomial."""
    pairs = sorted(
        ((n, Fraction(e)) for n, e in zip(names, exponents) if e != 0),
        key=lambda p: _sort_key(p[0]),
    )
    num = [_power(n, e) for n, e in pairs if e > 0]
    den = [_power(n, -e) for n, e in pairs if e < 0]
    top = " ".join(num) if num else "1"
    if not den:
        return top
    bottom = den[0] if len(den) == 1 else "(" + " ".join(den) + ")"
    return f"{top}/{bottom}"


def format_sig(value: float, digits: int = 4) -> str:
    """Format with ``digits`` significant digits, trimming trailing zeros."""
    if value == 0 or not math.isfinite(value):
        return repr(value) if not math.isfinite(value) else "0"
    text = f"{value:.{digits}g}"
    if "e" in text:
        mant, exp = text.split("e")
        return f"{mant}e{int(exp)}"
    return text


def render_tables(quantities: Sequence[Quantity], groups: Sequence[PiGroup] | None = None) -> str:
    """Quantity table, nonzero-row dimension matrix and group table as text."""
    from .units import render_base_unit

    if groups is None:
        groups = buckingham_pi(quantities)
    m = dimensional_matrix(quantities)
    lines = ["Quantities"]
    width = max((len(q.name) for q in quantities), default=4)
    for q in quantities:
        lines.append(
            f"  {q.name:<{width}}  {format_sig(q.value)} {q.unit.text:<12}"
            f"  {format_sig(q.base_value)} {render_base_unit(q.dimension)}"
        )
    lines.append("Dimension matrix")
    cols = [f"{n:>8}" for n in m.column_order]
    lines.append("  " + "Dim." + "".join(cols))
    for sym, row in m.nonzero_rows():
        lines.append("  " + f"{sym:<4}" + "".join(f"{format_fraction(x):>8}" for x in row))
    lines.append("Dimensionless groups")
    for i, g in enumerate(groups, 1):
        lines.append(f"  Pi_{i}  {g.expression}  {format_sig(g.value)}")
    return "\n".join(lines)
