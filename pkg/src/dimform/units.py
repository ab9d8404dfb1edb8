"""Unit registry, unit-expression parser and the Quantity reference scale.

Unit expressions follow a small grammar::

    unit     := term (('*' | '/') term)*
    term     := symbol ('^' exponent)? | '(' unit ')' ('^' exponent)? | '1'
    exponent := integer | '(' integer '/' positive-integer ')'

Symbols are an optional SI prefix followed by a registered unit symbol,
resolved by longest match and case-sensitive.  Division is left-associative,
so ``a/b/c`` means ``a * b^-1 * c^-1``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .dimension import DIMENSIONLESS, Dimension, dim_mul, dim_pow


class UnitError(ValueError):
    """Raised for unknown symbols or malformed unit expressions."""


class UnknownUnitError(UnitError):
    pass


@dataclass(frozen=True)
class Unit:
    dimension: Dimension
    scale_to_base: float
    text: str = ""

    def __post_init__(self):
        if not (self.scale_to_base > 0 and math.isfinite(self.scale_to_base)):
            raise UnitError(f"unit scale must be positive and finite, got {self.scale_to_base}")

    def __str__(self) -> str:
        return self.text or render_base_unit(self.dimension)


PREFIXES: dict[str, float] = {
    "Q": 1e30, "R": 1e27, "Y": 1e24, "Z": 1e21, "E": 1e18, "P": 1e15,
    "T": 1e12, "G": 1e9, "M": 1e6, "k": 1e3, "h": 1e2, "da": 1e1,
    "d": 1e-1, "c": 1e-2, "m": 1e-3, "µ": 1e-6, "μ": 1e-6, "n": 1e-9,
    "p": 1e-12, "f": 1e-15, "a": 1e-18, "z": 1e-21, "y": 1e-24,
    "r": 1e-27, "q": 1e-30,
}

_L = Dimension(L=1)
_M = Dimension(M=1)
_T = Dimension(T=1)
_I = Dimension(I=1)

REGISTRY: dict[str, Unit] = {
    # base units
    "mol": Unit(Dimension(N=1), 1.0, "mol"),
    "A": Unit(_I, 1.0, "A"),
    "m": Unit(_L, 1.0, "m"),
    "cd": Unit(Dimension(J=1), 1.0, "cd"),
    "kg": Unit(_M, 1.0, "kg"),
    "K": Unit(Dimension(Θ=1), 1.0, "K"),
    "s": Unit(_T, 1.0, "s"),
    # gram exists so that prefixes on mass work (mg, Mg, ...)
    "g": Unit(_M, 1e-3, "g"),
    # derived units
    "N": Unit(Dimension(L=1, M=1, T=-2), 1.0, "N"),
    "J": Unit(Dimension(L=2, M=1, T=-2), 1.0, "J"),
    "W": Unit(Dimension(L=2, M=1, T=-3), 1.0, "W"),
    "Pa": Unit(Dimension(L=-1, M=1, T=-2), 1.0, "Pa"),
    "Hz": Unit(Dimension(T=-1), 1.0, "Hz"),
    "C": Unit(Dimension(I=1, T=1), 1.0, "C"),
    "V": Unit(Dimension(I=-1, L=2, M=1, T=-3), 1.0, "V"),
    "Ω": Unit(Dimension(I=-2, L=2, M=1, T=-3), 1.0, "Ω"),
    "ohm": Unit(Dimension(I=-2, L=2, M=1, T=-3), 1.0, "ohm"),
    "F": Unit(Dimension(I=2, L=-2, M=-1, T=4), 1.0, "F"),
    # non-SI units accepted alongside SI
    "min": Unit(_T, 60.0, "min"),
    "h": Unit(_T, 3600.0, "h"),
    "angstrom": Unit(_L, 1e-10, "angstrom"),
    "Å": Unit(_L, 1e-10, "Å"),
}

# kg already carries a prefix; prefixing happens on g instead.
_UNPREFIXABLE = {"kg"}


def lookup_symbol(symbol: str) -> Unit:
    """Resolve a possibly-prefixed unit symbol."""
    if symbol in REGISTRY:
        return REGISTRY[symbol]
    for prefix in sorted(PREFIXES, key=len, reverse=True):
        if symbol.startswith(prefix):
            rest = symbol[len(prefix):]
            if rest in REGISTRY and rest not in _UNPREFIXABLE:
                base = REGISTRY[rest]
                return Unit(base.dimension, PREFIXES[prefix] * base.scale_to_base, symbol)
    raise UnknownUnitError(f"unknown unit symbol {symbol!r}")


class _UnitParser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = self._tokenize(text)
        self.pos = 0

    def _tokenize(self, text: str) -> list[tuple[str, str, int]]:
        tokens = []
        i = 0
        while i < len(text):
            ch = text[i]
            if ch.isspace():
                i += 1
            elif ch in "*/^()":
                tokens.append(("op", ch, i))
                i += 1
            elif ch.isdigit() or (ch in "+-" and i + 1 < len(text) and text[i + 1].isdigit()):
                j = i + 1
                while j < len(text) and text[j].isdigit():
                    j += 1
                tokens.append(("int", text[i:j], i))
                i = j
            elif ch.isalpha() or ch in "µΩÅ":
                j = i + 1
                while j < len(text) and (text[j].isalpha() or text[j] in "µΩÅ"):
                    j += 1
                tokens.append(("sym", text[i:j], i))
                i = j
            else:
                raise UnitError(f"unexpected character {ch!r} at column {i + 1} in {text!r}")
        return tokens

    def peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def take(self, value: str | None = None):
        tok = self.peek()
        if tok is None or (value is not None and tok[1] != value):
            where = f"column {tok[2] + 1}" if tok else "end of input"
            raise UnitError(f"expected {value or 'token'!r} at {where} in {self.text!r}")
        self.pos += 1
        return tok

    def parse(self) -> tuple[Dimension, float]:
        if not self.tokens:
            raise UnitError("empty unit expression")
        result = self.unit()
        if self.peek() is not None:
            raise UnitError(f"unexpected {self.peek()[1]!r} at column {self.peek()[2] + 1} in {self.text!r}")
        return result

    def unit(self) -> tuple[Dimension, float]:
        dim, scale = self.term()
        while (tok := self.peek()) is not None and tok[1] in "*/":
            self.take()
            d2, s2 = self.term()
            if tok[1] == "*":
                dim, scale = dim_mul(dim, d2), scale * s2
            else:
                dim, scale = dim_mul(dim, dim_pow(d2, -1)), scale / s2
        return dim, scale

    def term(self) -> tuple[Dimension, float]:
        tok = self.peek()
        if tok is None:
            raise UnitError(f"unexpected end of unit expression {self.text!r}")
        kind, value, col = tok
        if kind == "int":
            self.take()
            if value != "1":
                raise UnitError(f"only '1' may appear as a bare number (column {col + 1} in {self.text!r})")
            return DIMENSIONLESS, 1.0
        if value == "(":
            self.take()
            dim, scale = self.unit()
            self.take(")")
        elif kind == "sym":
            self.take()
            unit = lookup_symbol(value)
            dim, scale = unit.dimension, unit.scale_to_base
        else:
            raise UnitError(f"unexpected {value!r} at column {col + 1} in {self.text!r}")
        if (nxt := self.peek()) is not None and nxt[1] == "^":
            self.take()
            r = self.exponent()
            dim = dim_pow(dim, r)
            scale = scale ** float(r)
        return dim, scale

    def exponent(self) -> Fraction:
        tok = self.peek()
        if tok is None:
            raise UnitError(f"missing exponent in {self.text!r}")
        if tok[0] == "int":
            self.take()
            return Fraction(int(tok[1]))
        if tok[1] == "(":
            self.take()
            num = self.take()
            if num[0] != "int":
                raise UnitError(f"exponent must be rational, got {num[1]!r} in {self.text!r}")
            self.take("/")
            den = self.take()
            if den[0] != "int" or int(den[1]) <= 0:
                raise UnitError(f"exponent denominator must be a positive integer in {self.text!r}")
            self.take(")")
            return Fraction(int(num[1]), int(den[1]))
        raise UnitError(f"exponent must be rational, got {tok[1]!r} in {self.text!r}")


def parse_unit(text: str) -> Unit:
    """Parse a unit expression such as ``"mm^2/s"`` or ``"J/(K*mol)"``."""
    dim, scale = _UnitParser(text).parse()
    return Unit(dim, scale, text.strip())


# (symbol, index into Dimension) ordered as they appear in rendered base units
_BASE_UNIT_ORDER = (("A", 1), ("K", 5), ("cd", 3), ("kg", 4), ("m", 2), ("mol", 0), ("s", 6))


def render_base_unit(dim: Dimension) -> str:
    """Render a dimension in coherent SI base units, e.g. ``kg/(m*s^2)``."""
    num, den = [], []
    for sym, idx in _BASE_UNIT_ORDER:
        e = dim[idx]
        if e > 0:
            num.append(_power(sym, e))
        elif e < 0:
            den.append(_power(sym, -e))
    top = "*".join(num) if num else "1"
    if not den:
        return top
    bottom = den[0] if len(den) == 1 else "(" + "*".join(den) + ")"
    return f"{top}/{bottom}"


def _power(sym: str, e: Fraction) -> str:
    if e == 1:
        return sym
    if e.denominator == 1:
        return f"{sym}^{e.numerator}"
    return f"{sym}^({e.numerator}/{e.denominator})"


@dataclass(frozen=True)
class Quantity:
    """A named reference scale: ``value`` expressed in ``unit``."""

    name: str
    value: float
    unit: Unit = field(compare=True)

    def __post_init__(self):
        if not self.name.isidentifier():
            raise ValueError(f"quantity name must be an identifier, got {self.name!r}")
        if not math.isfinite(self.value):
            raise ValueError(f"quantity {self.name!r} has non-finite value {self.value}")

    @property
    def dimension(self) -> Dimension:
        return self.unit.dimension

    @property
    def base_value(self) -> float:
        return self.value * self.unit.scale_to_base

    def __str__(self) -> str:
        return f"{self.name} = {self.value:g} {self.unit}"


def make_quantity(name: str, value: float, unit_text: str) -> Quantity:
    return Quantity(name, float(value), parse_unit(unit_text))


def dims_equivalent(a: Dimension, b: Dimension) -> bool:
    return a == b
