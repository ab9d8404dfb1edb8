"""Physical dimensions as exact rational exponent vectors over the SI base.

The seven base dimensions are kept in the fixed order N, I, L, J, M, Θ, T
(amount of substance, electric current, length, luminous intensity, mass,
temperature, time).  Dimensions form a free abelian group under
multiplication, which we realise as vector addition in Q^7.
"""
from __future__ import annotations

from fractions import Fraction
from numbers import Rational
from typing import Iterable, Union

BASE_SYMBOLS = ("N", "I", "L", "J", "M", "Θ", "T")
BASE_NAMES = (
    "amount of substance",
    "electric current",
    "length",
    "luminous intensity",
    "mass",
    "temperature",
    "time",
)

RationalLike = Union[int, Fraction, str]


def as_fraction(value: RationalLike) -> Fraction:
    """Convert ``value`` to a Fraction, refusing floats.

    Floats are rejected on purpose: exponents must be exact.
    """
    if isinstance(value, bool):
        raise TypeError("boolean is not a rational exponent")
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    if isinstance(value, Rational):
        return Fraction(value.numerator, value.denominator)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"expected an exact rational, got {type(value).__name__}: {value!r}")


def format_fraction(value: Fraction) -> str:
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


class Dimension:
    """Immutable 7-vector of rational exponents.

    >>> velocity = Dimension(L=1, T=-1)
    >>> str(velocity * Dimension(T=1))
    'L^1'
    """

    __slots__ = ("_exponents",)

    def __init__(self, exponents: Iterable[RationalLike] | None = None, **by_symbol: RationalLike):
        values = [Fraction(0)] * 7
        if exponents is not None:
            exps = [as_fraction(e) for e in exponents]
            if len(exps) != 7:
                raise ValueError(f"a dimension has 7 exponents, got {len(exps)}")
            values = exps
        for key, val in by_symbol.items():
            idx = _symbol_index(key)
            values[idx] = as_fraction(val)
        object.__setattr__(self, "_exponents", tuple(values))

    def __setattr__(self, name, value):
        raise AttributeError("Dimension is immutable")

    @property
    def exponents(self) -> tuple[Fraction, ...]:
        return self._exponents

    def __iter__(self):
        return iter(self._exponents)

    def __getitem__(self, idx: int) -> Fraction:
        return self._exponents[idx]

    def __eq__(self, other) -> bool:
        if not isinstance(other, Dimension):
            return NotImplemented
        return self._exponents == other._exponents

    def __hash__(self) -> int:
        return hash(self._exponents)

    def __mul__(self, other: "Dimension") -> "Dimension":
        return dim_mul(self, other)

    def __truediv__(self, other: "Dimension") -> "Dimension":
        return dim_mul(self, dim_pow(other, -1))

    def __pow__(self, r: RationalLike) -> "Dimension":
        return dim_pow(self, r)

    def is_dimensionless(self) -> bool:
        return dim_is_dimensionless(self)

    def __str__(self) -> str:
        return render_dimension(self)

    def __repr__(self) -> str:
        return f"Dimension({', '.join(format_fraction(e) for e in self._exponents)})"


def _symbol_index(key: str) -> int:
    aliases = {"Theta": "Θ", "theta": "Θ", "TH": "Θ"}
    key = aliases.get(key, key)
    try:
        return BASE_SYMBOLS.index(key)
    except ValueError:
        raise KeyError(f"unknown base dimension {key!r}; expected one of {BASE_SYMBOLS}") from None


DIMENSIONLESS = Dimension()


def dim_mul(a: Dimension, b: Dimension) -> Dimension:
    return Dimension(x + y for x, y in zip(a.exponents, b.exponents))


def dim_pow(a: Dimension, r: RationalLike) -> Dimension:
    r = as_fraction(r)
    return Dimension(x * r for x in a.exponents)


def dim_is_dimensionless(a: Dimension) -> bool:
    return all(x == 0 for x in a.exponents)


def render_dimension(a: Dimension) -> str:
    """Render as base-symbol powers, zero exponents omitted ("L^1 M^1 T^-2")."""
    parts = []
    for sym, e in zip(BASE_SYMBOLS, a.exponents):
        if e == 0:
            continue
        exp = format_fraction(e) if e.denominator == 1 else f"({format_fraction(e)})"
        parts.append(f"{sym}^{exp}")
    return " ".join(parts) if parts else "1"
