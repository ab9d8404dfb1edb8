"""Normalization of factorized terms by a reference factor."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping as MappingT, Sequence

from ..form import Expr
from ..pi import render_monomial
from ..units import Quantity
from ..pi import dimensional_matrix, monomial_value
from .errors import DimensionalMismatchAcrossTerms, PassError, UnknownReferenceTerm
from .factorize import Factor, FactorizedTerm


@dataclass(frozen=True)
class NormalizedTerm:
    coefficient_exponents: Factor
    coefficient_value: float
    residual: Expr
    names: tuple[str, ...]

    @property
    def expression(self) -> str:
        return render_monomial(self.names, self.coefficient_exponents)


@dataclass(frozen=True)
class NormalizedGroup:
    reference: str
    reference_factor: FactorizedTerm
    terms: dict[str, NormalizedTerm]


def normalize(
    factorized: MappingT[str, FactorizedTerm],
    reference_term: str,
    quantities: Sequence[Quantity],
) -> NormalizedGroup:
    """Divide every term by the factor of ``reference_term``.

    The quantity list supplies the dimensional matrix for the consistency
    check and the base values for the coefficient values.
    """
    if reference_term not in factorized:
        raise UnknownReferenceTerm(
            f"reference term {reference_term!r} not among {sorted(factorized)}"
        )
    m = dimensional_matrix(quantities)
    ref = factorized[reference_term]
    ref_dim = m.apply(ref.factor)
    out = {}
    for name, term in factorized.items():
        coeff = tuple(a - b for a, b in zip(term.factor, ref.factor))
        dim = m.apply(coeff)
        if not dim.is_dimensionless():
            raise DimensionalMismatchAcrossTerms(
                f"term {name!r} has dimension {m.apply(term.factor)} but the reference "
                f"{reference_term!r} has {ref_dim}"
            )
        out[name] = NormalizedTerm(coeff, monomial_value(quantities, coeff), term.residual, term.names)
    return NormalizedGroup(reference_term, ref, out)


def normalize_multi(
    groups: Sequence[tuple[MappingT[str, FactorizedTerm], str]],
    quantities: Sequence[Quantity],
) -> list[NormalizedGroup]:
    """Normalize each group by its own reference factor."""
    results = []
    for index, (factorized, reference) in enumerate(groups):
        try:
            group = normalize(factorized, reference, quantities)
        except PassError as err:
            raise type(err)(f"group {index}: {err.message}", err.term) from err
        m = dimensional_matrix(quantities)
        for name, term in group.terms.items():
            assert m.apply(term.coefficient_exponents).is_dimensionless(), name
        results.append(group)
    return results
