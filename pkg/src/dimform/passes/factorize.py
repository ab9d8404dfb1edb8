"""Homogeneous factorization: split an expression into a quantity monomial
times a dimensionless residual."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping as MappingT, Sequence

from .. import form as F
from ..dimension import Dimension
from ..form import Expr, Op
from ..pi import DimensionalMatrix, check_unique, dimensional_matrix, monomial_value, render_monomial
from ..syntax import to_text
from ..units import Quantity
from .errors import (
    InconsistentDimensions,
    InconsistentFactors,
    NonHomogeneousArgument,
    PassError,
    UnknownQuantityError,
)
from .transform import Mapping, transform

Factor = tuple[Fraction, ...]

_PASS_THROUGH = frozenset({Op.GRAD, Op.TRACE, Op.TRANSPOSE, Op.SYM, Op.ABS, Op.MEASURE})
_ADDITIVE = frozenset({Op.PRODUCT, Op.INNER, Op.DOT})


@dataclass(frozen=True)
class FactorizedTerm:
    factor: Factor
    residual: Expr
    factor_value: float
    names: tuple[str, ...]

    @property
    def expression(self) -> str:
        return render_monomial(self.names, self.factor)


def _snippet(e: Expr, limit: int = 120) -> str:
    text = to_text(e)
    return text if len(text) <= limit else text[: limit - 3] + "..."


class _Factorizer:
    def __init__(self, quantities: Sequence[Quantity]):
        check_unique(quantities)
        self.quantities = list(quantities)
        self.names = tuple(q.name for q in quantities)
        self.index = {q.name: i for i, q in enumerate(quantities)}
        self.matrix: DimensionalMatrix = dimensional_matrix(quantities)
        self.zero: Factor = tuple(Fraction(0) for _ in quantities)
        self.memo: dict[int, Factor] = {}

    def render(self, f: Factor) -> str:
        return render_monomial(self.names, f)

    def factor(self, node: Expr, path: tuple[str, ...] = ()) -> Factor:
        key = id(node)
        if key in self.memo:
            return self.memo[key]
        op = node.op
        path = path + (op.value,)
        kids = [self.factor(c, path) for c in node.children]
        if op is Op.QUANTITY:
            name = node.data.name
            if name not in self.index:
                raise UnknownQuantityError(f"quantity {name!r} is not in the quantity list {list(self.names)}")
            if self.quantities[self.index[name]] != node.data:
                raise UnknownQuantityError(f"quantity {name!r} differs from the one in the quantity list")
            out = tuple(Fraction(int(i == self.index[name])) for i in range(len(self.names)))
        elif op in F.TERMINALS:
            out = self.zero
        elif op in _ADDITIVE:
            out = tuple(a + b for a, b in zip(*kids))
        elif op is Op.DIVISION:
            out = tuple(a - b for a, b in zip(*kids))
        elif op is Op.POWER:
            out = tuple(node.data * a for a in kids[0])
        elif op is Op.SQRT:
            out = tuple(a / 2 for a in kids[0])
        elif op is Op.DET:
            d = node.children[0].shape[0]
            out = tuple(d * a for a in kids[0])
        elif op in _PASS_THROUGH:
            out = kids[0]
        elif op is Op.LN:
            if any(kids[0]):
                raise NonHomogeneousArgument(
                    f"argument of ln carries the factor {self.render(kids[0])}; it must be dimensionless "
                    f"and free of quantities\n  at {' > '.join(path)}\n  in {_snippet(node)}"
                )
            out = self.zero
        elif op is Op.SUM:
            out = self.check_sum(node, kids, path)
        else:  # pragma: no cover
            raise PassError(f"no factorization rule for {op.value}")
        self.memo[key] = out
        return out

    def check_sum(self, node: Expr, kids: list[Factor], path) -> Factor:
        a, b = kids
        if a == b:
            return a
        left, right = node.children
        da, db = self.matrix.apply(a), self.matrix.apply(b)
        where = f"  at {' > '.join(path)}\n     {_snippet(left)}\n  --> +\n     {_snippet(right)}\n"
        if da != db:
            raise InconsistentDimensions(
                f"Inconsistent dimensions\n{where}Different dimensions: {da} != {db}."
            )
        raise InconsistentFactors(
            f"Inconsistent factors\n{where}Different factors: {self.render(a)} != {self.render(b)}."
        )

    def residual(self, node: Expr) -> Expr:
        """``node`` with every quantity replaced by the neutral element."""
        memo: dict[int, Expr | None] = {}

        def strip(n: Expr) -> Expr | None:
            # None stands for the number 1 that a removed quantity leaves behind
            key = id(n)
            if key in memo:
                return memo[key]
            op = n.op
            if op is Op.QUANTITY:
                out = None
            elif op in F.TERMINALS:
                out = n
            else:
                kids = [strip(c) for c in n.children]
                if op is Op.PRODUCT:
                    a, b = kids
                    out = b if a is None else a if b is None else F.rebuild(n, kids)
                elif op is Op.DIVISION:
                    a, b = kids
                    if b is None:
                        out = a
                    else:
                        out = F.div(F.constant(1.0) if a is None else a, b)
                elif op in (Op.POWER, Op.SQRT, Op.ABS) and kids[0] is None:
                    out = None
                else:
                    kids = [F.constant(1.0) if k is None else k for k in kids]
                    out = F.rebuild(n, kids)
            memo[key] = out
            return out

        out = strip(node)
        return F.constant(1.0) if out is None else out


def factorize(e: Expr, quantities: Sequence[Quantity]) -> FactorizedTerm:
    fz = _Factorizer(quantities)
    f = fz.factor(e)
    return FactorizedTerm(f, fz.residual(e), monomial_value(quantities, f), fz.names)


def factorize_terms(
    terms: MappingT[str, Expr], quantities: Sequence[Quantity], mapping: Mapping
) -> dict[str, FactorizedTerm]:
    out = {}
    for name, expr in terms.items():
        try:
            out[name] = factorize(transform(expr, mapping), quantities)
        except PassError as err:
            raise err.with_term(name) from err
    return out


def get_dimension(e: Expr, quantities: Sequence[Quantity], mapping: Mapping) -> Dimension:
    """Dimension of ``e`` after the mapping is applied."""
    term = factorize(transform(e, mapping), quantities)
    return dimensional_matrix(quantities).apply(term.factor)
