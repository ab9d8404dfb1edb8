"""Replace terminals by their quantity-scaled versions and make the scaling
of gradients and integration measures explicit."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping as MappingT

from .. import form as F
from ..form import Expr, Op
from ..units import Quantity
from .errors import AlreadyTransformedError, UnmappedTerminalError


@dataclass(frozen=True)
class Mapping:
    """Terminal substitutions plus the length scale of the domain.

    ``entries`` maps a field or test terminal to its dimensional form, which
    is normally ``q * terminal`` for a monomial ``q`` in the quantities.
    """

    entries: MappingT[Expr, Expr] = field(default_factory=dict)
    length: Quantity | None = None
    dim: int | None = None

    def __post_init__(self):
        for key, rhs in self.entries.items():
            if key.op not in (Op.FIELD, Op.TEST):
                raise ValueError(f"only field and test terminals can be mapped, got {key}")
            if key.shape != rhs.shape:
                raise F.ShapeError(
                    f"mapping for {key.name!r} changes shape from {F.shape_kind(key.shape)} "
                    f"to {F.shape_kind(rhs.shape)}"
                )

    @property
    def is_identity(self) -> bool:
        return self.length is None and all(k == v for k, v in self.entries.items())

    def lookup(self, terminal: Expr) -> Expr:
        try:
            return self.entries[terminal]
        except KeyError:
            kind = "test function" if terminal.op is Op.TEST else "field"
            raise UnmappedTerminalError(f"unmapped {kind} {terminal.name!r}") from None


def _length_power(length: Expr, exponent: int) -> Expr | None:
    if exponent == 0:
        return None
    return length if exponent == 1 else F.power(length, exponent)


def transform(e: Expr, mapping: Mapping) -> Expr:
    """Return the transformed expression.

    Gradients become ``grad(T(x)) / l_ref``; a cell measure gains
    ``l_ref^d`` and a facet measure ``l_ref^(d-1)`` inside its integrand.
    """
    if e.transformed:
        if mapping.is_identity:
            return e
        raise AlreadyTransformedError("expression has already been transformed")

    length = F.quantity(mapping.length) if mapping.length is not None else None
    memo: dict[int, Expr] = {}

    def need_length(what: str) -> Expr:
        if length is None:
            raise UnmappedTerminalError(f"{what} needs a length quantity in the mapping")
        return length

    def visit(node: Expr) -> Expr:
        key = id(node)
        if key in memo:
            return memo[key]
        op = node.op
        if op in (Op.FIELD, Op.TEST):
            out = mapping.lookup(node)
        elif op in F.TERMINALS:
            out = node
        elif op is Op.GRAD:
            out = F.div(F.grad(visit(node.children[0]), node.data), need_length("grad"))
        elif op is Op.MEASURE:
            kind, d = node.data
            d = mapping.dim if mapping.dim is not None else d
            scale = _length_power(need_length("integration"), d if kind == "dx" else d - 1)
            inner = visit(node.children[0])
            out = F.measure(inner if scale is None else F.mul(scale, inner), kind, d)
        else:
            out = F.rebuild(node, [visit(c) for c in node.children])
        memo[key] = out
        return out

    result = visit(e)
    # a fresh root carries the flag so that the input is never marked
    result = F.Expr(result.op, result.children, result.shape, result.data)
    object.__setattr__(result, "transformed", True)
    return result
