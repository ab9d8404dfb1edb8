"""Immutable expression DAG for a miniature variational-form language.

Nodes are built through the constructor functions below (or Python operators
on :class:`Expr`); every constructor infers the tensor shape and raises
:class:`ShapeError` when the operands do not fit.  Shapes are ``()`` for
scalars, ``(d,)`` for vectors and ``(d, d)`` for matrices.
"""
from __future__ import annotations

import enum
import math
from fractions import Fraction
from numbers import Real
from typing import Any, Mapping

import numpy as np

from .dimension import as_fraction
from .units import Quantity


class ShapeError(ValueError):
    pass


class EvaluationError(ValueError):
    pass


class Op(enum.Enum):
    FIELD = "field"
    TEST = "test"
    QUANTITY = "quantity"
    CONSTANT = "constant"
    IDENTITY = "identity"
    GRAD = "grad"
    SUM = "sum"
    PRODUCT = "product"
    DIVISION = "division"
    POWER = "power"
    INNER = "inner"
    DOT = "dot"
    TRANSPOSE = "transpose"
    SYM = "sym"
    TRACE = "trace"
    DET = "det"
    LN = "ln"
    SQRT = "sqrt"
    ABS = "abs"
    MEASURE = "measure"


TERMINALS = frozenset({Op.FIELD, Op.TEST, Op.QUANTITY, Op.CONSTANT, Op.IDENTITY})
SCALAR: tuple = ()


class Expr:
    """A node of the expression DAG.

    ``data`` holds the per-kind payload: the name for field/test terminals,
    the :class:`Quantity` for quantity terminals, the float for constants,
    the dimension for Identity and Grad, the rational exponent for Power and
    ``(kind, d)`` for measures.
    """

    __slots__ = ("op", "children", "shape", "data", "_hash", "transformed")

    def __init__(self, op: Op, children: tuple["Expr", ...], shape: tuple, data: Any = None):
        object.__setattr__(self, "op", op)
        object.__setattr__(self, "children", children)
        object.__setattr__(self, "shape", shape)
        object.__setattr__(self, "data", data)
        object.__setattr__(self, "_hash", hash((op, children, shape, data)))
        object.__setattr__(self, "transformed", False)

    def __setattr__(self, name, value):
        raise AttributeError("Expr nodes are immutable")

    def __hash__(self) -> int:
        return self._hash

    def __eq__(self, other) -> bool:
        if self is other:
            return True
        if not isinstance(other, Expr) or self._hash != other._hash:
            return False
        return (
            self.op == other.op
            and self.shape == other.shape
            and self.data == other.data
            and self.children == other.children
        )

    def __repr__(self) -> str:
        from .syntax import to_text

        return f"Expr<{to_text(self)}>"

    def __str__(self) -> str:
        from .syntax import to_text

        return to_text(self)

    @property
    def is_scalar(self) -> bool:
        return self.shape == SCALAR

    @property
    def name(self) -> str:
        if self.op in (Op.FIELD, Op.TEST):
            return self.data
        if self.op is Op.QUANTITY:
            return self.data.name
        raise AttributeError(f"{self.op.value} node has no name")

    # operator sugar -------------------------------------------------------
    def __add__(self, other):
        return add(self, _wrap(other))

    def __radd__(self, other):
        return add(_wrap(other), self)

    def __sub__(self, other):
        return add(self, neg(_wrap(other)))

    def __rsub__(self, other):
        return add(_wrap(other), neg(self))

    def __mul__(self, other):
        return mul(self, _wrap(other))

    def __rmul__(self, other):
        return mul(_wrap(other), self)

    def __truediv__(self, other):
        return div(self, _wrap(other))

    def __rtruediv__(self, other):
        return div(_wrap(other), self)

    def __neg__(self):
        return neg(self)

    def __pow__(self, r):
        return power(self, r)


def _wrap(value) -> Expr:
    if isinstance(value, Expr):
        return value
    if isinstance(value, Quantity):
        return quantity(value)
    if isinstance(value, Real):
        return constant(float(value))
    raise TypeError(f"cannot use {type(value).__name__} in a form expression")


def _shape_text(shape: tuple) -> str:
    if shape == SCALAR:
        return "scalar"
    if len(shape) == 1:
        return f"vector({shape[0]})"
    return f"matrix({shape[0]}x{shape[1]})"


def _mismatch(op: Op, *children: Expr) -> ShapeError:
    shapes = ", ".join(_shape_text(c.shape) for c in children)
    return ShapeError(f"shape mismatch in {op.value}: operands are {shapes}")


def shape_from_kind(kind: str, d: int) -> tuple:
    kinds = {"scalar": SCALAR, "vector": (d,), "matrix": (d, d)}
    try:
        return kinds[kind]
    except KeyError:
        raise ShapeError(f"unknown shape kind {kind!r}; expected scalar, vector or matrix") from None


def shape_kind(shape: tuple) -> str:
    return {0: "scalar", 1: "vector", 2: "matrix"}[len(shape)]


# terminals ------------------------------------------------------------------

def field(name: str, shape: tuple = SCALAR) -> Expr:
    return Expr(Op.FIELD, (), tuple(shape), name)


def test(name: str, shape: tuple = SCALAR) -> Expr:
    return Expr(Op.TEST, (), tuple(shape), name)


test.__test__ = False  # keep pytest from collecting this constructor


def quantity(q: Quantity) -> Expr:
    return Expr(Op.QUANTITY, (), SCALAR, q)


def constant(value: float) -> Expr:
    value = float(value)
    if not math.isfinite(value):
        raise ValueError(f"non-finite constant {value}")
    return Expr(Op.CONSTANT, (), SCALAR, value)


def identity(d: int) -> Expr:
    return Expr(Op.IDENTITY, (), (d, d), d)


# operators ------------------------------------------------------------------

def add(a: Expr, b: Expr) -> Expr:
    if a.shape != b.shape:
        raise _mismatch(Op.SUM, a, b)
    return Expr(Op.SUM, (a, b), a.shape)


def neg(a: Expr) -> Expr:
    if a.op is Op.CONSTANT:
        return constant(-a.data)
    return mul(constant(-1.0), a)


def mul(a: Expr, b: Expr) -> Expr:
    if a.is_scalar:
        shape = b.shape
    elif b.is_scalar:
        shape = a.shape
    else:
        raise _mismatch(Op.PRODUCT, a, b)
    return Expr(Op.PRODUCT, (a, b), shape)


def div(a: Expr, b: Expr) -> Expr:
    if not b.is_scalar:
        raise _mismatch(Op.DIVISION, a, b)
    return Expr(Op.DIVISION, (a, b), a.shape)


def power(a: Expr, r) -> Expr:
    if isinstance(r, float):
        raise ShapeError(f"power exponent must be an exact rational, got float {r!r}")
    r = as_fraction(r)
    if not a.is_scalar:
        raise _mismatch(Op.POWER, a)
    return Expr(Op.POWER, (a,), SCALAR, r)


def grad(a: Expr, d: int | None = None) -> Expr:
    if a.is_scalar:
        if d is None:
            raise ShapeError("grad of a scalar needs the spatial dimension d")
        return Expr(Op.GRAD, (a,), (d,), d)
    if len(a.shape) == 1:
        if d is not None and d != a.shape[0]:
            raise _mismatch(Op.GRAD, a)
        return Expr(Op.GRAD, (a,), (a.shape[0], a.shape[0]), a.shape[0])
    raise _mismatch(Op.GRAD, a)


def inner(a: Expr, b: Expr) -> Expr:
    if a.shape != b.shape:
        raise _mismatch(Op.INNER, a, b)
    return Expr(Op.INNER, (a, b), SCALAR)


def dot(a: Expr, b: Expr) -> Expr:
    sa, sb = a.shape, b.shape
    if len(sa) == 0 or len(sb) == 0 or sa[-1] != sb[0]:
        raise _mismatch(Op.DOT, a, b)
    return Expr(Op.DOT, (a, b), sa[:-1] + sb[1:])


def _square(op: Op, a: Expr) -> None:
    if len(a.shape) != 2 or a.shape[0] != a.shape[1]:
        raise _mismatch(op, a)


def transpose(a: Expr) -> Expr:
    _square(Op.TRANSPOSE, a)
    return Expr(Op.TRANSPOSE, (a,), a.shape)


def sym(a: Expr) -> Expr:
    _square(Op.SYM, a)
    return Expr(Op.SYM, (a,), a.shape)


def tr(a: Expr) -> Expr:
    _square(Op.TRACE, a)
    return Expr(Op.TRACE, (a,), SCALAR)


def det(a: Expr) -> Expr:
    _square(Op.DET, a)
    return Expr(Op.DET, (a,), SCALAR)


def _scalar_fn(op: Op, a: Expr) -> Expr:
    if not a.is_scalar:
        raise _mismatch(op, a)
    return Expr(op, (a,), SCALAR)


def ln(a: Expr) -> Expr:
    return _scalar_fn(Op.LN, a)


def sqrt(a: Expr) -> Expr:
    return _scalar_fn(Op.SQRT, a)


def abs_(a: Expr) -> Expr:
    return _scalar_fn(Op.ABS, a)


def div_(v: Expr) -> Expr:
    """Divergence of a vector, spelled ``tr(grad(v))``."""
    return tr(grad(v))


def measure(integrand: Expr, kind: str, d: int) -> Expr:
    if kind not in ("dx", "ds"):
        raise ValueError(f"measure kind must be 'dx' or 'ds', got {kind!r}")
    if not integrand.is_scalar:
        raise ShapeError(f"integrand must be scalar, got {_shape_text(integrand.shape)}")
    if integrand.op is Op.MEASURE or any(n.op is Op.MEASURE for n in walk(integrand)):
        raise ShapeError("an integrand may contain only one measure")
    return Expr(Op.MEASURE, (integrand,), SCALAR, (kind, d))


def dx(integrand: Expr, d: int) -> Expr:
    return measure(integrand, "dx", d)


def ds(integrand: Expr, d: int) -> Expr:
    return measure(integrand, "ds", d)


_BUILDERS = {
    Op.SUM: lambda ch, data: add(*ch),
    Op.PRODUCT: lambda ch, data: mul(*ch),
    Op.DIVISION: lambda ch, data: div(*ch),
    Op.POWER: lambda ch, data: power(ch[0], data),
    Op.GRAD: lambda ch, data: grad(ch[0], data),
    Op.INNER: lambda ch, data: inner(*ch),
    Op.DOT: lambda ch, data: dot(*ch),
    Op.TRANSPOSE: lambda ch, data: transpose(ch[0]),
    Op.SYM: lambda ch, data: sym(ch[0]),
    Op.TRACE: lambda ch, data: tr(ch[0]),
    Op.DET: lambda ch, data: det(ch[0]),
    Op.LN: lambda ch, data: ln(ch[0]),
    Op.SQRT: lambda ch, data: sqrt(ch[0]),
    Op.ABS: lambda ch, data: abs_(ch[0]),
    Op.MEASURE: lambda ch, data: measure(ch[0], *data),
}


def build(op: Op, children=(), data: Any = None) -> Expr:
    """Generic validated constructor, used by passes that rebuild nodes."""
    children = tuple(children)
    if op in TERMINALS:
        if children:
            raise ShapeError(f"terminal {op.value} takes no children")
        if op is Op.FIELD:
            name, shape = data
            return field(name, shape)
        if op is Op.TEST:
            name, shape = data
            return test(name, shape)
        if op is Op.QUANTITY:
            return quantity(data)
        if op is Op.CONSTANT:
            return constant(data)
        return identity(data)
    return _BUILDERS[op](children, data)


def rebuild(node: Expr, children) -> Expr:
    """Same node kind and payload, new children."""
    children = tuple(children)
    if all(a is b for a, b in zip(children, node.children)):
        return node
    return _BUILDERS[node.op](children, node.data)


def walk(e: Expr):
    """Yield every distinct node of the DAG once, children before parents."""
    seen: set[int] = set()
    stack: list[tuple[Expr, bool]] = [(e, False)]
    while stack:
        node, expanded = stack.pop()
        if id(node) in seen:
            continue
        if expanded:
            seen.add(id(node))
            yield node
        else:
            stack.append((node, True))
            for child in reversed(node.children):
                if id(child) not in seen:
                    stack.append((child, False))


def quantities_in(e: Expr) -> list[Quantity]:
    found: dict[str, Quantity] = {}
    for node in walk(e):
        if node.op is Op.QUANTITY:
            found.setdefault(node.data.name, node.data)
    return list(found.values())


# numeric evaluation ---------------------------------------------------------

def eval_expr(
    e: Expr,
    bindings: Mapping[Expr, Any],
    quantity_values: Mapping[str, float] | None = None,
):
    """Evaluate ``e`` numerically.

    ``bindings`` maps terminal nodes, and gradients of terminals
    (``grad(u)`` treated as an opaque value), to numbers or numpy arrays.
    Quantity terminals may alternatively be bound by name through
    ``quantity_values``.  Gradients of composite expressions are expanded by
    linearity down to terminal gradients.
    """
    cache: dict[int, Any] = {}
    quantity_values = quantity_values or {}

    def lookup(node: Expr):
        if node in bindings:
            return np.asarray(bindings[node], dtype=float) if node.shape else float(bindings[node])
        if node.op is Op.QUANTITY and node.data.name in quantity_values:
            return float(quantity_values[node.data.name])
        what = f"grad({node.children[0]})" if node.op is Op.GRAD else str(node)
        raise EvaluationError(f"missing binding for {what}")

    def grad_of(x: Expr):
        """Gradient of x by linearity; terminal gradients come from bindings."""
        if x.op in (Op.CONSTANT, Op.QUANTITY, Op.IDENTITY):
            return np.zeros(_grad_shape(x))
        if x.op in (Op.FIELD, Op.TEST):
            return lookup(grad(x, None if x.shape else _grad_dim(x)))
        if x.op is Op.SUM:
            return grad_of(x.children[0]) + grad_of(x.children[1])
        if x.op is Op.PRODUCT:
            a, b = x.children
            if not _depends_on_fields(a):
                return _scale(ev(a), grad_of(b))
            if not _depends_on_fields(b):
                return _scale(ev(b), grad_of(a))
        if x.op is Op.DIVISION and not _depends_on_fields(x.children[1]):
            return grad_of(x.children[0]) / ev(x.children[1])
        raise EvaluationError(f"cannot evaluate the gradient of non-linear expression {x}")

    grad_dims: dict[int, int] = {}

    def _grad_dim(x: Expr) -> int:
        return grad_dims[id(x)]

    def _grad_shape(x: Expr):
        d = grad_dims.get(id(x), 1)
        return x.shape + (d,) if x.shape else (d,)

    def _propagate_grad_dim(x: Expr, d: int):
        for node in walk(x):
            grad_dims.setdefault(id(node), d)

    def ev(node: Expr):
        key = id(node)
        if key in cache:
            return cache[key]
        op = node.op
        ch = node.children
        if op is Op.CONSTANT:
            val = node.data
        elif op is Op.IDENTITY:
            val = np.eye(node.data)
        elif op in (Op.FIELD, Op.TEST, Op.QUANTITY):
            val = lookup(node)
        elif op is Op.GRAD:
            if node in bindings:
                val = lookup(node)
            else:
                _propagate_grad_dim(ch[0], node.data)
                val = grad_of(ch[0])
        elif op is Op.SUM:
            val = ev(ch[0]) + ev(ch[1])
        elif op is Op.PRODUCT:
            val = _scale(ev(ch[0]), ev(ch[1])) if ch[0].is_scalar else _scale(ev(ch[1]), ev(ch[0]))
        elif op is Op.DIVISION:
            val = ev(ch[0]) / ev(ch[1])
        elif op is Op.POWER:
            base = ev(ch[0])
            r = node.data
            if base < 0 and r.denominator % 2 == 0:
                raise EvaluationError(f"even root of negative value in {node}")
            if base < 0:
                sign = -1.0 if r.numerator % 2 else 1.0
                val = sign * abs(base) ** float(r)
            else:
                val = base ** float(r)
        elif op is Op.INNER:
            val = float(np.sum(np.asarray(ev(ch[0])) * np.asarray(ev(ch[1]))))
        elif op is Op.DOT:
            val = np.dot(ev(ch[0]), ev(ch[1]))
            if node.is_scalar:
                val = float(val)
        elif op is Op.TRANSPOSE:
            val = np.transpose(ev(ch[0]))
        elif op is Op.SYM:
            m = ev(ch[0])
            val = 0.5 * (m + np.transpose(m))
        elif op is Op.TRACE:
            val = float(np.trace(ev(ch[0])))
        elif op is Op.DET:
            val = float(np.linalg.det(ev(ch[0])))
        elif op is Op.LN:
            x = ev(ch[0])
            if x <= 0:
                raise EvaluationError(f"ln of non-positive value {x} in {node}")
            val = math.log(x)
        elif op is Op.SQRT:
            x = ev(ch[0])
            if x < 0:
                raise EvaluationError(f"sqrt of negative value {x} in {node}")
            val = math.sqrt(x)
        elif op is Op.ABS:
            val = abs(ev(ch[0]))
        elif op is Op.MEASURE:
            raise EvaluationError("cannot evaluate an integral; evaluate its integrand instead")
        else:  # pragma: no cover
            raise EvaluationError(f"unsupported node {op}")
        cache[key] = val
        return val

    return ev(e)


def _scale(s, x):
    return s * x


def _depends_on_fields(e: Expr) -> bool:
    return any(n.op in (Op.FIELD, Op.TEST) for n in walk(e))
