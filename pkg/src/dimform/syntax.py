"""Canonical text form of expressions and its parser.

The serializer output is a fixed point of parse followed by serialize::

    inner(grad(u), grad(du)) * dx
    inner(dv, ρ * (v - v0) / (t_ref * 0.1)) * dx
    pow(x, 1/2) + ln(y) - 2 * tr(E)

A trailing ``* dx`` or ``* ds`` turns the whole preceding expression into
an integrand.  ``div(v)`` is accepted as sugar for ``tr(grad(v))``.
"""
from __future__ import annotations

import re
from fractions import Fraction
from typing import Mapping

from . import form as F
from .form import Expr, Op, ShapeError


class FormSyntaxError(ValueError):
    def __init__(self, message: str, line: int = 1, column: int = 1):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column
        self.detail = message


class UndeclaredIdentifierError(FormSyntaxError):
    pass


# serialization ---------------------------------------------------------------

_SUM, _PROD, _UNARY, _ATOM = 1, 2, 3, 4


def format_number(value: float) -> str:
    if value == int(value) and abs(value) < 1e16:
        return str(int(value))
    return repr(float(value))


def _is_negation(e: Expr) -> bool:
    a = e.children[0] if e.op is Op.PRODUCT else None
    return (
        a is not None
        and a.op is Op.CONSTANT
        and a.data == -1.0
        and e.children[1].op is not Op.CONSTANT
    )


def to_text(e: Expr) -> str:
    return _text(e, _SUM)


def _wrap(text: str, prec: int, needed: int) -> str:
    return f"({text})" if prec < needed else text


def _text(e: Expr, needed: int) -> str:
    op = e.op
    if op in (Op.FIELD, Op.TEST, Op.QUANTITY):
        return e.name
    if op is Op.CONSTANT:
        text = format_number(e.data)
        return _wrap(text, _UNARY, needed) if e.data < 0 else text
    if op is Op.IDENTITY:
        return f"Identity({e.data})"
    if op is Op.MEASURE:
        kind, _ = e.data
        return _wrap(f"{_text(e.children[0], _SUM)} * {kind}", _SUM, needed)
    if op is Op.SUM:
        a, b = e.children
        left = _text(a, _SUM)
        if _is_negation(b):
            text = f"{left} - {_text(b.children[1], _PROD)}"
        elif b.op is Op.CONSTANT and b.data < 0:
            text = f"{left} - {format_number(-b.data)}"
        else:
            text = f"{left} + {_text(b, _PROD)}"
        return _wrap(text, _SUM, needed)
    if op is Op.PRODUCT:
        if _is_negation(e):
            return _wrap(f"-{_text(e.children[1], _UNARY)}", _UNARY, needed)
        a, b = e.children
        return _wrap(f"{_text(a, _PROD)} * {_text(b, _UNARY)}", _PROD, needed)
    if op is Op.DIVISION:
        a, b = e.children
        return _wrap(f"{_text(a, _PROD)} / {_text(b, _UNARY)}", _PROD, needed)
    if op is Op.POWER:
        r = e.data
        exp = str(r.numerator) if r.denominator == 1 else f"{r.numerator}/{r.denominator}"
        return f"pow({_text(e.children[0], _SUM)}, {exp})"
    if op is Op.TRACE and e.children[0].op is Op.GRAD and len(e.children[0].children[0].shape) == 1:
        return f"div({_text(e.children[0].children[0], _SUM)})"
    names = {
        Op.GRAD: "grad", Op.INNER: "inner", Op.DOT: "dot", Op.TRANSPOSE: "transpose",
        Op.SYM: "sym", Op.TRACE: "tr", Op.DET: "det", Op.LN: "ln", Op.SQRT: "sqrt",
        Op.ABS: "abs",
    }
    args = ", ".join(_text(c, _SUM) for c in e.children)
    return f"{names[op]}({args})"


# parsing ---------------------------------------------------------------------

_TOKEN = re.compile(
    r"\s*(?:(?P<num>(?:\d+\.\d*|\.\d+|\d+)(?:[eE][+-]?\d+)?)"
    r"|(?P<name>[^\W\d]\w*)"
    r"|(?P<op>[-+*/(),]))"
)

_UNARY_FUNCS = {
    "grad": None, "div": F.div_, "tr": F.tr, "det": F.det, "sym": F.sym,
    "transpose": F.transpose, "ln": F.ln, "sqrt": F.sqrt, "abs": F.abs_,
}
_BINARY_FUNCS = {"inner": F.inner, "dot": F.dot}
_MEASURES = ("dx", "ds")


class _Parser:
    def __init__(self, text: str, names: Mapping[str, Expr], d: int | None, line: int, col0: int):
        self.text = text
        self.names = names
        self.d = d
        self.line = line
        self.col0 = col0
        self.tokens = self._tokenize()
        self.pos = 0

    def error(self, message: str, offset: int, cls=FormSyntaxError):
        return cls(message, self.line, self.col0 + offset + 1)

    def _tokenize(self):
        tokens = []
        i = 0
        text = self.text
        while i < len(text):
            if text[i].isspace():
                i += 1
                continue
            m = _TOKEN.match(text, i)
            if m is None or m.end() == i:
                raise self.error(f"unexpected character {text[i]!r}", i)
            kind = m.lastgroup
            start = m.start(kind)
            tokens.append((kind, m.group(kind), start))
            i = m.end()
        return tokens

    def peek(self, k: int = 0):
        i = self.pos + k
        return self.tokens[i] if i < len(self.tokens) else None

    def take(self, value: str | None = None):
        tok = self.peek()
        if tok is None:
            raise self.error(f"expected {value!r}, found end of expression" if value else "unexpected end of expression", len(self.text))
        if value is not None and tok[1] != value:
            raise self.error(f"expected {value!r}, found {tok[1]!r}", tok[2])
        self.pos += 1
        return tok

    def parse(self) -> Expr:
        if not self.tokens:
            raise self.error("empty expression", 0)
        measure = None
        last = self.tokens[-1]
        if last[0] == "name" and last[1] in _MEASURES:
            if len(self.tokens) < 3 or self.tokens[-2][1] != "*":
                raise self.error(f"measure {last[1]} must follow '*' at the end of the expression", last[2])
            measure = last
            self.tokens = self.tokens[:-2]
        e = self.sum()
        if self.peek() is not None:
            tok = self.peek()
            raise self.error(f"unexpected {tok[1]!r}", tok[2])
        if measure is not None:
            if self.d is None:
                raise self.error("a measure needs the topological dimension d", measure[2])
            try:
                e = F.measure(e, measure[1], self.d)
            except ShapeError as exc:
                raise self.error(str(exc), measure[2]) from None
        return e

    def _build(self, fn, offset: int, *args):
        try:
            return fn(*args)
        except ShapeError as exc:
            raise self.error(str(exc), offset) from None

    def sum(self) -> Expr:
        e = self.term()
        while (tok := self.peek()) is not None and tok[1] in "+-":
            self.take()
            rhs = self.term()
            if tok[1] == "-":
                rhs = F.neg(rhs)
            e = self._build(F.add, tok[2], e, rhs)
        return e

    def term(self) -> Expr:
        e = self.unary()
        while (tok := self.peek()) is not None and tok[1] in "*/":
            self.take()
            rhs = self.unary()
            e = self._build(F.mul if tok[1] == "*" else F.div, tok[2], e, rhs)
        return e

    def unary(self) -> Expr:
        tok = self.peek()
        if tok is not None and tok[1] == "-":
            self.take()
            return F.neg(self.unary())
        return self.atom()

    def atom(self) -> Expr:
        tok = self.take()
        kind, value, offset = tok
        if kind == "num":
            return F.constant(float(value))
        if value == "(":
            e = self.sum()
            self.take(")")
            return e
        if kind != "name":
            raise self.error(f"unexpected {value!r}", offset)
        nxt = self.peek()
        if nxt is not None and nxt[1] == "(":
            return self.call(value, offset)
        if value in _MEASURES:
            raise self.error(f"measure {value} may only appear as the final '* {value}'", offset)
        if value not in self.names:
            raise self.error(f"undeclared identifier {value!r}", offset, UndeclaredIdentifierError)
        return self.names[value]

    def call(self, fname: str, offset: int) -> Expr:
        self.take("(")
        if fname == "Identity":
            tok = self.take()
            if tok[0] != "num" or not tok[1].isdigit():
                raise self.error("Identity takes an integer dimension", tok[2])
            self.take(")")
            return F.identity(int(tok[1]))
        if fname == "pow":
            base = self.sum()
            self.take(",")
            r = self.rational()
            self.take(")")
            return self._build(F.power, offset, base, r)
        if fname in _BINARY_FUNCS:
            a = self.sum()
            self.take(",")
            b = self.sum()
            self.take(")")
            return self._build(_BINARY_FUNCS[fname], offset, a, b)
        if fname in _UNARY_FUNCS:
            arg = self.sum()
            self.take(")")
            if fname == "grad":
                return self._build(F.grad, offset, arg, None if arg.shape else self.d)
            if fname == "div":
                return self._build(lambda v: F.tr(F.grad(v)), offset, arg)
            return self._build(_UNARY_FUNCS[fname], offset, arg)
        raise self.error(f"unknown function {fname!r}", offset)

    def rational(self) -> Fraction:
        sign = 1
        if (tok := self.peek()) is not None and tok[1] == "-":
            self.take()
            sign = -1
        num = self.take()
        if num[0] != "num" or not num[1].isdigit():
            raise self.error(f"pow exponent must be an exact rational, got {num[1]!r}", num[2])
        value = Fraction(int(num[1]))
        if (tok := self.peek()) is not None and tok[1] == "/":
            self.take()
            den = self.take()
            if den[0] != "num" or not den[1].isdigit() or int(den[1]) == 0:
                raise self.error("pow exponent denominator must be a positive integer", den[2])
            value /= int(den[1])
        return sign * value


def parse_expr(
    text: str,
    names: Mapping[str, Expr],
    d: int | None = None,
    *,
    line: int = 1,
    column: int = 1,
) -> Expr:
    """Parse ``text`` with identifiers resolved through ``names``.

    ``line`` and ``column`` locate ``text`` inside a larger document so that
    error positions point at the right place.
    """
    return _Parser(text, names, d, line, column - 1).parse()
