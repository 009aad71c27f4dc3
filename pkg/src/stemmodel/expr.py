"""Arithmetic expressions of one variable.

Grammar (whitespace between tokens is ignored)::

    expr    := term (("+" | "-") term)*
    term    := unary (("*" | "/") unary)*
    unary   := "-" unary | power
    power   := atom ("^" unary)?
    atom    := NUMBER | VAR | FUNC "(" expr ")" | "(" expr ")"
    NUMBER  := DIGITS ("." DIGITS?)? (("e" | "E") ("+" | "-")? DIGITS)?
             | "." DIGITS (("e" | "E") ("+" | "-")? DIGITS)?
    VAR     := "x" | "t"
    FUNC    := "sin" | "cos" | "exp" | "ln" | "sqrt" | "abs"

``^`` binds tightest and is right-associative, so ``-x^2`` is ``-(x^2)`` and
``2^3^2`` is ``2^(3^2)``. The exponent may itself start with a minus sign
(``x^-1``).
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from typing import Callable, Mapping, Union

from .errors import MathDomain, ParseError, UnboundVariable

VARIABLES = ("x", "t")


def _ln(v: float) -> float:
    if v <= 0:
        raise MathDomain(f"ln of non-positive value {v!r}")
    return math.log(v)


def _sqrt(v: float) -> float:
    if v < 0:
        raise MathDomain(f"sqrt of negative value {v!r}")
    return math.sqrt(v)


def _exp(v: float) -> float:
    try:
        return math.exp(v)
    except OverflowError:
        raise MathDomain(f"exp overflow at {v!r}") from None


BUILTINS: Mapping[str, Callable[[float], float]] = {
    "sin": math.sin,
    "cos": math.cos,
    "exp": _exp,
    "ln": _ln,
    "sqrt": _sqrt,
    "abs": abs,
}


@dataclass(frozen=True)
class Const:
    value: float


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Neg:
    operand: "Expr"


@dataclass(frozen=True)
class Binary:
    op: str
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Call:
    fn: str
    arg: "Expr"


Expr = Union[Const, Var, Neg, Binary, Call]


# ---------------------------------------------------------------- tokenizer

_TOKEN = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<num>(?:\d+(?:\.\d*)?|\.\d+)(?:[eE][+-]?\d+)?)
  | (?P<name>[A-Za-z_][A-Za-z_0-9]*)
  | (?P<op>[-+*/^()])
    """,
    re.VERBOSE,
)


@dataclass(frozen=True)
class _Tok:
    kind: str  # "num" | "name" | "op" | "end"
    text: str
    pos: int


def _tokenize(text: str) -> list[_Tok]:
    toks: list[_Tok] = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", text, pos)
        if m.lastgroup != "ws":
            toks.append(_Tok(m.lastgroup, m.group(), pos))
        pos = m.end()
    toks.append(_Tok("end", "", len(text)))
    return toks


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0

    @property
    def tok(self) -> _Tok:
        return self.toks[self.i]

    def fail(self, message: str, tok: _Tok | None = None):
        tok = tok or self.tok
        found = "end of input" if tok.kind == "end" else repr(tok.text)
        raise ParseError(f"{message}, found {found}", self.text, tok.pos)

    def accept(self, op: str) -> bool:
        if self.tok.kind == "op" and self.tok.text == op:
            self.i += 1
            return True
        return False

    def expect(self, op: str) -> None:
        if not self.accept(op):
            self.fail(f"expected {op!r}")

    def parse(self) -> Expr:
        e = self.expr()
        if self.tok.kind != "end":
            self.fail("unexpected token")
        return e

    def expr(self) -> Expr:
        e = self.term()
        while self.tok.kind == "op" and self.tok.text in "+-":
            op = self.tok.text
            self.i += 1
            e = Binary(op, e, self.term())
        return e

    def term(self) -> Expr:
        e = self.unary()
        while self.tok.kind == "op" and self.tok.text in "*/":
            op = self.tok.text
            self.i += 1
            e = Binary(op, e, self.unary())
        return e

    def unary(self) -> Expr:
        if self.accept("-"):
            return Neg(self.unary())
        return self.power()

    def power(self) -> Expr:
        base = self.atom()
        if self.accept("^"):
            return Binary("^", base, self.unary())
        return base

    def atom(self) -> Expr:
        tok = self.tok
        if tok.kind == "num":
            self.i += 1
            return Const(float(tok.text) if any(c in tok.text for c in ".eE") else int(tok.text))
        if tok.kind == "name":
            self.i += 1
            if tok.text in VARIABLES:
                return Var(tok.text)
            if tok.text in BUILTINS:
                self.expect("(")
                arg = self.expr()
                self.expect(")")
                return Call(tok.text, arg)
            raise ParseError(f"unknown name {tok.text!r}", self.text, tok.pos)
        if self.accept("("):
            e = self.expr()
            self.expect(")")
            return e
        self.fail("expected a number, variable, function call or '('")


def parse_expr(text: str) -> Expr:
    """Parse ``text`` into an expression tree; raises ParseError with the offset."""
    if not text or not text.strip():
        raise ParseError("empty expression", text or "", 0)
    return _Parser(text).parse()


# ---------------------------------------------------------------- evaluator


def _power(a: float, b: float) -> float:
    if a == 0 and b < 0:
        raise MathDomain("zero raised to a negative power")
    if a < 0 and float(b) != math.floor(b):
        raise MathDomain(f"negative base {a!r} with non-integer exponent {b!r}")
    try:
        r = a ** b
    except OverflowError:
        raise MathDomain(f"overflow in {a!r}^{b!r}") from None
    if isinstance(r, complex):  # pragma: no cover - guarded above
        raise MathDomain(f"complex result for {a!r}^{b!r}")
    return r


def _divide(a: float, b: float) -> float:
    if b == 0:
        raise MathDomain("division by zero")
    return a / b


_BINOPS: Mapping[str, Callable[[float, float], float]] = {
    "+": lambda a, b: a + b,
    "-": lambda a, b: a - b,
    "*": lambda a, b: a * b,
    "/": _divide,
    "^": _power,
}


def eval_expr(e: Expr, env: Mapping[str, float]) -> float:
    if isinstance(e, Const):
        return e.value
    if isinstance(e, Var):
        try:
            return env[e.name]
        except KeyError:
            raise UnboundVariable(f"variable {e.name!r} is not bound") from None
    if isinstance(e, Neg):
        return -eval_expr(e.operand, env)
    if isinstance(e, Binary):
        return _BINOPS[e.op](eval_expr(e.left, env), eval_expr(e.right, env))
    if isinstance(e, Call):
        return BUILTINS[e.fn](eval_expr(e.arg, env))
    raise TypeError(f"not an expression: {e!r}")


def free_vars(e: Expr) -> frozenset[str]:
    if isinstance(e, Var):
        return frozenset({e.name})
    if isinstance(e, Neg):
        return free_vars(e.operand)
    if isinstance(e, Binary):
        return free_vars(e.left) | free_vars(e.right)
    if isinstance(e, Call):
        return free_vars(e.arg)
    return frozenset()


# ---------------------------------------------------------------- printer

# binding strength: higher binds tighter
_PREC = {"+": 1, "-": 1, "*": 2, "/": 2}
_NEG = 3
_POW = 4
_ATOM = 5


def _prec(e: Expr) -> int:
    if isinstance(e, Binary):
        return _POW if e.op == "^" else _PREC[e.op]
    if isinstance(e, Neg):
        return _NEG
    if isinstance(e, Const) and e.value < 0:
        return _NEG
    return _ATOM


def _num(v: float) -> str:
    if isinstance(v, int):
        return str(v)
    if v == int(v) and abs(v) < 1e15:
        return f"{int(v)}.0"
    return repr(float(v))


def _wrap(e: Expr, parens: bool) -> str:
    s = print_expr(e)
    return f"({s})" if parens else s


def print_expr(e: Expr) -> str:
    """Render with the fewest parentheses that still re-parse to the same tree."""
    if isinstance(e, Const):
        if e.value < 0:
            return "-" + _wrap(Const(-e.value), False)
        return _num(e.value)
    if isinstance(e, Var):
        return e.name
    if isinstance(e, Call):
        return f"{e.fn}({print_expr(e.arg)})"
    if isinstance(e, Neg):
        return "-" + _wrap(e.operand, _prec(e.operand) < _NEG)
    if isinstance(e, Binary):
        if e.op == "^":
            left = _wrap(e.left, _prec(e.left) <= _POW)
            right = _wrap(e.right, _prec(e.right) < _NEG)
            return f"{left}^{right}"
        p = _PREC[e.op]
        left = _wrap(e.left, _prec(e.left) < p)
        right = _wrap(e.right, _prec(e.right) <= p)
        return f"{left}{e.op}{right}"
    raise TypeError(f"not an expression: {e!r}")


def compile_expr(e: Expr | str, var: str = "x") -> Callable[[float], float]:
    """One-argument callable evaluating ``e`` with ``var`` bound to the argument."""
    tree = parse_expr(e) if isinstance(e, str) else e
    return lambda v: eval_expr(tree, {var: v})
