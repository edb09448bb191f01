"""Small expression language for scalar fields.

Surfaces, seeds and height functions are written as strings over the
variables {x, y, t, s, r}, decimal literals, the operators + - * / ^
(with ^ right-associative and binding tighter than unary minus, which
binds tighter than * and /), parentheses, the predefined constants
``pi`` and ``e``, and the functions

    sin cos tan tanh atan atanh sqrt abs exp log sign

``sign`` is included so that the symbolic derivative of ``abs`` stays
inside the language; its own derivative is defined as 0 (the kink of
``abs`` at 0 is flagged by this convention, not smoothed).  There is no
implicit multiplication: ``2x`` is a syntax error.

The grammar (see docs/grammar.md for the EBNF) is parsed by recursive
descent with byte-precise error positions.  Evaluation never raises on
domain errors (log of a negative number, division by zero, ...); such
values become NaN and propagate.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from typing import Callable, Iterable, Union

from .errors import ParseError

Expr = Union["Num", "Var", "Neg", "Add", "Sub", "Mul", "Div", "Pow", "Call"]

VARIABLES = ("x", "y", "t", "s", "r")
CONSTANTS = {"pi": math.pi, "e": math.e}

_NAN = float("nan")


def _safe1(fn: Callable[[float], float]) -> Callable[[float], float]:
    def wrapped(v: float) -> float:
        try:
            return fn(v)
        except (ValueError, OverflowError):
            return _NAN

    return wrapped


def _sign(v: float) -> float:
    if v > 0.0:
        return 1.0
    if v < 0.0:
        return -1.0
    return 0.0 if v == 0.0 else _NAN


FUNCTIONS: dict[str, Callable[[float], float]] = {
    "sin": _safe1(math.sin),
    "cos": _safe1(math.cos),
    "tan": _safe1(math.tan),
    "tanh": _safe1(math.tanh),
    "atan": _safe1(math.atan),
    "atanh": _safe1(math.atanh),
    "sqrt": _safe1(math.sqrt),
    "abs": abs,
    "exp": _safe1(math.exp),
    "log": _safe1(math.log),
    "sign": _sign,
}


def safe_div(a: float, b: float) -> float:
    try:
        return a / b
    except ZeroDivisionError:
        return _NAN


def safe_pow(a: float, b: float) -> float:
    try:
        return math.pow(a, b)
    except (ValueError, OverflowError):
        return _NAN


# ---------------------------------------------------------------------------
# AST
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Num:
    value: float


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Neg:
    arg: Expr


@dataclass(frozen=True)
class Add:
    left: Expr
    right: Expr


@dataclass(frozen=True)
class Sub:
    left: Expr
    right: Expr


@dataclass(frozen=True)
class Mul:
    left: Expr
    right: Expr


@dataclass(frozen=True)
class Div:
    left: Expr
    right: Expr


@dataclass(frozen=True)
class Pow:
    left: Expr
    right: Expr


@dataclass(frozen=True)
class Call:
    fn: str
    arg: Expr


# ---------------------------------------------------------------------------
# Tokenizer / parser
# ---------------------------------------------------------------------------

_NUM_RE = re.compile(r"(\d+\.?\d*|\.\d+)([eE][+-]?\d+)?")
_IDENT_RE = re.compile(r"[A-Za-z_][A-Za-z_0-9]*")


class _Parser:
    def __init__(self, src: str):
        self.src = src
        self.pos = 0

    def _skip_ws(self):
        while self.pos < len(self.src) and self.src[self.pos].isspace():
            self.pos += 1

    def _peek(self) -> str:
        self._skip_ws()
        return self.src[self.pos] if self.pos < len(self.src) else ""

    def _fail(self, expected: str):
        found = self.src[self.pos : self.pos + 1]
        raise ParseError(self.pos, expected, found)

    def parse(self) -> Expr:
        e = self._expr()
        self._skip_ws()
        if self.pos != len(self.src):
            self._fail("end of input")
        return e

    def _expr(self) -> Expr:
        e = self._term()
        while True:
            c = self._peek()
            if c == "+":
                self.pos += 1
                e = Add(e, self._term())
            elif c == "-":
                self.pos += 1
                e = Sub(e, self._term())
            else:
                return e

    def _term(self) -> Expr:
        e = self._unary()
        while True:
            c = self._peek()
            if c == "*":
                self.pos += 1
                e = Mul(e, self._unary())
            elif c == "/":
                self.pos += 1
                e = Div(e, self._unary())
            else:
                return e

    def _unary(self) -> Expr:
        if self._peek() == "-":
            self.pos += 1
            return Neg(self._unary())
        return self._power()

    def _power(self) -> Expr:
        base = self._atom()
        if self._peek() == "^":
            self.pos += 1
            # right-associative; the exponent may carry a unary minus
            return Pow(base, self._unary())
        return base

    def _atom(self) -> Expr:
        c = self._peek()
        if c == "(":
            self.pos += 1
            e = self._expr()
            if self._peek() != ")":
                self._fail("')'")
            self.pos += 1
            return e
        m = _NUM_RE.match(self.src, self.pos)
        if m:
            self.pos = m.end()
            return Num(float(m.group(0)))
        m = _IDENT_RE.match(self.src, self.pos)
        if m:
            name = m.group(0)
            start = self.pos
            self.pos = m.end()
            if self._peek() == "(":
                if name not in FUNCTIONS:
                    self.pos = start
                    self._fail("a function name")
                self.pos += 1
                arg = self._expr()
                if self._peek() != ")":
                    self._fail("')'")
                self.pos += 1
                return Call(name, arg)
            if name in CONSTANTS or name in VARIABLES:
                return Var(name)
            self.pos = start
            self._fail("a variable, constant or function")
        self._fail("a number, variable, '(' or unary '-'")
        raise AssertionError("unreachable")


def parse(src: str) -> Expr:
    return _Parser(src).parse()


# ---------------------------------------------------------------------------
# Printing (minimal parentheses; parse(print(e)) is structurally e)
# ---------------------------------------------------------------------------

# precedence levels: 1 additive, 2 multiplicative, 3 unary minus, 4 power, 5 atom
_LEVEL = {Add: 1, Sub: 1, Mul: 2, Div: 2, Neg: 3, Pow: 4, Num: 5, Var: 5, Call: 5}


def _render(e: Expr, min_level: int) -> str:
    level = _LEVEL[type(e)]
    if isinstance(e, Num):
        s = repr(e.value)
    elif isinstance(e, Var):
        s = e.name
    elif isinstance(e, Call):
        s = f"{e.fn}({_render(e.arg, 1)})"
    elif isinstance(e, Neg):
        s = "-" + _render(e.arg, 3)
    elif isinstance(e, Pow):
        # grammar: power := atom ('^' unary); the base must print as an atom
        s = _render(e.left, 5) + "^" + _render(e.right, 3)
    else:
        op = {Add: " + ", Sub: " - ", Mul: " * ", Div: " / "}[type(e)]
        # left-associative: the right operand needs one level more
        s = _render(e.left, level) + op + _render(e.right, level + 1)
    return f"({s})" if level < min_level else s


def to_str(e: Expr) -> str:
    return _render(e, 1)


# ---------------------------------------------------------------------------
# Evaluation
# ---------------------------------------------------------------------------


def evaluate(e: Expr, env: dict[str, float]) -> float:
    if isinstance(e, Num):
        return e.value
    if isinstance(e, Var):
        if e.name in env:
            return env[e.name]
        return CONSTANTS[e.name]
    if isinstance(e, Neg):
        return -evaluate(e.arg, env)
    if isinstance(e, Add):
        return evaluate(e.left, env) + evaluate(e.right, env)
    if isinstance(e, Sub):
        return evaluate(e.left, env) - evaluate(e.right, env)
    if isinstance(e, Mul):
        return evaluate(e.left, env) * evaluate(e.right, env)
    if isinstance(e, Div):
        return safe_div(evaluate(e.left, env), evaluate(e.right, env))
    if isinstance(e, Pow):
        return safe_pow(evaluate(e.left, env), evaluate(e.right, env))
    if isinstance(e, Call):
        return FUNCTIONS[e.fn](evaluate(e.arg, env))
    raise TypeError(f"not an Expr: {e!r}")


def compile_fn(e: Expr, var_order: Iterable[str]) -> Callable[..., float]:
    """Compile an AST to a positional-argument closure (same NaN semantics)."""
    order = {name: i for i, name in enumerate(var_order)}

    def build(node: Expr) -> Callable[..., float]:
        if isinstance(node, Num):
            v = node.value
            return lambda *a: v
        if isinstance(node, Var):
            if node.name in order:
                i = order[node.name]
                return lambda *a: a[i]
            v = CONSTANTS[node.name]
            return lambda *a: v
        if isinstance(node, Neg):
            f = build(node.arg)
            return lambda *a: -f(*a)
        if isinstance(node, Call):
            fn, f = FUNCTIONS[node.fn], build(node.arg)
            return lambda *a: fn(f(*a))
        fl, fr = build(node.left), build(node.right)
        if isinstance(node, Add):
            return lambda *a: fl(*a) + fr(*a)
        if isinstance(node, Sub):
            return lambda *a: fl(*a) - fr(*a)
        if isinstance(node, Mul):
            return lambda *a: fl(*a) * fr(*a)
        if isinstance(node, Div):
            return lambda *a: safe_div(fl(*a), fr(*a))
        if isinstance(node, Pow):
            return lambda *a: safe_pow(fl(*a), fr(*a))
        raise TypeError(f"not an Expr: {node!r}")

    return build(e)


def variables(e: Expr) -> set[str]:
    if isinstance(e, Var):
        return {e.name} if e.name in VARIABLES else set()
    if isinstance(e, (Num,)):
        return set()
    if isinstance(e, Neg):
        return variables(e.arg)
    if isinstance(e, Call):
        return variables(e.arg)
    return variables(e.left) | variables(e.right)


# ---------------------------------------------------------------------------
# Symbolic differentiation
# ---------------------------------------------------------------------------

_ZERO = Num(0.0)
_ONE = Num(1.0)


def _is_num(e: Expr, v: float | None = None) -> bool:
    return isinstance(e, Num) and (v is None or e.value == v)


def _const(v: float) -> Expr:
    # literals are non-negative in the grammar; negatives print as unary minus
    if v == 0.0:
        return _ZERO
    return Num(v) if v > 0.0 else Neg(Num(-v))


def add(a: Expr, b: Expr) -> Expr:
    if _is_num(a, 0.0):
        return b
    if _is_num(b, 0.0):
        return a
    if isinstance(a, Num) and isinstance(b, Num):
        return _const(a.value + b.value)
    return Add(a, b)


def sub(a: Expr, b: Expr) -> Expr:
    if _is_num(b, 0.0):
        return a
    if isinstance(a, Num) and isinstance(b, Num):
        return _const(a.value - b.value)
    if _is_num(a, 0.0):
        return Neg(b) if not isinstance(b, Neg) else b.arg
    return Sub(a, b)


def mul(a: Expr, b: Expr) -> Expr:
    if _is_num(a, 0.0) or _is_num(b, 0.0):
        return _ZERO
    if _is_num(a, 1.0):
        return b
    if _is_num(b, 1.0):
        return a
    if isinstance(a, Num) and isinstance(b, Num):
        return _const(a.value * b.value)
    return Mul(a, b)


def div(a: Expr, b: Expr) -> Expr:
    if _is_num(a, 0.0) and not _is_num(b, 0.0):
        return _ZERO
    if _is_num(b, 1.0):
        return a
    return Div(a, b)


def pow_(a: Expr, b: Expr) -> Expr:
    if _is_num(b, 1.0):
        return a
    if _is_num(b, 0.0):
        return _ONE
    return Pow(a, b)


def differentiate(e: Expr, var: str) -> Expr:
    d = lambda u: differentiate(u, var)  # noqa: E731
    if isinstance(e, Num):
        return _ZERO
    if isinstance(e, Var):
        return _ONE if e.name == var else _ZERO
    if isinstance(e, Neg):
        inner = d(e.arg)
        return _ZERO if _is_num(inner, 0.0) else sub(_ZERO, inner)
    if isinstance(e, Add):
        return add(d(e.left), d(e.right))
    if isinstance(e, Sub):
        return sub(d(e.left), d(e.right))
    if isinstance(e, Mul):
        return add(mul(d(e.left), e.right), mul(e.left, d(e.right)))
    if isinstance(e, Div):
        return div(sub(mul(d(e.left), e.right), mul(e.left, d(e.right))), pow_(e.right, Num(2.0)))
    if isinstance(e, Pow):
        u, v = e.left, e.right
        du, dv = d(u), d(v)
        if _is_num(dv, 0.0):
            expo = sub(v, _ONE)
            return mul(mul(v, pow_(u, expo)), du)
        # general case via u^v * (v' log u + v u'/u)
        return mul(e, add(mul(dv, Call("log", u)), mul(v, div(du, u))))
    if isinstance(e, Call):
        u, du = e.arg, d(e.arg)
        outer = {
            "sin": lambda: Call("cos", u),
            "cos": lambda: sub(_ZERO, Call("sin", u)),
            "tan": lambda: add(_ONE, pow_(Call("tan", u), Num(2.0))),
            "tanh": lambda: sub(_ONE, pow_(Call("tanh", u), Num(2.0))),
            "atan": lambda: div(_ONE, add(_ONE, pow_(u, Num(2.0)))),
            "atanh": lambda: div(_ONE, sub(_ONE, pow_(u, Num(2.0)))),
            "sqrt": lambda: div(_ONE, mul(Num(2.0), Call("sqrt", u))),
            "abs": lambda: Call("sign", u),
            "exp": lambda: Call("exp", u),
            "log": lambda: div(_ONE, u),
            "sign": lambda: _ZERO,  # kink of abs at 0; see module docstring
        }[e.fn]()
        return mul(outer, du)
    raise TypeError(f"not an Expr: {e!r}")
