"""Single-variable arithmetic expressions and a domain-generic evaluator.

Grammar::

    expr    := term (('+' | '-') term)*
    term    := factor (('*' | '/') factor)*
    factor  := '-' factor | power
    power   := primary ('^' signed_number)?
    primary := number | 'x' | ident '(' expr ')' | '(' expr ')'
    ident   := sin | cos | exp | ln | sqrt

``^`` binds tighter than unary minus, so ``-x^2`` is ``-(x^2)``. The exponent
must be a literal: integer-valued exponents evaluate by repeated
multiplication, others through the real-power function.
"""

from __future__ import annotations

import cmath
import math
import re
from dataclasses import dataclass, field
from typing import Union

from . import core, elem
from .core import GrossNumber
from .errors import DomainError, EvaluationError, GrossError, ParseError

FUNCTION_NAMES = ("sin", "cos", "exp", "ln", "sqrt")

Span = Union[tuple[int, int], None]


# -- AST ---------------------------------------------------------------------


@dataclass(frozen=True)
class Const:
    value: float
    span: Span = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class Var:
    span: Span = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class Unary:
    """``op`` is ``'neg'`` or one of :data:`FUNCTION_NAMES`."""

    op: str
    child: Expr
    span: Span = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class Binary:
    """``op`` is one of ``+ - * / ^``; for ``^`` the right child is a Const."""

    op: str
    left: Expr
    right: Expr
    span: Span = field(default=None, compare=False, repr=False)


Expr = Union[Const, Var, Unary, Binary]


# -- tokenizer ---------------------------------------------------------------

_TOKEN_RE = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<number>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)
  | (?P<ident>[A-Za-z_][A-Za-z_0-9]*)
  | (?P<op>[-+*/^()])
    """,
    re.VERBOSE,
)


@dataclass
class _Token:
    kind: str  # number | ident | op | end
    text: str
    start: int  # byte offsets
    end: int


def _describe(tok: _Token) -> str:
    return "end of input" if tok.kind == "end" else repr(tok.text)


def _tokenize(text: str) -> list[_Token]:
    tokens = []
    pos = 0
    bpos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise ParseError(bpos, "a number, 'x', a function name, an operator or a parenthesis", repr(text[pos]))
        blen = len(m.group().encode("utf-8"))
        if m.lastgroup != "ws":
            tokens.append(_Token(m.lastgroup, m.group(), bpos, bpos + blen))
        pos = m.end()
        bpos += blen
    tokens.append(_Token("end", "", bpos, bpos))
    return tokens


# -- parser ------------------------------------------------------------------


class _Parser:
    def __init__(self, text: str):
        self.toks = _tokenize(text)
        self.i = 0

    @property
    def tok(self) -> _Token:
        return self.toks[self.i]

    def advance(self) -> _Token:
        t = self.toks[self.i]
        self.i += 1
        return t

    def expect(self, text: str) -> _Token:
        if self.tok.text != text or self.tok.kind != "op":
            raise ParseError(self.tok.start, repr(text), _describe(self.tok))
        return self.advance()

    def parse(self) -> Expr:
        e = self.expr()
        if self.tok.kind != "end":
            raise ParseError(self.tok.start, "an operator or end of input", _describe(self.tok))
        return e

    def expr(self) -> Expr:
        left = self.term()
        while self.tok.kind == "op" and self.tok.text in "+-":
            op = self.advance().text
            right = self.term()
            left = Binary(op, left, right, (left.span[0], right.span[1]))
        return left

    def term(self) -> Expr:
        left = self.factor()
        while self.tok.kind == "op" and self.tok.text in "*/":
            op = self.advance().text
            right = self.factor()
            left = Binary(op, left, right, (left.span[0], right.span[1]))
        return left

    def factor(self) -> Expr:
        if self.tok.kind == "op" and self.tok.text == "-":
            start = self.advance().start
            child = self.factor()
            return Unary("neg", child, (start, child.span[1]))
        return self.power()

    def power(self) -> Expr:
        base = self.primary()
        if self.tok.kind == "op" and self.tok.text == "^":
            self.advance()
            start = self.tok.start
            sign = 1.0
            if self.tok.kind == "op" and self.tok.text in "+-":
                sign = -1.0 if self.advance().text == "-" else 1.0
            if self.tok.kind != "number":
                raise ParseError(self.tok.start, "a numeric literal exponent", _describe(self.tok))
            num = self.advance()
            exponent = Const(sign * _literal(num), (start, num.end))
            return Binary("^", base, exponent, (base.span[0], num.end))
        return base

    def primary(self) -> Expr:
        t = self.tok
        if t.kind == "number":
            self.advance()
            return Const(_literal(t), (t.start, t.end))
        if t.kind == "ident":
            self.advance()
            if t.text == "x":
                return Var((t.start, t.end))
            if t.text not in FUNCTION_NAMES:
                raise ParseError(t.start, "'x' or one of the functions " + ", ".join(FUNCTION_NAMES), repr(t.text))
            self.expect("(")
            arg = self.expr()
            close = self.expect(")")
            return Unary(t.text, arg, (t.start, close.end))
        if t.kind == "op" and t.text == "(":
            self.advance()
            inner = self.expr()
            self.expect(")")
            return inner
        raise ParseError(t.start, "a number, 'x', a function call or '('", _describe(t))


def _literal(tok: _Token) -> float:
    v = float(tok.text)
    if not math.isfinite(v):
        raise ParseError(tok.start, "a finite numeric literal", repr(tok.text))
    return v


def parse(text: str) -> Expr:
    """Parse ``text`` into an expression tree; raises :class:`ParseError`."""
    return _Parser(text).parse()


# -- printer -----------------------------------------------------------------

_PREC = {"+": 1, "-": 1, "*": 2, "/": 2, "neg": 3, "^": 4}
_ATOM = 5


def _prec(e: Expr) -> int:
    if isinstance(e, Binary):
        return _PREC[e.op]
    if isinstance(e, Unary) and e.op == "neg":
        return _PREC["neg"]
    return _ATOM


def _format_number(v: float) -> str:
    if v.is_integer() and abs(v) < 1e16:
        return str(int(v))
    return repr(v)


def to_text(e: Expr) -> str:
    """Render with the minimal parentheses needed to parse back to ``e``."""
    if isinstance(e, Const):
        if math.copysign(1.0, e.value) < 0:
            return "-" + _format_number(-e.value)
        return _format_number(e.value)
    if isinstance(e, Var):
        return "x"
    if isinstance(e, Unary):
        if e.op == "neg":
            inner = to_text(e.child)
            if _prec(e.child) < _PREC["neg"]:
                inner = f"({inner})"
            return "-" + inner
        return f"{e.op}({to_text(e.child)})"
    if e.op == "^":
        base = to_text(e.left)
        if _prec(e.left) < _ATOM:
            base = f"({base})"
        return f"{base}^{to_text(e.right)}"
    p = _PREC[e.op]
    left = to_text(e.left)
    if _prec(e.left) < p:
        left = f"({left})"
    right = to_text(e.right)
    if _prec(e.right) <= p:
        right = f"({right})"
    return f"{left} {e.op} {right}"


# -- numeric domains -----------------------------------------------------------


class NumericDomain:
    """The operations an expression needs from a carrier type.

    Subclasses raise :class:`DomainError` (or another :class:`GrossError`) for
    arguments outside a function's domain.
    """

    name = "abstract"

    def literal(self, v: float):
        raise NotImplementedError

    def variable(self, x):
        return x

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def div(self, a, b):
        raise NotImplementedError

    def neg(self, a):
        return -a

    def ipow(self, a, n: int):
        raise NotImplementedError

    def powf(self, a, r: float):
        raise NotImplementedError

    def func(self, name: str, a):
        raise NotImplementedError


def _square_multiply(a, n: int, one):
    result = one
    base = a
    while n:
        if n & 1:
            result = base if result is one else result * base
        n >>= 1
        if n:
            base = base * base
    return result


class RealDomain(NumericDomain):
    name = "real"

    _funcs = {"sin": math.sin, "cos": math.cos, "exp": math.exp, "ln": math.log, "sqrt": math.sqrt}

    def literal(self, v):
        return float(v)

    def variable(self, x):
        return float(x)

    def div(self, a, b):
        if b == 0:
            raise DomainError("div", a, "division by zero")
        return a / b

    def ipow(self, a, n):
        # Same multiplication sequence as the grossnumber carrier, not libm pow.
        v = _square_multiply(a, abs(n), 1.0)
        if n < 0:
            if v == 0:
                raise DomainError("pow", a, f"zero to the negative power {n}")
            v = 1.0 / v
        return v

    def powf(self, a, r):
        try:
            v = math.pow(a, r)
        except (ValueError, OverflowError) as exc:
            raise DomainError("pow", a, str(exc)) from None
        return v

    def func(self, name, a):
        if name == "ln" and not a > 0:
            raise DomainError("ln", a, "argument must be positive")
        if name == "sqrt" and not a > 0:
            raise DomainError("sqrt", a, "argument must be positive")
        try:
            return self._funcs[name](a)
        except (ValueError, OverflowError) as exc:
            raise DomainError(name, a, str(exc)) from None


class ComplexDomain(NumericDomain):
    """Complex carrier; used by the complex-step derivative estimate."""

    name = "complex"

    _funcs = {"sin": cmath.sin, "cos": cmath.cos, "exp": cmath.exp, "ln": cmath.log, "sqrt": cmath.sqrt}

    def literal(self, v):
        return complex(v)

    def variable(self, x):
        return complex(x)

    def div(self, a, b):
        if b == 0:
            raise DomainError("div", a, "division by zero")
        return a / b

    def ipow(self, a, n):
        try:
            return a**n
        except ZeroDivisionError:
            raise DomainError("pow", a, f"zero to the negative power {n}") from None
        except OverflowError:
            raise DomainError("pow", a, "overflow") from None

    def powf(self, a, r):
        if a == 0:
            raise DomainError("pow", a, "zero base with non-integer exponent")
        try:
            return a**r
        except OverflowError:
            raise DomainError("pow", a, "overflow") from None

    def func(self, name, a):
        if name == "ln" and a == 0:
            raise DomainError("ln", a, "logarithm of zero")
        try:
            return self._funcs[name](a)
        except (ValueError, OverflowError) as exc:
            raise DomainError(name, a, str(exc)) from None


class GrossDomain(NumericDomain):
    """Grossnumber carrier. Literals are stamped with ``floor`` when given."""

    name = "gross"

    def __init__(self, floor: core.PowerLike | None = None):
        self.floor = None if floor is None else core.as_power(floor)

    def literal(self, v):
        return core.from_finite(v, self.floor)

    def variable(self, x):
        if isinstance(x, GrossNumber):
            return x
        return core.from_finite(x, self.floor)

    def add(self, a, b):
        return core.add(a, b)

    def sub(self, a, b):
        return core.sub(a, b)

    def mul(self, a, b):
        return core.mul(a, b)

    def div(self, a, b):
        return core.div(a, b, self.floor)

    def neg(self, a):
        return core.neg(a)

    def ipow(self, a, n):
        return core.int_pow(a, n, self.floor)

    def powf(self, a, r):
        return elem.g_powf(a, r)

    def func(self, name, a):
        return elem.FUNCTIONS[name](a)


# -- evaluator -----------------------------------------------------------------


def evaluate(e: Expr, x, domain: NumericDomain):
    """Evaluate ``e`` at ``x`` in ``domain``.

    Any :class:`GrossError` raised by the domain is re-raised as
    :class:`EvaluationError` carrying the span of the innermost failing node.
    """
    xv = domain.variable(x)
    return _eval(e, xv, domain)


def _eval(e: Expr, xv, d: NumericDomain):
    if isinstance(e, Var):
        return xv
    if isinstance(e, Const):
        return d.literal(e.value)
    try:
        if isinstance(e, Unary):
            a = _eval(e.child, xv, d)
            return d.neg(a) if e.op == "neg" else d.func(e.op, a)
        if e.op == "^":
            a = _eval(e.left, xv, d)
            r = e.right.value
            if r.is_integer():
                return d.ipow(a, int(r))
            return d.powf(a, r)
        a = _eval(e.left, xv, d)
        b = _eval(e.right, xv, d)
        if e.op == "+":
            return d.add(a, b)
        if e.op == "-":
            return d.sub(a, b)
        if e.op == "*":
            return d.mul(a, b)
        return d.div(a, b)
    except EvaluationError:
        raise
    except GrossError as exc:
        raise EvaluationError(str(exc), e.span) from exc


def as_expr(e: Expr | str) -> Expr:
    return parse(e) if isinstance(e, str) else e
