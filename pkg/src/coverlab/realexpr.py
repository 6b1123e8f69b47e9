"""Expression grammar for evaluating exact reals from the command line.

    expr   := term (('+' | '-') term)*
    term   := factor (('*' | '/') factor)*
    factor := '-' factor | atom
    atom   := NUMBER | '(' expr ')'
            | 'inv' '(' expr ';' NUMBER ')'
            | 'exp' '(' expr ')'
            | 'limit' '(' NAME (';' NUMBER)* ')'

Numbers are integers or exact decimals; rationals like 1/3 arrive through
the division operator, which folds exactly on rational operands.  Division
by a non-literal denominator searches for an apartness witness.  Supported
limit forms: ``limit(inv_n)`` (the sequence 1/n) and
``limit(geometric; r)`` (the geometric series at ratio r, |r| < 1).
"""

from __future__ import annotations

import re
from fractions import Fraction

from . import xreal
from .xreal import ConvergentSeq, Real

APARTNESS_FLOOR = Fraction(1, 2**60)


class ExprError(ValueError):
    """Syntax or evaluation error with position information."""


_TOKEN = re.compile(
    r"\s*(?:(?P<num>\d+\.\d+|\d+)|(?P<name>[A-Za-z_][A-Za-z_0-9]*)|(?P<op>[-+*/();]))"
)


def tokenize(text: str) -> list[tuple[str, str, int]]:
    out = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            stripped = text[pos:].lstrip()
            if not stripped:
                break
            raise ExprError(f"unexpected character {stripped[0]!r} at position {pos}")
        if m.group("num"):
            out.append(("num", m.group("num"), m.start("num")))
        elif m.group("name"):
            out.append(("name", m.group("name"), m.start("name")))
        else:
            out.append(("op", m.group("op"), m.start("op")))
        pos = m.end()
    return out


def _decimal_to_fraction(text: str) -> Fraction:
    if "." in text:
        whole, frac = text.split(".")
        return Fraction(int(whole or "0") * 10 ** len(frac) + int(frac), 10 ** len(frac))
    return Fraction(int(text))


class Parser:
    def __init__(self, text: str):
        self.tokens = tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else None

    def take(self, kind=None, value=None):
        tok = self.peek()
        if tok is None:
            raise ExprError("unexpected end of expression")
        if kind and tok[0] != kind or value and tok[1] != value:
            raise ExprError(f"unexpected {tok[1]!r} at position {tok[2]}")
        self.i += 1
        return tok

    def parse(self):
        node = self.expr()
        if self.peek() is not None:
            tok = self.peek()
            raise ExprError(f"trailing {tok[1]!r} at position {tok[2]}")
        return node

    def expr(self):
        node = self.term()
        while self.peek() and self.peek()[1] in "+-":
            op = self.take()[1]
            node = (op, node, self.term())
        return node

    def term(self):
        node = self.factor()
        while self.peek() and self.peek()[1] in "*/":
            op = self.take()[1]
            node = (op, node, self.factor())
        return node

    def factor(self):
        if self.peek() and self.peek()[1] == "-":
            self.take()
            return ("neg", self.factor())
        return self.atom()

    def atom(self):
        tok = self.peek()
        if tok is None:
            raise ExprError("unexpected end of expression")
        if tok[0] == "num":
            self.take()
            return ("lit", _decimal_to_fraction(tok[1]))
        if tok[1] == "(":
            self.take()
            node = self.expr()
            self.take(value=")")
            return node
        if tok[0] == "name":
            return self.call()
        raise ExprError(f"unexpected {tok[1]!r} at position {tok[2]}")

    def call(self):
        name = self.take("name")[1]
        self.take(value="(")
        if name == "inv":
            arg = self.expr()
            self.take(value=";")
            delta = self.number()
            self.take(value=")")
            return ("inv", arg, delta)
        if name == "exp":
            arg = self.expr()
            self.take(value=")")
            return ("exp", arg)
        if name == "limit":
            form = self.take("name")[1]
            args = []
            while self.peek() and self.peek()[1] == ";":
                self.take()
                args.append(self.number())
            self.take(value=")")
            return ("limit", form, tuple(args))
        raise ExprError(f"unknown function {name!r}")

    def number(self) -> Fraction:
        sign = Fraction(1)
        if self.peek() and self.peek()[1] == "-":
            self.take()
            sign = Fraction(-1)
        tok = self.take("num")
        value = sign * _decimal_to_fraction(tok[1])
        if self.peek() and self.peek()[1] == "/":
            self.take()
            denom = _decimal_to_fraction(self.take("num")[1])
            if denom == 0:
                raise ExprError("zero denominator in literal")
            value /= denom
        return value


def evaluate(node) -> Fraction | Real:
    """Evaluate to an exact fraction where possible, a Real otherwise."""
    kind = node[0]
    if kind == "lit":
        return node[1]
    if kind == "neg":
        v = evaluate(node[1])
        return -v if isinstance(v, Fraction) else xreal.neg(v)
    if kind in "+-*/":
        a = evaluate(node[1])
        b = evaluate(node[2])
        if isinstance(a, Fraction) and isinstance(b, Fraction):
            if kind == "+":
                return a + b
            if kind == "-":
                return a - b
            if kind == "*":
                return a * b
            if b == 0:
                raise ExprError("division by exact zero")
            return a / b
        ra, rb = _to_real(a), _to_real(b)
        if kind == "+":
            return xreal.add(ra, rb)
        if kind == "-":
            return xreal.sub(ra, rb)
        if kind == "*":
            return xreal.mul(ra, rb)
        return xreal.mul(ra, _inverse(rb))
    if kind == "inv":
        arg = _to_real(evaluate(node[1]))
        return xreal.inv(arg, node[2])
    if kind == "exp":
        arg = evaluate(node[1])
        if isinstance(arg, Fraction):
            return xreal.exp_rational(arg)
        return xreal.exp_real(arg)
    if kind == "limit":
        return _limit_form(node[1], node[2])
    raise ExprError(f"unknown node {kind!r}")


def _to_real(v) -> Real:
    return xreal.real_of_rat(v) if isinstance(v, Fraction) else v


def _inverse(x: Real) -> Real:
    delta = xreal.find_apartness(x, APARTNESS_FLOOR)
    if delta is None:
        raise ExprError(
            f"no apartness witness for divisor above {APARTNESS_FLOOR}"
        )
    return xreal.inv(x, delta)


def _limit_form(form: str, args: tuple[Fraction, ...]) -> Real:
    if form == "inv_n":
        if args:
            raise ExprError("limit(inv_n) takes no arguments")
        seq = ConvergentSeq(
            terms=lambda n: xreal.real_of_rat(Fraction(1, n + 1)),
            modulus=lambda eps: _ceil(2 / eps),
        )
        return xreal.limit(seq)
    if form == "geometric":
        if len(args) != 1:
            raise ExprError("limit(geometric; r) takes one ratio")
        r = args[0]
        if not abs(r) < 1:
            raise ExprError("geometric ratio must satisfy |r| < 1")
        return xreal.sum_series(
            terms=lambda n: xreal.real_of_rat(r**n),
            tail_bound=lambda n: abs(r) ** (n + 1) / (1 - abs(r)),
            tail_index=lambda eps: _geometric_index(r, eps),
        )
    raise ExprError(f"unknown limit form {form!r}")


def _ceil(q: Fraction) -> int:
    return -((-q.numerator) // q.denominator)


def _geometric_index(r: Fraction, eps: Fraction) -> int:
    n = 0
    while abs(r) ** (n + 1) / (1 - abs(r)) > eps:
        n += 1
    return n


def eval_expression(text: str, eps) -> xreal.RInterval:
    """Parse and evaluate, returning one interval at the given precision."""
    value = evaluate(Parser(text).parse())
    return _to_real(value).approx(eps)


def format_interval(iv: xreal.RInterval, eps: Fraction, eps_text: str) -> str:
    """Exact-decimal rendering: midpoint rounded to enough digits that the
    printed value plus-minus eps still encloses the interval."""
    digits = 0
    scale = Fraction(1)
    while scale > eps:
        scale /= 10
        digits += 1
    mid = iv.midpoint
    scaled = mid * 10**digits
    rounded = (scaled.numerator * 2 + scaled.denominator) // (2 * scaled.denominator)
    sign = "-" if rounded < 0 else ""
    rounded = abs(rounded)
    whole, frac = divmod(rounded, 10**digits)
    if digits:
        return f"{sign}{whole}.{frac:0{digits}d} ± {eps_text}"
    return f"{sign}{whole} ± {eps_text}"
