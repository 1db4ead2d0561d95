"""Text grammar shared by scalars, polynomials, algebra words and CPolys.

One recursive-descent parser turns text into a small tree, which is then
folded using a *ring adapter*: an object with ``const``, ``var``, ``add``,
``sub``, ``mul``, ``neg``, ``pow`` and ``div_scalar``.  Multiplication is
kept in source order, so the same parser serves the noncommutative algebras.

Grammar::

    expr   := term (('+' | '-') term)*
    term   := unary (('*' | '/') unary)*
    unary  := ('+' | '-') unary | power
    power  := atom ('^' INT)?
    atom   := INT | NAME | '(' expr ')'

``i`` is always the imaginary unit.
"""

from __future__ import annotations

import re

from .scalar import Scalar, I, as_scalar


class ParseError(ValueError):
    """Malformed input text."""


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z])|(\S))")


def _tokenize(text):
    tokens = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            break
        num, name, op = m.groups()
        if num is not None:
            tokens.append(("int", int(num)))
        elif name is not None:
            tokens.append(("name", name))
        else:
            if op not in "+-*/^()":
                raise ParseError(f"unexpected character {op!r} in {text!r}")
            tokens.append(("op", op))
        pos = m.end()
    tokens.append(("end", None))
    return tokens


class _Parser:
    def __init__(self, text, ring):
        self.text = text
        self.tokens = _tokenize(text)
        self.pos = 0
        self.ring = ring

    def peek(self):
        return self.tokens[self.pos]

    def take(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect_op(self, op):
        tok = self.take()
        if tok != ("op", op):
            raise ParseError(f"expected {op!r} in {self.text!r}")

    def parse(self):
        if self.peek()[0] == "end":
            raise ParseError("empty expression")
        value = self.expr()
        if self.peek()[0] != "end":
            raise ParseError(f"trailing input in {self.text!r}")
        return value

    def expr(self):
        value = self.term()
        while self.peek() in (("op", "+"), ("op", "-")):
            op = self.take()[1]
            rhs = self.term()
            value = self.ring.add(value, rhs) if op == "+" else self.ring.sub(value, rhs)
        return value

    def term(self):
        value = self.unary()
        while self.peek() in (("op", "*"), ("op", "/")):
            op = self.take()[1]
            rhs = self.unary()
            value = self.ring.mul(value, rhs) if op == "*" else self.ring.div_scalar(value, rhs)
        return value

    def unary(self):
        tok = self.peek()
        if tok == ("op", "-"):
            self.take()
            return self.ring.neg(self.unary())
        if tok == ("op", "+"):
            self.take()
            return self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek() == ("op", "^"):
            self.take()
            tok = self.take()
            if tok[0] != "int":
                raise ParseError(f"exponent must be a non-negative integer in {self.text!r}")
            return self.ring.pow(base, tok[1])
        return base

    def atom(self):
        kind, val = self.take()
        if kind == "int":
            return self.ring.const(Scalar(val))
        if kind == "name":
            if val == "i":
                return self.ring.const(I)
            return self.ring.var(val)
        if (kind, val) == ("op", "("):
            inner = self.expr()
            self.expect_op(")")
            return inner
        if kind == "end":
            raise ParseError(f"unexpected end of input in {self.text!r}")
        raise ParseError(f"unexpected token {val!r} in {self.text!r}")


def parse(text: str, ring):
    """Parse ``text`` and fold it with the ring adapter ``ring``."""
    if not isinstance(text, str):
        raise ParseError(f"expected text, got {type(text).__name__}")
    return _Parser(text, ring).parse()


class RingAdapter:
    """Default folding for anything supporting ``+ - *`` with scalars.

    Subclasses supply ``const`` and ``var``; ``scalar_of`` must return the
    element as a Scalar when it is a constant and ``None`` otherwise.
    """

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def pow(self, a, k):
        result = self.const(Scalar(1))
        for _ in range(k):
            result = self.mul(result, a)
        return result

    def div_scalar(self, a, b):
        c = self.scalar_of(b)
        if c is None:
            raise ParseError("division is only allowed by scalar constants")
        return self.mul(a, self.const(as_scalar(1) / c))

    def scalar_of(self, x):
        raise NotImplementedError


class _ScalarRing(RingAdapter):
    def const(self, c):
        return c

    def var(self, name):
        raise ParseError(f"unexpected variable {name!r} in scalar text")

    def scalar_of(self, x):
        return x

    def pow(self, a, k):
        return a ** k


SCALAR_RING = _ScalarRing()


def format_terms(terms) -> str:
    """Join ``(coefficient, monomial_text)`` pairs into parseable text.

    ``monomial_text`` is ``""`` for the constant term.  Coefficients that
    have both real and imaginary parts are parenthesised.
    """
    from .scalar import format_scalar

    parts = []
    for c, mono in terms:
        if c.is_zero():
            continue
        if c.is_real() or c.is_imaginary():
            negative = (c.re < 0) if c.is_real() else (c.im < 0)
            mag = -c if negative else c
            if mono and mag == 1:
                body = mono
            elif mono:
                body = f"{format_scalar(mag)}*{mono}"
            else:
                body = format_scalar(mag)
            sign = "-" if negative else "+"
        else:
            ct = f"({format_scalar(c)})"
            body = f"{ct}*{mono}" if mono else ct
            sign = "+"
        parts.append((sign, body))
    if not parts:
        return "0"
    out = []
    for idx, (sign, body) in enumerate(parts):
        if idx == 0:
            out.append(body if sign == "+" else f"-{body}")
        else:
            out.append(f"{sign}{body}")
    return "".join(out)
