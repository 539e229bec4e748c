"""Text form of polynomials.

Grammar (whitespace is allowed between tokens)::

    poly  := [sign] term { sign term }
    term  := coeff [ '*' monom ] | monom
    coeff := int [ '/' posint ]
    monom := var [ '^' posint ] { '*' var [ '^' posint ] }

Printing uses graded-lex order (x > y > u > v), highest term first, with
explicit signs, so ``parse_poly(format_poly(P)) == P``.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .errors import ParseError
from .poly import GENS, Poly, UPoly, grlex_key


class _Scanner:
    def __init__(self, text: str, variables: Sequence[str]):
        self.text = text
        self.pos = 0
        self.variables = tuple(variables)

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def fail(self, message: str, expected):
        self.skip_ws()
        raise ParseError(message, self.pos, expected)

    def digits(self, expected) -> int:
        self.skip_ws()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if start == self.pos:
            self.pos = start
            self.fail("expected a number", expected)
        return int(self.text[start:self.pos])

    def posint(self) -> int:
        self.skip_ws()
        start = self.pos
        value = self.digits({"posint"})
        if value == 0:
            raise ParseError("expected a positive integer", start, {"posint"})
        return value

    def var(self) -> str:
        c = self.peek()
        if c in self.variables:
            self.pos += 1
            return c
        self.fail("expected a variable", set(self.variables))


def parse_poly(text: str, variables: Sequence[str] = GENS) -> Poly:
    """Parse ``text`` into a :class:`Poly`; raises :class:`ParseError` on bad input."""
    return Poly.from_terms(_parse_terms(text, variables), variables)


def parse_upoly(text: str, var: str = "t") -> UPoly:
    """Parse a univariate polynomial in ``var``."""
    terms = _parse_terms(text, (var,))
    top = max((k[0] for k in terms), default=-1)
    return UPoly(terms.get((k,), 0) for k in range(top + 1))


def _parse_terms(text: str, variables: Sequence[str]) -> dict:
    for v in variables:
        if len(v) != 1:
            raise ValueError("variables must be single letters")
    s = _Scanner(text, variables)
    index = {v: i for i, v in enumerate(variables)}
    terms: dict = {}
    start_tokens = {"sign", "int", *variables}

    def monom(exps: list):
        while True:
            v = s.var()
            e = 1
            if s.peek() == "^":
                s.pos += 1
                e = s.posint()
            exps[index[v]] += e
            if s.peek() == "*":
                s.pos += 1
                continue
            return

    def term(sign: int):
        exps = [0] * len(variables)
        c = s.peek()
        if c.isdigit():
            coeff = Fraction(s.digits({"int"}))
            if s.peek() == "/":
                s.pos += 1
                coeff /= s.posint()
            if s.peek() == "*":
                s.pos += 1
                monom(exps)
        elif c in variables:
            coeff = Fraction(1)
            monom(exps)
        else:
            s.fail("expected a term", {"int", *variables})
        key = tuple(exps)
        terms[key] = terms.get(key, Fraction(0)) + sign * coeff

    sign = 1
    c = s.peek()
    if c == "":
        s.fail("empty polynomial", start_tokens)
    if c in "+-":
        sign = -1 if c == "-" else 1
        s.pos += 1
    term(sign)
    while True:
        c = s.peek()
        if c == "":
            break
        if c not in "+-":
            s.fail("unexpected character", {"sign", "*", "^", "end"})
        s.pos += 1
        term(-1 if c == "-" else 1)
    return {k: v for k, v in terms.items() if v}


def _format_coeff(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def _format_monom(exps: Sequence[int], gens: Sequence[str]) -> str:
    parts = []
    for g, e in zip(gens, exps):
        if e == 1:
            parts.append(g)
        elif e > 1:
            parts.append(f"{g}^{e}")
    return "*".join(parts)


def format_terms(terms: dict, gens: Sequence[str]) -> str:
    """Format ``{exponents: coefficient}`` over ``gens`` in graded-lex order."""
    items = sorted(((k, c) for k, c in terms.items() if c), key=lambda kv: grlex_key(kv[0]),
                   reverse=True)
    if not items:
        return "0"
    out = []
    for idx, (exps, c) in enumerate(items):
        neg = c < 0
        a = -c if neg else c
        mon = _format_monom(exps, gens)
        if not mon:
            body = _format_coeff(a)
        elif a == 1:
            body = mon
        else:
            body = f"{_format_coeff(a)}*{mon}"
        if idx == 0:
            out.append(f"-{body}" if neg else body)
        else:
            out.append(f" - {body}" if neg else f" + {body}")
    return "".join(out)


def format_poly(P: Poly) -> str:
    return format_terms(P.terms, GENS)


print_poly = format_poly
