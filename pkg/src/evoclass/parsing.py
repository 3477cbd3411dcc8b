"""Element grammar.

    expr   := term (('+' | '-') term)*
    term   := ['+' | '-'] ( coeff [['*'] mono] | mono )
    coeff  := INT ['/' INT]
    mono   := VAR ['^' ['-'] INT]

A missing coefficient means 1 and a bare variable means exponent 1.
Negative exponents are accepted only by Laurent domains; the unicode minus
sign is read as ``-``.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .errors import DivisionByZero, NotDivisible, ParseError
from .ring import Domain, Elem, Integers, LaurentInt, Poly, PrimeField, Rationals

_TOKEN = re.compile(r"\s*(?:(?P<int>\d+)|(?P<var>[A-Za-z_]\w*)|(?P<op>[-+*/^]))")


def _tokenize(text):
    text = text.replace("−", "-")
    tokens = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            bad = len(text) - len(text[pos:].lstrip())
            raise ParseError(f"unexpected character {text[bad]!r}", bad)
        kind = m.lastgroup
        tokens.append((kind, m.group(kind), m.start(kind)))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text):
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def accept(self, op):
        kind, value, _ = self.peek()
        if kind == "op" and value == op:
            self.i += 1
            return True
        return False

    def expect_int(self):
        kind, value, pos = self.take()
        if kind != "int":
            raise ParseError(f"unexpected {value or 'end of input'!r}", pos, "integer")
        return int(value)

    def expr(self):
        terms = [self.term()]
        while True:
            kind, value, _ = self.peek()
            if kind == "op" and value in "+-":
                self.take()
                c, e, v = self.term()
                terms.append((-c if value == "-" else c, e, v))
            else:
                break
        kind, value, pos = self.peek()
        if kind != "end":
            raise ParseError(f"unexpected {value!r}", pos, "'+', '-' or end of input")
        return terms

    def term(self):
        sign = 1
        while True:
            if self.accept("-"):
                sign = -sign
            elif not self.accept("+"):
                break
        kind, value, pos = self.peek()
        coeff = Fraction(1)
        if kind == "int":
            self.take()
            coeff = Fraction(int(value))
            if self.accept("/"):
                _, _, dpos = self.peek()
                den = self.expect_int()
                if den == 0:
                    raise ParseError("zero denominator", dpos)
                coeff /= den
            starred = self.accept("*")
            kind, value, pos = self.peek()
            if kind != "var":
                if starred:
                    raise ParseError(f"unexpected {value or 'end of input'!r}", pos, "variable")
                return sign * coeff, 0, None
        elif kind != "var":
            raise ParseError(
                f"unexpected {value or 'end of input'!r}", pos, "integer or variable"
            )
        var = self.take()[1]
        exp = 1
        if self.accept("^"):
            neg = self.accept("-")
            exp = self.expect_int()
            if neg:
                exp = -exp
        return sign * coeff, exp, (var, pos)


def parse_terms(text: str) -> list[tuple[Fraction, int, tuple | None]]:
    """Parse into ``(coefficient, exponent, (var, pos) | None)`` triples."""
    return _Parser(text).expr()


def parse_elem(d: Domain, text: str) -> Elem:
    terms = parse_terms(text)
    var = getattr(d, "var", None)
    for _, exp, v in terms:
        if v is None:
            continue
        name, pos = v
        if var is None:
            raise ParseError(f"{d.descriptor} has no variable, got {name!r}", pos, "constant")
        if name != var:
            raise ParseError(f"unknown variable {name!r}", pos, repr(var))
        if exp < 0 and not isinstance(d, LaurentInt):
            raise ParseError(f"negative exponent in {d.descriptor}", pos)

    try:
        if isinstance(d, (Integers, LaurentInt)):
            for c, _, _ in terms:
                if c.denominator != 1:
                    raise ParseError(f"fraction {c} not allowed in {d.descriptor}", 0)
        if isinstance(d, (Integers, Rationals, PrimeField)):
            total = sum((c for c, _, _ in terms), Fraction(0))
            return d(total)
        if isinstance(d, Poly):
            result = d.zero
            for c, exp, _ in terms:
                result = result + _poly_term(d, c, exp)
            return result
        if isinstance(d, LaurentInt):
            result = d.zero
            for c, exp, _ in terms:
                result = result + d.monomial(c.numerator, exp)
            return result
    except (DivisionByZero, NotDivisible) as exc:
        raise ParseError(str(exc), 0) from None
    raise ParseError(f"no parser for {d.descriptor}")


def _poly_term(d: Poly, c: Fraction, exp: int) -> Elem:
    zero = d.base.from_int(0)
    coeffs = (zero,) * exp + (d.base.from_fraction(c),)
    return Elem(d, coeffs) if not d.base.is_zero(coeffs[-1]) else d.zero
