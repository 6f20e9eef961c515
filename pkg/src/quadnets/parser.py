"""Parser for polynomial expressions such as ``"ad-bc, ae+bd-c^2, be-cd"``.

Grammar (whitespace ignored)::

    list       := expression (',' expression)*
    expression := ['+'|'-'] term (('+'|'-') term)*
    term       := rational ['*'] monomial | rational | monomial
    monomial   := factor (['*'] factor)*
    factor     := variable ['^' integer]
    rational   := integer ['/' integer]

Single-letter variables multiply implicitly, so ``ad`` means ``a*d``.
"""
from __future__ import annotations

from fractions import Fraction

from .algebra import MultiPoly
from .net import VARIABLES, InvalidNetError, Net, Pencil, QuadraticForm


class ParseError(ValueError):
    def __init__(self, message: str, position: int, text: str = ""):
        super().__init__(f"{message} at position {position}")
        self.position = position
        self.text = text


class InhomogeneousError(ValueError):
    pass


class _Parser:
    def __init__(self, text: str, variables: tuple[str, ...]):
        self.text = text
        self.variables = variables
        self.pos = 0

    def error(self, message: str):
        raise ParseError(message, self.pos, self.text)

    def skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def integer(self) -> int:
        self.skip()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if start == self.pos:
            self.error("expected an integer")
        return int(self.text[start:self.pos])

    def factor_exponent(self) -> list[int]:
        exp = [0] * len(self.variables)
        ch = self.peek()
        if ch not in self.variables:
            self.error(f"unexpected character {ch!r}" if ch else "unexpected end of input")
        self.pos += 1
        power = 1
        if self.peek() == "^":
            self.pos += 1
            power = self.integer()
        exp[self.variables.index(ch)] = power
        return exp

    def term(self) -> tuple[Fraction, tuple[int, ...]]:
        coeff = Fraction(1)
        exp = [0] * len(self.variables)
        seen = False
        if self.peek().isdigit():
            coeff = Fraction(self.integer())
            if self.peek() == "/":
                self.pos += 1
                den = self.integer()
                if den == 0:
                    self.error("zero denominator")
                coeff /= den
            seen = True
            if self.peek() == "*":
                self.pos += 1
                if self.peek() not in self.variables:
                    self.error("expected a variable after '*'")
        while True:
            ch = self.peek()
            if ch in self.variables and ch:
                exp = [x + y for x, y in zip(exp, self.factor_exponent())]
                seen = True
                if self.peek() == "*":
                    self.pos += 1
                    if self.peek() not in self.variables or not self.peek():
                        self.error("expected a variable after '*'")
            else:
                break
        if not seen:
            self.error(f"unexpected character {ch!r}" if ch else "unexpected end of input")
        return coeff, tuple(exp)

    def expression(self) -> MultiPoly:
        terms: dict[tuple, Fraction] = {}
        sign = 1
        if self.peek() in "+-" and self.peek():
            sign = -1 if self.peek() == "-" else 1
            self.pos += 1
        while True:
            c, e = self.term()
            terms[e] = terms.get(e, 0) + sign * c
            ch = self.peek()
            if ch in ("+", "-"):
                sign = -1 if ch == "-" else 1
                self.pos += 1
            else:
                break
        return MultiPoly(self.variables, terms)

    def expression_list(self) -> list[MultiPoly]:
        out = [self.expression()]
        while self.peek() == ",":
            self.pos += 1
            out.append(self.expression())
        if self.peek():
            self.error(f"unexpected character {self.peek()!r}")
        return out


def parse_polynomial(text: str, variables=VARIABLES) -> MultiPoly:
    (poly,) = parse_polynomials(text, variables)
    return poly


def parse_polynomials(text: str, variables=VARIABLES) -> list[MultiPoly]:
    return _Parser(text, tuple(variables)).expression_list()


def parse_quadric(text: str) -> QuadraticForm:
    return _to_quadric(parse_polynomial(text))


def _to_quadric(poly: MultiPoly) -> QuadraticForm:
    bad = [e for e in poly.terms if sum(e) != 2]
    if bad:
        raise InhomogeneousError(f"term of degree {sum(bad[0])} in {poly}; quadrics must be homogeneous of degree 2")
    return QuadraticForm.from_poly(poly)


def _parse_span(text: str, count: int, kind):
    polys = parse_polynomials(text)
    if len(polys) != count:
        raise InvalidNetError(f"expected {count} comma-separated quadrics, got {len(polys)}")
    forms = [_to_quadric(p) for p in polys]
    try:
        return kind(forms)
    except InvalidNetError:
        what = "net" if count == 3 else "pencil"
        raise InvalidNetError(f"quadrics are linearly dependent: not a {what}") from None


def parse_net(text: str) -> Net:
    return _parse_span(text, 3, Net)


def parse_pencil(text: str) -> Pencil:
    return _parse_span(text, 2, Pencil)


def format_span(span) -> str:
    return ", ".join(str(q) for q in span.basis)
