"""Expression parser for univariate rational functions over Q.

Grammar (documented for the CLI):

    expr   := term (('+' | '-') term)*
    term   := factor (('*' | '/') factor | factor)*   # adjacency multiplies
    factor := ('-' | '+') factor | atom ('^' INTEGER)*
    atom   := INTEGER | 'x' | '(' expr ')'

'^' binds tightest and is right-associative with nonnegative integer
exponents; rational constants are spelled as divisions, e.g. "1/2".
Parsing a map also accepts the canonical coefficient format
"num=c_k,...,c_0;den=c_j,...,c_0".
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .ratmap import RatMap, make_map


class ParseError(ValueError):
    pass


Poly = list[Fraction]  # descending coefficients


def _poly_trim(a: Poly) -> Poly:
    i = 0
    while i < len(a) - 1 and a[i] == 0:
        i += 1
    return a[i:]


def _poly_add(a: Poly, b: Poly) -> Poly:
    n = max(len(a), len(b))
    a = [Fraction(0)] * (n - len(a)) + a
    b = [Fraction(0)] * (n - len(b)) + b
    return _poly_trim([x + y for x, y in zip(a, b)])


def _poly_neg(a: Poly) -> Poly:
    return [-x for x in a]


def _poly_mul(a: Poly, b: Poly) -> Poly:
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _poly_trim(out)


def _poly_is_zero(a: Poly) -> bool:
    return all(c == 0 for c in a)


def _poly_divmod(a: Poly, b: Poly) -> tuple[Poly, Poly]:
    a = a[:]
    b = _poly_trim(b[:])
    q: Poly = []
    # keep zero quotient coefficients: stopping when the working remainder
    # happens to vanish early would silently drop trailing quotient terms
    while len(a) >= len(b):
        f = a[0] / b[0]
        q.append(f)
        if f:
            for i in range(len(b)):
                a[i] -= f * b[i]
        a.pop(0)
    return (q or [Fraction(0)]), _poly_trim(a or [Fraction(0)])


def _poly_gcd(a: Poly, b: Poly) -> Poly:
    a, b = _poly_trim(a[:]), _poly_trim(b[:])
    while not _poly_is_zero(b):
        _, r = _poly_divmod(a, b)
        a, b = b, r
    if _poly_is_zero(a):
        return [Fraction(1)]
    lead = a[0]
    return [c / lead for c in a]


@dataclass
class _RatFunc:
    num: Poly
    den: Poly

    def reduced(self) -> "_RatFunc":
        if _poly_is_zero(self.den):
            raise ParseError("division by zero polynomial")
        g = _poly_gcd(self.num, self.den)
        if len(g) > 1:
            num, _ = _poly_divmod(self.num, g)
            den, _ = _poly_divmod(self.den, g)
            return _RatFunc(_poly_trim(num), _poly_trim(den))
        return self


def _rf_const(c: Fraction) -> _RatFunc:
    return _RatFunc([c], [Fraction(1)])


def _rf_add(a: _RatFunc, b: _RatFunc) -> _RatFunc:
    return _RatFunc(
        _poly_add(_poly_mul(a.num, b.den), _poly_mul(b.num, a.den)),
        _poly_mul(a.den, b.den),
    )


def _rf_mul(a: _RatFunc, b: _RatFunc) -> _RatFunc:
    return _RatFunc(_poly_mul(a.num, b.num), _poly_mul(a.den, b.den))


def _rf_div(a: _RatFunc, b: _RatFunc) -> _RatFunc:
    if _poly_is_zero(b.num):
        raise ParseError("division by zero")
    return _RatFunc(_poly_mul(a.num, b.den), _poly_mul(a.den, b.num))


class _Tokenizer:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0
        self.tokens: list[tuple[str, str, int]] = []
        self._scan()
        self.index = 0

    def _scan(self):
        i, text = 0, self.text
        while i < len(text):
            ch = text[i]
            if ch.isspace():
                i += 1
                continue
            if ch.isdigit():
                j = i
                while j < len(text) and text[j].isdigit():
                    j += 1
                self.tokens.append(("int", text[i:j], i))
                i = j
                continue
            if ch == "x":
                self.tokens.append(("var", "x", i))
                i += 1
                continue
            if ch in "+-*/^()":
                self.tokens.append((ch, ch, i))
                i += 1
                continue
            raise ParseError(f"syntax error at position {i}: unexpected {ch!r}")
        self.tokens.append(("end", "", len(text)))

    def peek(self) -> tuple[str, str, int]:
        return self.tokens[self.index]

    def next(self) -> tuple[str, str, int]:
        tok = self.tokens[self.index]
        self.index += 1
        return tok


class _Parser:
    def __init__(self, text: str):
        self.toks = _Tokenizer(text)

    def parse(self) -> _RatFunc:
        value = self._expr()
        kind, _, pos = self.toks.peek()
        if kind != "end":
            raise ParseError(f"syntax error at position {pos}: trailing input")
        return value.reduced()

    def _expr(self) -> _RatFunc:
        value = self._term()
        while self.toks.peek()[0] in ("+", "-"):
            op = self.toks.next()[0]
            rhs = self._term()
            if op == "-":
                rhs = _RatFunc(_poly_neg(rhs.num), rhs.den)
            value = _rf_add(value, rhs)
        return value

    def _term(self) -> _RatFunc:
        value = self._factor()
        while True:
            kind = self.toks.peek()[0]
            if kind in ("*", "/"):
                op = self.toks.next()[0]
                rhs = self._factor()
                value = _rf_mul(value, rhs) if op == "*" else _rf_div(value, rhs)
            elif kind in ("int", "var", "("):
                # adjacency: "2x", "3(x+1)"
                value = _rf_mul(value, self._factor())
            else:
                return value

    def _factor(self) -> _RatFunc:
        kind, _, _ = self.toks.peek()
        if kind in ("+", "-"):
            op = self.toks.next()[0]
            value = self._factor()
            if op == "-":
                return _RatFunc(_poly_neg(value.num), value.den)
            return value
        return self._power()

    def _power(self) -> _RatFunc:
        base = self._atom()
        if self.toks.peek()[0] == "^":
            self.toks.next()
            kind, text, pos = self.toks.next()
            if kind != "int":
                raise ParseError(
                    f"syntax error at position {pos}: exponent must be a nonnegative integer"
                )
            exp = int(text)
            value = _rf_const(Fraction(1))
            for _ in range(exp):
                value = _rf_mul(value, base)
            return value
        return base

    def _atom(self) -> _RatFunc:
        kind, text, pos = self.toks.next()
        if kind == "int":
            return _rf_const(Fraction(int(text)))
        if kind == "var":
            return _RatFunc([Fraction(1), Fraction(0)], [Fraction(1)])
        if kind == "(":
            value = self._expr()
            kind2, _, pos2 = self.toks.next()
            if kind2 != ")":
                raise ParseError(f"syntax error at position {pos2}: expected ')'")
            return value
        raise ParseError(f"syntax error at position {pos}: unexpected {text or kind!r}")


def parse_rational_function(text: str) -> tuple[list[Fraction], list[Fraction]]:
    """Parse an expression to reduced (numerator, denominator) coefficient
    lists over Q, descending powers."""
    rf = _Parser(text).parse()
    # canonical: denominator leading coefficient positive
    if rf.den[0] < 0:
        rf = _RatFunc(_poly_neg(rf.num), _poly_neg(rf.den))
    return rf.num, rf.den


def parse_coefficient_format(text: str) -> RatMap:
    """Parse the canonical "num=c_k,...,c_0;den=c_j,...,c_0" format."""
    try:
        num_part, den_part = text.split(";")
        assert num_part.startswith("num=") and den_part.startswith("den=")
    except (ValueError, AssertionError):
        raise ParseError(f"cannot parse coefficient format: {text!r}") from None
    num = [Fraction(tok) for tok in num_part[4:].split(",")]
    den = [Fraction(tok) for tok in den_part[4:].split(",")]
    return make_map(num, den)


def parse_map(text: str) -> RatMap:
    """Parse a map from expression syntax or the coefficient format; the
    expression route round-trips bit-exactly through the coefficient format."""
    text = text.strip()
    if text.startswith("num="):
        return parse_coefficient_format(text)
    num, den = parse_rational_function(text)
    return make_map(num, den)
