"""Foundation types: exact rationals, prime place sets, valuations, heights.

Rationals are ``fractions.Fraction`` throughout -- already canonical
(reduced, positive denominator).  A :class:`PlaceSet` holds finite rational
primes only; the archimedean place is always implicitly a member and is
never stored.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .primes import is_prime

Rational = Fraction

_LOG2 = math.log(2)


class ExactArithError(ValueError):
    pass


@dataclass(frozen=True)
class PlaceSet:
    """A finite sorted set of rational primes (archimedean place implicit)."""

    primes: tuple[int, ...] = ()

    def __post_init__(self):
        ps = tuple(sorted(set(self.primes)))
        for p in ps:
            if not is_prime(p):
                raise ExactArithError(f"{p} is not prime")
        object.__setattr__(self, "primes", ps)

    def __contains__(self, p: int) -> bool:
        return p in self.primes

    def __iter__(self):
        return iter(self.primes)

    def __len__(self) -> int:
        return len(self.primes)

    def union(self, other: "PlaceSet | Iterable[int]") -> "PlaceSet":
        other_primes = other.primes if isinstance(other, PlaceSet) else tuple(other)
        return PlaceSet(self.primes + other_primes)

    def issuperset(self, other: "PlaceSet") -> bool:
        return set(self.primes) >= set(other.primes)

    @classmethod
    def parse(cls, text: str) -> "PlaceSet":
        """Parse comma-separated primes, e.g. ``"2,3,7"``; "" is empty."""
        text = text.strip()
        if not text:
            return cls()
        return cls(tuple(int(tok) for tok in text.split(",")))

    def serialize(self) -> str:
        return ",".join(str(p) for p in self.primes)


def parse_rational(text: str) -> Fraction:
    """Parse a rational from canonical "p/q" or integer "n" form."""
    return Fraction(text.strip())


def format_rational(q: Fraction) -> str:
    """Canonical reduced form: "-3/7", integers as "5"."""
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def int_valuation(n: int, p: int) -> int:
    """Largest k with p^k | n, for n != 0."""
    if n == 0:
        raise ExactArithError("valuation of zero undefined")
    k = 0
    n = abs(n)
    while n % p == 0:
        n //= p
        k += 1
    return k


def valuation(q: Fraction | int, p: int) -> int:
    """p-adic valuation v_p(q) of a nonzero rational; |q|_p = p^(-v_p(q))."""
    q = Fraction(q)
    if q == 0:
        raise ExactArithError("valuation of zero undefined")
    if not is_prime(p):
        raise ExactArithError(f"{p} is not prime")
    return int_valuation(q.numerator, p) - int_valuation(q.denominator, p)


def remove_prime_power(n: int, p: int) -> int:
    """n with all factors of p divided out."""
    n = abs(n)
    while n % p == 0:
        n //= p
    return n


def s_free_part(n: int, s: PlaceSet) -> int:
    """|n| with all factors of primes in S removed."""
    n = abs(n)
    for p in s:
        n = remove_prime_power(n, p)
    return n


def is_s_unit(q: Fraction | int, s: PlaceSet) -> bool:
    """True iff v_p(q) = 0 for every prime p outside S (q nonzero)."""
    q = Fraction(q)
    if q == 0:
        raise ExactArithError("zero is not an S-unit")
    return s_free_part(q.numerator, s) == 1 and s_free_part(q.denominator, s) == 1


def log_int(n: int) -> float:
    """log of a positive integer, safe for values far beyond float range."""
    if n <= 0:
        raise ExactArithError("log of non-positive integer")
    if n.bit_length() <= 900:
        return math.log(n)
    shift = n.bit_length() - 64
    return math.log(n >> shift) + shift * _LOG2


def log_height(q: Fraction | int) -> float:
    """Logarithmic height log max(|numerator|, denominator).

    Diagnostic only: no exact-rational comparison may depend on this float.
    """
    q = Fraction(q)
    return log_int(max(abs(q.numerator), q.denominator, 1))
