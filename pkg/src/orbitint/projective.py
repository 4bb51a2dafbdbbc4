"""Points of the projective line over Q in normalized integer coordinates,
and the per-place chordal distance.

Normalization: coprime integer coordinates with the last nonzero coordinate
positive.  Infinity is [1:0].
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .exactarith import ExactArithError, int_valuation

ARCHIMEDEAN = "inf"


class ProjectiveError(ValueError):
    pass


@dataclass(frozen=True)
class ProjPoint:
    """Normalized point [a0:a1] of P1(Q)."""

    a0: int
    a1: int

    def __post_init__(self):
        if self.a0 == 0 and self.a1 == 0:
            raise ProjectiveError("not a projective point")
        g = math.gcd(self.a0, self.a1)
        a0, a1 = self.a0 // g, self.a1 // g
        if a1 < 0 or (a1 == 0 and a0 < 0):
            a0, a1 = -a0, -a1
        object.__setattr__(self, "a0", a0)
        object.__setattr__(self, "a1", a1)

    @property
    def is_infinity(self) -> bool:
        return self.a1 == 0

    def to_affine(self) -> Fraction | None:
        """Affine value a0/a1, or None for the point at infinity."""
        if self.a1 == 0:
            return None
        return Fraction(self.a0, self.a1)

    def serialize(self) -> str:
        return f"[{self.a0}:{self.a1}]"

    def __repr__(self) -> str:
        return f"ProjPoint({self.a0}, {self.a1})"


INFINITY = ProjPoint(1, 0)


def normalize(x0: Fraction | int, x1: Fraction | int) -> ProjPoint:
    """The unique normalized representative of [x0:x1], rational inputs ok."""
    x0, x1 = Fraction(x0), Fraction(x1)
    if x0 == 0 and x1 == 0:
        raise ProjectiveError("not a projective point")
    m = x0.denominator * x1.denominator
    return ProjPoint(int(x0 * m), int(x1 * m))


def from_affine(x: Fraction | int | None) -> ProjPoint:
    """Affine rational -> [num:den]; None -> [1:0]."""
    if x is None:
        return INFINITY
    x = Fraction(x)
    return ProjPoint(x.numerator, x.denominator)


def parse_point(text: str) -> ProjPoint:
    """Parse "[a0:a1]", affine shorthand "x" (rational), or "inf"."""
    text = text.strip()
    if text in ("inf", "oo", "infinity"):
        return INFINITY
    if text.startswith("["):
        if not text.endswith("]") or ":" not in text:
            raise ProjectiveError(f"cannot parse projective point: {text!r}")
        left, right = text[1:-1].split(":")
        return normalize(Fraction(left.strip()), Fraction(right.strip()))
    return from_affine(Fraction(text))


@dataclass(frozen=True)
class ChordalValue:
    """Chordal distance at one place: exact rational at finite places,
    float (documented 1e-12 relative budget) at the archimedean place."""

    place: int | str
    value: Fraction | float

    def __post_init__(self):
        assert 0 <= self.value <= 1


def chordal_distance(p: ProjPoint, q: ProjPoint, place: int | str) -> ChordalValue:
    """Chordal distance between two points at a finite prime or "inf".

    With normalized coordinates the coordinate norms at finite places are 1,
    so the non-archimedean value is p^(-v_p(cross)) exactly.
    """
    cross = p.a0 * q.a1 - p.a1 * q.a0
    if place == ARCHIMEDEAN or place is None:
        if cross == 0:
            return ChordalValue(ARCHIMEDEAN, 0.0)
        ratio = Fraction(
            cross * cross,
            (p.a0 * p.a0 + p.a1 * p.a1) * (q.a0 * q.a0 + q.a1 * q.a1),
        )
        return ChordalValue(ARCHIMEDEAN, math.sqrt(float(ratio)))
    if cross == 0:
        return ChordalValue(place, Fraction(0))
    try:
        v = int_valuation(cross, place)
    except ExactArithError:  # pragma: no cover
        raise
    return ChordalValue(place, Fraction(1, place**v))
