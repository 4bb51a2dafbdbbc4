"""Rational self-maps of the projective line as coprime integer binary forms.

Iteration, critical/ramification structure, exceptional points,
powering-conjugacy detection, good reduction, preimage counting, and
certified non-preperiodicity.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Sequence

from . import binforms
from .binforms import Form
from .exactarith import PlaceSet, log_int
from .primes import factor
from .projective import INFINITY, ProjPoint

DEFAULT_FORM_DEGREE_CAP = 4096


class RatMapError(ValueError):
    pass


class FormDegreeCapError(RatMapError):
    pass


def _normalize_pair(p: Sequence[int], q: Sequence[int]) -> tuple[Form, Form]:
    """Joint content-1 normalization with deterministic sign (first nonzero
    coefficient of the concatenated pair positive)."""
    g = math.gcd(binforms.content(p), binforms.content(q))
    if g == 0:
        raise RatMapError("zero map")
    p = [c // g for c in p]
    q = [c // g for c in q]
    for c in list(p) + list(q):
        if c != 0:
            if c < 0:
                p = [-x for x in p]
                q = [-x for x in q]
            break
    return tuple(p), tuple(q)


@dataclass(frozen=True)
class RatMap:
    """A degree-d >= 2 rational map [P(x0,x1) : Q(x0,x1)] with integer
    coprime-content forms and nonzero resultant."""

    p: Form
    q: Form

    def __post_init__(self):
        if len(self.p) != len(self.q):
            raise RatMapError("numerator and denominator forms must have equal degree")
        if len(self.p) < 3:
            raise RatMapError("degree below 2")
        p, q = _normalize_pair(self.p, self.q)
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "q", q)
        if self.resultant == 0:
            raise RatMapError("p and q not coprime")

    @property
    def degree(self) -> int:
        return len(self.p) - 1

    @cached_property
    def resultant(self) -> int:
        return binforms.sylvester_resultant(self.p, self.q)

    @cached_property
    def wronskian(self) -> Form:
        """Primitive part of dP/dx0 * dQ/dx1 - dP/dx1 * dQ/dx0 (deg 2d-2)."""
        w = binforms.sub(
            binforms.mul(binforms.dx0(self.p), binforms.dx1(self.q)),
            binforms.mul(binforms.dx1(self.p), binforms.dx0(self.q)),
        )
        return binforms.primitive(w)

    @cached_property
    def is_polynomial(self) -> bool:
        """True when the denominator form is c * x1^d (f fixes no finite
        pole; affine f is a polynomial)."""
        return all(c == 0 for c in self.q[:-1])

    @cached_property
    def height_drop_constant(self) -> float:
        """A constant c_f with h(f(P)) >= d*h(P) - c_f for all P, from the
        Sylvester cofactor identity g1*P + g2*Q = Res * x0^(2d-1) etc."""
        res, g1, g2, h1, h2 = binforms.bezout_cofactors(self.p, self.q)
        cof_max = max(abs(c) for cs in (g1, g2, h1, h2) for c in cs)
        cof_max = max(cof_max, 1)
        return log_int(abs(res)) + math.log(2 * self.degree) + log_int(cof_max)

    @cached_property
    def escape_threshold(self) -> float:
        """Log-height above which heights strictly increase forever."""
        return self.height_drop_constant / (self.degree - 1) + math.log(2)

    def serialize_coefficients(self) -> str:
        """Canonical coefficient-list format "num=c_k,...,c_0;den=...";
        coefficients of the dehomogenized p, q descending."""
        num = ",".join(str(c) for c in _strip_leading(self.p))
        den = ",".join(str(c) for c in _strip_leading(self.q))
        return f"num={num};den={den}"


def _strip_leading(cs: Sequence[int]) -> tuple[int, ...]:
    i = 0
    while i < len(cs) - 1 and cs[i] == 0:
        i += 1
    return tuple(cs[i:])


def make_map(
    num_coeffs: Sequence[Fraction | int], den_coeffs: Sequence[Fraction | int]
) -> RatMap:
    """Build a RatMap from rational coefficient lists (descending powers)
    of the affine numerator p and denominator q."""
    num = [Fraction(c) for c in num_coeffs]
    den = [Fraction(c) for c in den_coeffs]
    while len(num) > 1 and num[0] == 0:
        num.pop(0)
    while len(den) > 1 and den[0] == 0:
        den.pop(0)
    if not num or all(c == 0 for c in num):
        raise RatMapError("numerator is zero")
    if not den or all(c == 0 for c in den):
        raise RatMapError("denominator is zero")
    deg_p, deg_q = len(num) - 1, len(den) - 1
    d = max(deg_p, deg_q)
    if d < 2:
        raise RatMapError("degree below 2")
    if _poly_gcd_degree(num, den) > 0:
        raise RatMapError("p and q not coprime")
    lcm = 1
    for c in num + den:
        lcm = lcm * c.denominator // math.gcd(lcm, c.denominator)
    p_form = [0] * (d - deg_p) + [int(c * lcm) for c in num]
    q_form = [0] * (d - deg_q) + [int(c * lcm) for c in den]
    return RatMap(tuple(p_form), tuple(q_form))


def _poly_gcd_degree(a: list[Fraction], b: list[Fraction]) -> int:
    """Degree of gcd of two univariate rational polynomials (Euclid)."""
    a, b = a[:], b[:]
    while b and any(c != 0 for c in b):
        a, b = b, _poly_mod(a, b)
    while a and a[0] == 0:
        a.pop(0)
    return len(a) - 1


def _poly_mod(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    a = a[:]
    while b and b[0] == 0:
        b = b[1:]
    while len(a) >= len(b):
        if a[0] != 0:
            f = a[0] / b[0]
            for i in range(len(b)):
                a[i] -= f * b[i]
        a.pop(0)
    return a


def eval_map(f: RatMap, pt: ProjPoint) -> ProjPoint:
    """Image of a point: [P(a) : Q(a)], normalized."""
    v0 = binforms.evaluate(f.p, pt.a0, pt.a1)
    v1 = binforms.evaluate(f.q, pt.a0, pt.a1)
    return ProjPoint(v0, v1)


def iterate(f: RatMap, pt: ProjPoint, n: int) -> ProjPoint:
    """f applied n times (n >= 0), normalizing after each step."""
    if n < 0:
        raise RatMapError("negative iterate")
    for _ in range(n):
        pt = eval_map(f, pt)
    return pt


@lru_cache(maxsize=None)
def iterated_forms(
    f: RatMap, n: int, cap: int = DEFAULT_FORM_DEGREE_CAP
) -> tuple[Form, Form]:
    """Coprime content-1 forms (P_n, Q_n) of degree d^n with P_n/Q_n = f^n."""
    if n < 1:
        raise RatMapError("iterated_forms requires n >= 1")
    if f.degree**n > cap:
        raise FormDegreeCapError("form degree cap")
    if n == 1:
        return f.p, f.q
    prev_p, prev_q = iterated_forms(f, n - 1, cap)
    pn = binforms.compose_pair(f.p, prev_p, prev_q)
    qn = binforms.compose_pair(f.q, prev_p, prev_q)
    return _normalize_pair(pn, qn)


def bad_reduction_primes(f: RatMap) -> PlaceSet:
    """Primes dividing Res(P, Q): exactly the primes of bad reduction."""
    res = abs(f.resultant)
    if res == 1:
        return PlaceSet()
    return PlaceSet(tuple(factor(res)))


@dataclass(frozen=True)
class CriticalDatum:
    """One critical point (rational, or an irreducible-factor tag)."""

    point: ProjPoint | None
    factor: Form | None
    factor_degree: int
    ramification_index: int
    totally_ramified: bool
    periodic: bool | None
    period: int | None


def orbit_classify(
    f: RatMap, pt: ProjPoint, max_iter: int = 64
) -> tuple[str, int | None, int | None]:
    """Exact cycle detection: ('preperiodic', tail, period),
    ('wandering', escape_index, None), or ('undecided', None, None)."""
    seen: dict[ProjPoint, int] = {}
    cur = pt
    threshold = f.escape_threshold
    for i in range(max_iter + 1):
        if cur in seen:
            tail = seen[cur]
            return "preperiodic", tail, i - tail
        if log_int(max(abs(cur.a0), abs(cur.a1))) > threshold:
            return "wandering", i, None
        seen[cur] = i
        cur = eval_map(f, cur)
    return "undecided", None, None


def critical_data(f: RatMap) -> list[CriticalDatum]:
    """All critical points with ramification indices from Wronskian
    multiplicities; periodicity resolved for rational critical points."""
    d = f.degree
    x1_mult, factors = binforms.factor_form(f.wronskian)
    out: list[CriticalDatum] = []

    def rational_datum(point: ProjPoint, mult: int) -> CriticalDatum:
        e = mult + 1
        kind, tail, period = orbit_classify(f, point)
        periodic = kind == "preperiodic" and tail == 0
        return CriticalDatum(
            point=point,
            factor=None,
            factor_degree=1,
            ramification_index=e,
            totally_ramified=(e == d),
            periodic=periodic if kind != "undecided" else None,
            period=period if periodic else None,
        )

    if x1_mult > 0:
        out.append(rational_datum(INFINITY, x1_mult))
    for fac, mult in factors:
        if binforms.degree(fac) == 1:
            a, b = fac
            out.append(rational_datum(ProjPoint(-b, a), mult))
        else:
            e = mult + 1
            out.append(
                CriticalDatum(
                    point=None,
                    factor=fac,
                    factor_degree=binforms.degree(fac),
                    ramification_index=e,
                    totally_ramified=(e == d),
                    periodic=None,
                    period=None,
                )
            )
    return out


def exceptional_points(f: RatMap) -> list[ProjPoint | Form]:
    """Totally ramified fixed points of f^2 (at most two; a conjugate
    quadratic pair is reported as its irreducible form tag)."""
    d2 = f.degree**2
    p2, q2 = iterated_forms(f, 2)
    f2 = RatMap(p2, q2)
    fix2 = binforms.sub((0,) + f2.p, f2.q + (0,))
    x1_mult, factors = binforms.factor_form(f2.wronskian)
    out: list[ProjPoint | Form] = []
    if x1_mult == d2 - 1 and eval_map(f2, INFINITY) == INFINITY:
        out.append(INFINITY)
    for fac, mult in factors:
        if mult != d2 - 1:
            continue
        deg = binforms.degree(fac)
        if deg == 1:
            a, b = fac
            z = ProjPoint(-b, a)
            if eval_map(f2, z) == z:
                out.append(z)
        elif deg == 2:
            if binforms.divides(fac, fix2):
                out.append(fac)
    return out


@dataclass(frozen=True)
class PoweringWitness:
    """Classification of f as (not) conjugate to x^(+/-d), with the
    invariant totally ramified pair when it exists."""

    is_powering: bool
    pair: tuple[ProjPoint, ProjPoint] | Form | None
    kind: str | None  # 'fixed' (x^d type) or 'swapped' (x^-d type)


def is_powering_conjugate(f: RatMap) -> PoweringWitness:
    """True iff f has two distinct totally ramified points whose unordered
    pair is f-invariant (conjugacy over the algebraic closure)."""
    data = critical_data(f)
    tr_rational = [c.point for c in data if c.totally_ramified and c.point is not None]
    tr_quadratic = [
        c.factor
        for c in data
        if c.totally_ramified and c.factor is not None and c.factor_degree == 2
    ]
    if len(tr_rational) == 2:
        a, b = tr_rational
        fa, fb = eval_map(f, a), eval_map(f, b)
        if {fa, fb} == {a, b}:
            kind = "fixed" if fa == a else "swapped"
            return PoweringWitness(True, (a, b), kind)
        return PoweringWitness(False, None, None)
    if len(tr_rational) == 0 and len(tr_quadratic) == 1:
        fac = tr_quadratic[0]
        qa, qb, qc = fac
        composed = binforms.add(
            binforms.add(
                binforms.scale(binforms.mul(f.p, f.p), qa),
                binforms.scale(binforms.mul(f.p, f.q), qb),
            ),
            binforms.scale(binforms.mul(f.q, f.q), qc),
        )
        if binforms.divides(fac, composed):
            fix1 = binforms.sub((0,) + f.p, f.q + (0,))
            kind = "fixed" if binforms.divides(fac, fix1) else "swapped"
            return PoweringWitness(True, fac, kind)
    return PoweringWitness(False, None, None)


def preimage_count(
    f: RatMap, b: ProjPoint, k: int, cap: int = DEFAULT_FORM_DEGREE_CAP
) -> int:
    """Number of distinct points of f^{-k}(b) over the algebraic closure."""
    if k < 1:
        raise RatMapError("k must be positive")
    pk, qk = iterated_forms(f, k, cap)
    form = binforms.sub(binforms.scale(pk, b.a1), binforms.scale(qk, b.a0))
    return binforms.distinct_root_count(form)


@dataclass(frozen=True)
class EscapeCertificate:
    """Witness that an orbit escapes: once the log height of an iterate
    exceeds ``threshold`` = c_f/(d-1) + log 2, heights strictly increase
    forever, so no repeat is possible."""

    threshold: float
    achieved_at: int
    c_f: float


@dataclass(frozen=True)
class WanderingResult:
    kind: str  # 'preperiodic' | 'wandering' | 'undecided'
    tail: int | None = None
    period: int | None = None
    certificate: EscapeCertificate | None = None


def certify_wandering(f: RatMap, u: ProjPoint, max_iter: int = 64) -> WanderingResult:
    """Decide preperiodic vs wandering by exact cycle detection plus the
    conservative height-escape certificate; 'undecided' is allowed."""
    if max_iter < 1:
        raise RatMapError("max_iter must be >= 1")
    kind, tail, period = orbit_classify(f, u, max_iter)
    if kind == "preperiodic":
        return WanderingResult("preperiodic", tail=tail, period=period)
    if kind == "wandering":
        cert = EscapeCertificate(
            threshold=f.escape_threshold,
            achieved_at=tail if tail is not None else 0,
            c_f=f.height_drop_constant,
        )
        return WanderingResult("wandering", certificate=cert)
    return WanderingResult("undecided")


def periodic_normalization_multiplier(f: RatMap) -> int:
    """Advisory iterate multiplier: lcm of the periods of the detected
    periodic rational critical points (1 when there are none)."""
    m = 1
    for c in critical_data(f):
        if c.periodic and c.period:
            m = m * c.period // math.gcd(m, c.period)
    return m


def mobius_conjugate(f: RatMap, matrix: tuple[tuple[int, int], tuple[int, int]]) -> RatMap:
    """Conjugate f by the Moebius map x -> (a x + b) / (c x + d) given as an
    invertible integer matrix ((a, b), (c, d))."""
    (a, b), (c, d) = matrix
    if a * d - b * c == 0:
        raise RatMapError("conjugation matrix is singular")
    inv0, inv1 = (d, -b), (-c, a)
    comp_p = binforms.compose_pair(f.p, inv0, inv1)
    comp_q = binforms.compose_pair(f.q, inv0, inv1)
    new_p = binforms.add(binforms.scale(comp_p, a), binforms.scale(comp_q, b))
    new_q = binforms.add(binforms.scale(comp_p, c), binforms.scale(comp_q, d))
    return RatMap(new_p, new_q)
