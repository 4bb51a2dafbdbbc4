"""Enumeration and structural analysis of the set of integral index pairs
(m, n) over a finite search window, with the powering-map and
exceptional-point special cases.

Global finiteness is not re-proved here: the search is an exhaustive
window enumeration plus hypothesis certificates, and every report says so.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from . import binforms
from .exactarith import PlaceSet, is_s_unit
from .integrality import IntegralityWitness, is_integral_pair, is_integral_rel_dn
from .primes import factor
from .projective import INFINITY, ProjPoint
from .ratmap import (
    PoweringWitness,
    RatMap,
    WanderingResult,
    bad_reduction_primes,
    certify_wandering,
    eval_map,
    exceptional_points,
    is_powering_conjugate,
    iterated_forms,
)

DEFAULT_ORBIT_CAP = 12
DEFAULT_DIGIT_BUDGET = 10**6

_LOG10_2 = 0.30102999566398120


class SearchError(ValueError):
    pass


@dataclass(frozen=True)
class PairWindow:
    """Inclusive search window 0..m_max x 0..n_max over N^2."""

    m_max: int
    n_max: int

    def __post_init__(self):
        if self.m_max < 0 or self.n_max < 0:
            raise SearchError("window bounds must be nonnegative")

    def __contains__(self, pair: tuple[int, int]) -> bool:
        m, n = pair
        return 0 <= m <= self.m_max and 0 <= n <= self.n_max


@dataclass(frozen=True)
class Hypotheses:
    """Status of the finiteness theorem's hypotheses for this instance."""

    u_status: WanderingResult
    w_status: WanderingResult
    powering: PoweringWitness
    exceptional: tuple
    theorem_applies: bool


@dataclass(frozen=True)
class PairReport:
    map: RatMap
    u: ProjPoint
    w: ProjPoint
    places: PlaceSet
    window: PairWindow
    pairs: tuple[tuple[int, int], ...]
    witnesses: dict = field(hash=False, compare=False, default_factory=dict)
    hypotheses: Hypotheses | None = None
    mode: str = "direct"
    truncated: bool = False
    effective_window: PairWindow | None = None
    frontier: int | None = None  # max over pairs of max(m, n)


def _orbit(f: RatMap, start: ProjPoint, length: int, digit_budget: int):
    """Orbit points start, f(start), ..., stopping early on digit budget.

    Returns (points, truncated)."""
    pts = [start]
    for _ in range(length):
        nxt = eval_map(f, pts[-1])
        digits = max(abs(nxt.a0), abs(nxt.a1)).bit_length() * _LOG10_2
        if digits > digit_budget:
            return pts, True
        pts.append(nxt)
    return pts, False


def find_integral_pairs(
    f: RatMap,
    u: ProjPoint,
    w: ProjPoint,
    s: PlaceSet,
    window: PairWindow,
    orbit_cap: int = DEFAULT_ORBIT_CAP,
    digit_budget: int = DEFAULT_DIGIT_BUDGET,
    mode: str = "direct",
    with_hypotheses: bool = True,
) -> PairReport:
    """Exact enumeration of the S-integral index pairs inside the window.

    Orbits are computed once; each grid cell is an independent exact
    cross-term test.  ``mode`` 'functorial' routes each test through the
    D_k form for k = min(m, n, 3) instead (requires S to contain the bad
    reduction primes); both modes produce identical pair sets.
    """
    if window.m_max > orbit_cap or window.n_max > orbit_cap:
        raise SearchError("window exceeds orbit cap")
    has_bad = s.issuperset(bad_reduction_primes(f))
    if mode == "functorial" and not has_bad:
        raise SearchError("functorial mode requires S to contain bad-reduction primes")

    u_orbit, u_trunc = _orbit(f, u, window.m_max, digit_budget)
    w_orbit, w_trunc = _orbit(f, w, window.n_max, digit_budget)
    truncated = u_trunc or w_trunc
    eff = PairWindow(len(u_orbit) - 1, len(w_orbit) - 1)

    pairs: list[tuple[int, int]] = []
    witnesses: dict[tuple[int, int], IntegralityWitness] = {}
    for m in range(eff.m_max + 1):
        for n in range(eff.n_max + 1):
            if mode == "functorial":
                k = min(m, n, 3)
                wit = is_integral_rel_dn(f, u_orbit[m - k], w_orbit[n - k], k, s)
            else:
                wit = is_integral_pair(u_orbit[m], w_orbit[n], s)
            witnesses[(m, n)] = wit
            if wit.verdict:
                pairs.append((m, n))

    hypo = None
    if with_hypotheses:
        depth = max(window.m_max, window.n_max) + 32
        u_status = certify_wandering(f, u, depth)
        w_status = certify_wandering(f, w, depth)
        powering = is_powering_conjugate(f)
        exc = tuple(exceptional_points(f))
        hypo = Hypotheses(
            u_status=u_status,
            w_status=w_status,
            powering=powering,
            exceptional=exc,
            theorem_applies=(
                u_status.kind == "wandering"
                and w_status.kind == "wandering"
                and not powering.is_powering
            ),
        )

    return PairReport(
        map=f,
        u=u,
        w=w,
        places=s,
        window=window,
        pairs=tuple(sorted(pairs)),
        witnesses=witnesses,
        hypotheses=hypo,
        mode=mode,
        truncated=truncated,
        effective_window=eff,
        frontier=max((max(m, n) for m, n in pairs), default=None),
    )


@dataclass(frozen=True)
class CosetStructure:
    """Window-level greedy decomposition into single-generator cosets plus
    residual isolated pairs; descriptive, never a global proof."""

    cosets: tuple[tuple[tuple[int, int], tuple[tuple[int, int], ...]], ...]
    residual: tuple[tuple[int, int], ...]

    def reconstruct(self, window: PairWindow) -> set[tuple[int, int]]:
        out = set(self.residual)
        for base, gens in self.cosets:
            if not gens:
                out.add(base)
                continue
            (dm, dn) = gens[0]
            m, n = base
            while (m, n) in window:
                out.add((m, n))
                m, n = m + dm, n + dn
        return out


def detect_coset_structure(report: PairReport) -> CosetStructure:
    """Greedy single-generator coset detection over the window.

    A ray base + k*(dm, dn) becomes a coset only when every window point of
    the ray is an integral pair (closure within the window) and it has at
    least three members; everything else is residual.
    """
    window = report.effective_window or report.window
    pair_set = set(report.pairs)
    uncovered = set(pair_set)
    cosets = []
    for base in sorted(pair_set):
        if base not in uncovered:
            continue
        best_ray: list[tuple[int, int]] | None = None
        best_gen = None
        for other in sorted(pair_set):
            if other == base:
                continue
            dm, dn = other[0] - base[0], other[1] - base[1]
            if dm < 0 or dn < 0 or (dm == 0 and dn == 0):
                continue
            ray = []
            m, n = base
            ok = True
            while (m, n) in window:
                if (m, n) not in pair_set:
                    ok = False
                    break
                ray.append((m, n))
                m, n = m + dm, n + dn
            if ok and len(ray) >= 3:
                if best_ray is None or len(ray) > len(best_ray):
                    best_ray = ray
                    best_gen = (dm, dn)
        if best_ray is not None:
            cosets.append((base, (best_gen,)))
            uncovered -= set(best_ray)
    residual = tuple(sorted(uncovered))
    structure = CosetStructure(cosets=tuple(cosets), residual=residual)
    if structure.reconstruct(window) != pair_set:
        raise SearchError("coset decomposition failed round-trip")  # pragma: no cover
    return structure


def _affine_prime_support(x: Fraction) -> set[int]:
    out: set[int] = set()
    if x.numerator != 0:
        out |= set(factor(x.numerator)) if abs(x.numerator) > 1 else set()
    if x.denominator > 1:
        out |= set(factor(x.denominator))
    return out


@dataclass(frozen=True)
class PoweringAnalysis:
    report: PairReport
    enlarged_places: PlaceSet
    tau_by_pair: tuple[tuple[tuple[int, int], Fraction], ...]
    tau_values: tuple[Fraction, ...]
    tau_unit_checks_passed: bool


def powering_pair_analysis(
    f: RatMap,
    u: ProjPoint,
    w: ProjPoint,
    s: PlaceSet,
    window: PairWindow,
    orbit_cap: int = DEFAULT_ORBIT_CAP,
    digit_budget: int = DEFAULT_DIGIT_BUDGET,
) -> PoweringAnalysis:
    """For f conjugate to a powering map: enlarge S so u and w are S'-units,
    enumerate the window, and annotate each integral pair with
    tau = f^m(u)/f^n(w) - 1, verifying tau and tau + 1 are S'-units."""
    witness = is_powering_conjugate(f)
    if not witness.is_powering:
        raise SearchError("map is not conjugate to a powering map")
    ua, wa = u.to_affine(), w.to_affine()
    if ua is None or wa is None or ua == 0 or wa == 0:
        raise SearchError("u and w must be nonzero affine points")
    enlarged = s.union(_affine_prime_support(ua) | _affine_prime_support(wa))
    report = find_integral_pairs(
        f, u, w, enlarged, window, orbit_cap=orbit_cap, digit_budget=digit_budget
    )
    taus = []
    all_units = True
    u_orbit, _ = _orbit(f, u, (report.effective_window or window).m_max, digit_budget)
    w_orbit, _ = _orbit(f, w, (report.effective_window or window).n_max, digit_budget)
    for m, n in report.pairs:
        um, wn = u_orbit[m].to_affine(), w_orbit[n].to_affine()
        if um is None or wn is None or wn == 0:
            all_units = False
            continue
        tau = um / wn - 1
        taus.append(((m, n), tau))
        if tau == 0 or not (is_s_unit(tau, enlarged) and is_s_unit(tau + 1, enlarged)):
            all_units = False
    distinct = tuple(sorted({t for _, t in taus}))
    return PoweringAnalysis(
        report=report,
        enlarged_places=enlarged,
        tau_by_pair=tuple(taus),
        tau_values=distinct,
        tau_unit_checks_passed=all_units,
    )


def exceptional_case_enlarge(
    f: RatMap,
    u: ProjPoint,
    s: PlaceSet,
    window: PairWindow = PairWindow(8, 8),
    orbit_cap: int = DEFAULT_ORBIT_CAP,
    digit_budget: int = DEFAULT_DIGIT_BUDGET,
) -> PlaceSet:
    """S-enlargement making every window pair integral when w is the
    exceptional point at infinity.

    S' adds the bad-reduction primes, the primes of the denominators of
    u and f(u), and the primes of the leading coefficient of the second
    iterate's numerator; the guarantee is then verified on the window.
    """
    exc = exceptional_points(f)
    if not exc:
        raise SearchError("map has no exceptional point")
    if INFINITY not in exc:
        raise SearchError(
            "exceptional point is not at infinity; change coordinates first"
        )
    w = INFINITY
    orbit, _ = _orbit(f, u, window.m_max, digit_budget)
    exc_rational = {e for e in exc if isinstance(e, ProjPoint)}
    if any(pt in exc_rational for pt in orbit):
        raise SearchError("u hits exceptional point")
    extra: set[int] = set(bad_reduction_primes(f))
    fu = eval_map(f, u)
    for pt in (u, fu):
        aff = pt.to_affine()
        if aff is None:
            raise SearchError("u hits exceptional point")
        if aff.denominator > 1:
            extra |= set(factor(aff.denominator))
    p2, _q2 = iterated_forms(f, 2)
    lead = p2[binforms.x1_multiplicity(p2)]
    if abs(lead) > 1:
        extra |= set(factor(lead))
    enlarged = s.union(extra)
    report = find_integral_pairs(
        f,
        u,
        w,
        enlarged,
        window,
        orbit_cap=orbit_cap,
        digit_budget=digit_budget,
        with_hypotheses=False,
    )
    eff = report.effective_window or window
    expected = {(m, n) for m in range(eff.m_max + 1) for n in range(eff.n_max + 1)}
    if set(report.pairs) != expected:  # pragma: no cover
        raise SearchError("window guarantee failed after enlargement")
    return enlarged
