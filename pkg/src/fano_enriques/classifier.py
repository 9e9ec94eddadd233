"""End-to-end enumeration of admissible scrolls ``F(d1, d2, d3)``.

Two branches: ``d3 > 0``, where the generic ramification divisor must avoid
``C`` entirely, and ``d3 = 0``, where the divisor contains ``C`` and an
involution, an invariant ``|M|`` subsystem and canonical singularities of the
double cover have to be exhibited.
"""

from __future__ import annotations

import functools
import logging
import warnings
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Optional, Sequence

from .ambient import (
    DivisorClass,
    StratumSet,
    degree_and_genus,
    format_monomial,
    scroll,
    wps,
)
from .germs.germ import DEFAULT_SEEDS, canonical_verdict
from .involutions import SignInvolution, canonical_forms, fixed_locus, normal_form, reference_sigma
from .linear_systems import (
    basis,
    invariant_ramification_system,
    m_system_invariant,
    parity_decompose,
    ramification_system,
)
from .strata import (
    EmptySystemWarning,
    UnsupportedStratum,
    base_locus,
    fixed_component,
    generic_avoidance,
    mult_along,
    mult_witness,
    restrict_to_stratum,
)

log = logging.getLogger(__name__)

C = frozenset({"x0", "x1"})

GOLDEN_TABLE = (
    (2, 1, 1, 8),
    (2, 2, 2, 12),
    (2, 2, 0, 8),
    (3, 1, 0, 8),
    (3, 3, 0, 12),
    (4, 2, 0, 12),
    (4, 4, 0, 16),
    (5, 3, 0, 16),
    (6, 4, 0, 20),
    (7, 5, 0, 24),
    (8, 6, 0, 28),
)

QUARTIC_QUADRIC_ROW = {
    "d": None,
    "degree": 4,
    "genus": 2,
    "source": "citation",
    "model": "intersection of a quartic and a quadric in P(1,1,1,1,1,2)",
}


# --- closed forms --------------------------------------------------------------------

def closed_form_no_fixed_component(d1: int, d2: int) -> bool:
    return d1 <= d2 + 2


def closed_form_mult_at_most_3(d1: int, d2: int) -> bool:
    return d1 >= 2 * d2 - 4


def closed_form_positive_base_free(d1: int, d2: int, d3: int) -> bool:
    return d1 + d2 - d3 <= 2


# --- reports -----------------------------------------------------------------------------

@dataclass(frozen=True)
class FilterResult:
    name: str
    passed: bool
    detail: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {"name": self.name, "passed": self.passed, "detail": self.detail}


@dataclass(frozen=True)
class CandidateReport:
    triple: tuple[int, int, int]
    degree: Optional[int]
    genus: Optional[int]
    filters: tuple[FilterResult, ...]
    involution: Optional[str] = None

    @property
    def accepted(self) -> bool:
        return bool(self.filters) and all(f.passed for f in self.filters)

    @property
    def first_failure(self) -> Optional[str]:
        return next((f.name for f in self.filters if not f.passed), None)

    def filter(self, name: str) -> Optional[FilterResult]:
        return next((f for f in self.filters if f.name == name), None)

    def to_json(self) -> dict:
        return {
            "triple": list(self.triple),
            "degree": self.degree,
            "genus": self.genus,
            "accepted": self.accepted,
            "first_failure": self.first_failure,
            "involution": self.involution,
            "filters": [f.to_json() for f in self.filters],
        }


def _degree_genus(d: Sequence[int]) -> tuple[Optional[int], Optional[int]]:
    if sum(d) % 2:
        return 2 * sum(d), None
    dg = degree_and_genus(*d)
    return dg.anticanonical_degree, dg.genus


# --- d3 > 0 -------------------------------------------------------------------------------------

def check_positive_d3(d1: int, d2: int, d3: int) -> CandidateReport:
    """All three filters are cheap, so every one of them is evaluated."""
    F = scroll(d1, d2, d3)
    s = d1 + d2 + d3
    filters = [FilterResult("divisibility", s % 2 == 0, {"sum": s})]
    with warnings.catch_warnings():
        # an empty ramification system has everything as base locus, which is the right verdict
        warnings.simplefilter("ignore", EmptySystemWarning)
        bs = base_locus(ramification_system(F))
    filters.append(
        FilterResult(
            "ramification_base_free",
            bs.is_empty(),
            {
                "base_locus": bs.to_json(),
                "closed_form": closed_form_positive_base_free(d1, d2, d3),
            },
        )
    )
    filters.append(FilterResult("degree_at_least_8", 2 * s >= 8, {"degree": 2 * s}))
    degree, genus = _degree_genus((d1, d2, d3))
    return CandidateReport((d1, d2, d3), degree, genus, tuple(filters))


def enumerate_positive_d3(bound: int) -> list[tuple[int, int, int]]:
    if bound < 8:
        raise ValueError("bound must be at least 8")
    return [r.triple for r in positive_d3_reports(bound) if r.accepted]


def positive_d3_reports(bound: int) -> list[CandidateReport]:
    out = []
    for d1 in range(1, bound + 1):
        for d2 in range(1, d1 + 1):
            for d3 in range(1, d2 + 1):
                out.append(check_positive_d3(d1, d2, d3))
    return out


# --- d3 = 0 ----------------------------------------------------------------------------------------

@functools.lru_cache(maxsize=None)
def _canonical(d1: int, d2: int, signs: tuple[int, ...], seeds: tuple[int, ...], prime: int):
    F = scroll(d1, d2, 0)
    D = invariant_ramification_system(F, SignInvolution(signs))
    return canonical_verdict(d1, d2, D, seeds, prime)


PAIR_FILTERS = ("fixed_component", "mult_C")
INVOLUTION_FILTERS = ("invariant_base_locus", "invariant_m_base", "avoidance", "canonical")
DEFAULT_ORDER = PAIR_FILTERS + INVOLUTION_FILTERS


class _Pair:
    """Lazily computed data shared by the filters of one pair."""

    def __init__(self, d1: int, d2: int, seeds: tuple[int, ...], scan_prime: int):
        self.d1, self.d2 = d1, d2
        self.F = scroll(d1, d2, 0)
        self.seeds, self.scan_prime = seeds, scan_prime
        self._full = None

    @property
    def full(self):
        if self._full is None:
            self._full = ramification_system(self.F)
        return self._full

    def fixed_component(self) -> FilterResult:
        fc = fixed_component(self.full)
        detail = {"component": fc, "closed_form": closed_form_no_fixed_component(self.d1, self.d2)}
        return FilterResult("fixed_component", fc is None, detail)

    def mult_C(self) -> FilterResult:
        mult = mult_along(self.full, C)
        detail = {
            "mult": mult,
            "witness": format_monomial(self.F, mult_witness(self.full, C)),
            "closed_form": closed_form_mult_at_most_3(self.d1, self.d2),
        }
        return FilterResult("mult_C", mult <= 3, detail)

    # involution-level predicates: (passes, note)
    def invariant_base_locus(self, inv: SignInvolution):
        D = invariant_ramification_system(self.F, inv)
        if D.is_empty():
            return False, "empty"
        if base_locus(D) != StratumSet(self.F, [C]):
            return False, f"Bs = {base_locus(D).to_json()}"
        mult = mult_along(D, C)
        return mult <= 3, f"mult_C = {mult}"

    def invariant_m_base(self, inv: SignInvolution):
        bs = base_locus(m_system_invariant(self.F, inv))
        return not bs.meets(C), f"Bs(M) = {bs.to_json()}"

    def avoidance(self, inv: SignInvolution):
        try:
            verdict = generic_avoidance(
                invariant_ramification_system(self.F, inv),
                m_system_invariant(self.F, inv),
                fixed_locus(self.F, inv),
            )
        except UnsupportedStratum as exc:
            return False, f"unsupported: {exc}"
        return verdict.holds, verdict.to_json(self.F)

    def canonical(self, inv: SignInvolution):
        try:
            verdict = _canonical(self.d1, self.d2, inv.signs, self.seeds, self.scan_prime)
        except ValueError as exc:
            return False, f"precondition: {exc}"
        return bool(verdict), verdict.to_json()


def check_zero_d3(
    d1: int,
    d2: int,
    seeds: Sequence[int] = DEFAULT_SEEDS,
    scan_prime: int = 101,
    order: Sequence[str] = DEFAULT_ORDER,
) -> CandidateReport:
    """Filters on ``F(d1, d2, 0)``, stopping at the first failure.

    ``d2 != 0`` and divisibility come first; ``order`` arranges the rest.
    The involution filters form one existential statement over the normal
    forms of sign involutions: each keeps the involutions that survived the
    previous ones and fails when none is left.  The last involution filter
    stops at the first success.
    """
    if sorted(order) != sorted(DEFAULT_ORDER):
        raise ValueError(f"order must be a permutation of {DEFAULT_ORDER}")
    degree, genus = _degree_genus((d1, d2, 0))
    filters: list[FilterResult] = []

    def done(involution: Optional[str] = None) -> CandidateReport:
        return CandidateReport((d1, d2, 0), degree, genus, tuple(filters), involution)

    filters.append(FilterResult("d2_nonzero", d2 != 0, {} if d2 else {"reason": "cone with a curve of singularities"}))
    if d2 == 0:
        return done()
    ok = (d1 + d2) % 2 == 0 and d1 + d2 >= 4
    filters.append(FilterResult("divisibility", ok, {"sum": d1 + d2, "degree": 2 * (d1 + d2)}))
    if not ok:
        return done()

    pair = _Pair(d1, d2, tuple(seeds), scan_prime)
    # (+,-,-,+,-) itself stands for its class and is tried first
    sigma = reference_sigma(pair.F)
    sigma_nf = normal_form(pair.F, sigma)
    alive = [sigma] + [inv for inv in canonical_forms(pair.F) if inv != sigma_nf]
    last_inv_filter = [name for name in order if name in INVOLUTION_FILTERS][-1]
    for name in order:
        if name in PAIR_FILTERS:
            result = getattr(pair, name)()
            filters.append(result)
            if not result.passed:
                return done()
            continue
        check = getattr(pair, name)
        kept, notes = [], {}
        for inv in alive:
            passed, note = check(inv)
            notes[str(inv)] = note
            if passed:
                kept.append(inv)
                if name == last_inv_filter:
                    break
        detail = {"tried": [str(i) for i in alive], "survivors": [str(i) for i in kept], "notes": notes}
        filters.append(FilterResult(name, bool(kept), detail))
        if not kept:
            return done()
        alive = kept
    return done(str(alive[0]))


def _check_pair(args):
    return check_zero_d3(*args)


def zero_d3_pairs(bound: int) -> list[tuple[int, int]]:
    return [(d1, d2) for d1 in range(1, bound + 1) for d2 in range(0, d1 + 1)]


def enumerate_zero_d3(
    bound: int,
    seeds: Sequence[int] = DEFAULT_SEEDS,
    scan_prime: int = 101,
    workers: int = 1,
) -> list[CandidateReport]:
    """Reports for every ``d1 >= d2 >= 0`` with ``d1 <= bound``, in lexicographic order."""
    if bound < 10:
        raise ValueError("bound must be at least 10")
    jobs = [(d1, d2, tuple(seeds), scan_prime) for d1, d2 in zero_d3_pairs(bound)]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            reports = list(pool.map(_check_pair, jobs, chunksize=16))
    else:
        reports = [_check_pair(j) for j in jobs]
    return sorted(reports, key=lambda r: r.triple)


# --- Veronese cone ------------------------------------------------------------------------------

# support of the invariant sextic as a list of (fixed factor, degree of the binary form in x0, x1)
EXPECTED_SEXTIC_SHAPE = (
    ((0, 0, 0, 0, 0), 6),
    ((0, 0, 6, 0, 0), 0),
    ((0, 0, 4, 0, 0), 2),
    ((0, 0, 3, 0, 1), 0),
    ((0, 0, 3, 1, 0), 1),
    ((0, 0, 2, 0, 0), 4),
    ((0, 0, 1, 1, 0), 3),
    ((0, 0, 1, 0, 1), 2),
    ((0, 0, 0, 2, 0), 2),
    ((0, 0, 0, 1, 1), 1),
    ((0, 0, 0, 0, 2), 0),
)


def expected_sextic_support() -> set[tuple[int, ...]]:
    out = set()
    for fixed, k in EXPECTED_SEXTIC_SHAPE:
        for a in range(k + 1):
            m = list(fixed)
            m[0] += a
            m[1] += k - a
            out.add(tuple(m))
    return out


def veronese_involution(P) -> SignInvolution:
    return SignInvolution.negating(P, ["x2", "x3", "x4"])


def exclude_veronese_cone() -> dict[str, Any]:
    """Every invariant anticanonical surface of the cone meets the fixed locus."""
    P = wps([1, 1, 1, 2, 3])
    tau = veronese_involution(P)
    fixed = fixed_locus(P, tau)
    C1, C2, O = frozenset({"x2", "x3", "x4"}), frozenset({"x0", "x1", "x3"}), frozenset({"x0", "x1", "x2", "x4"})
    quad = basis(P, DivisorClass((2,)))
    k1 = parity_decompose(quad, tau, -1)
    k2 = parity_decompose(quad, tau, 1)
    k1_on_c1 = restrict_to_stratum(k1, C1)
    k2_at_o = restrict_to_stratum(k2, O)
    sextic = parity_decompose(basis(P, DivisorClass((6,))), tau, 1)
    support = set(sextic.monomials())
    expected = expected_sextic_support()
    fmt = functools.partial(format_monomial, P)
    curves_off_x = {
        name: bool(restrict_to_stratum(sextic, curve).generators)
        for name, curve in (("C1", C1), ("C2", C2))
    }
    avoid_k1 = generic_avoidance(sextic, k1, fixed)
    report = {
        "ambient": P.describe(),
        "involution": str(tau),
        "fixed_locus": fixed.to_json(),
        "fixed_locus_matches": fixed == StratumSet(P, [C1, C2, O]),
        "quadric_families": {
            "K1": [fmt(m) for m in k1.monomials()],
            "K2": [fmt(m) for m in k2.monomials()],
        },
        "K1": {
            "witness": "C1",
            "restriction_to_C1": [fmt(m) for m in k1_on_c1.monomials()],
            "certified": k1_on_c1.is_empty(),
            "avoidance_with_sextic": avoid_k1.to_json(P),
        },
        "K2": {
            "witness": "O",
            "restriction_to_O": [fmt(m) for m in k2_at_o.monomials()],
            "certified": k2_at_o.is_empty(),
        },
        "sextic": {
            "invariant_support_size": len(support),
            "expected_support_size": len(expected),
            "missing_from_expected": sorted(fmt(m) for m in support - expected),
            "not_invariant": sorted(fmt(m) for m in expected - support),
            "matches": support == expected,
        },
        "fixed_curves_not_in_X": curves_off_x,
    }
    report["certified"] = report["K1"]["certified"] and report["K2"]["certified"]
    return report


# --- final table -------------------------------------------------------------------------------------

@dataclass(frozen=True)
class ClassificationRun:
    bound: int
    positive: tuple[CandidateReport, ...]
    zero: tuple[CandidateReport, ...]

    def accepted(self) -> list[tuple[int, int, int, int]]:
        rows = []
        for r in list(self.positive) + list(self.zero):
            if r.accepted:
                rows.append(r.triple + (r.degree,))
        return rows

    def table(self) -> list[dict]:
        rows = [dict(QUARTIC_QUADRIC_ROW)]
        for d1, d2, d3, degree in self.accepted():
            rows.append(
                {
                    "d": [d1, d2, d3],
                    "degree": degree,
                    "genus": degree // 4 + 1,
                    "source": "computed",
                }
            )
        return rows

    def matches_golden(self) -> bool:
        return tuple(self.accepted()) == GOLDEN_TABLE


def classify(
    bound: int = 30,
    seeds: Sequence[int] = DEFAULT_SEEDS,
    scan_prime: int = 101,
    workers: int = 1,
) -> ClassificationRun:
    if bound < 10:
        raise ValueError("bound must be at least 10")
    positive = tuple(r for r in positive_d3_reports(bound))
    zero = tuple(enumerate_zero_d3(bound, seeds, scan_prime, workers))
    log.info("bound %d: %d + %d candidates", bound, len(positive), len(zero))
    return ClassificationRun(bound, positive, zero)


def theorem_table(bound: int = 30, seeds: Sequence[int] = DEFAULT_SEEDS, scan_prime: int = 101) -> list[dict]:
    return classify(bound, seeds, scan_prime).table()
