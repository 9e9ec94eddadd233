"""Double-cover germs along ``C = {x0 = x1 = 0}`` and their singularities."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence, Union

from ..ambient import StratumSet, format_monomial
from ..linear_systems import MonomialSystem
from ..strata import base_locus
from .ade import NOT_SIMPLE, UNDETERMINED, ade_type, is_simple
from .poly import Poly
from .scan import singular_scan_fp

POINTS = ("generic", "1:0", "0:1")
DEFAULT_SEEDS = (1, 2, 3)
CREPANT_WEIGHTS = (2, 1, 1, 1)

CDV = "cDV"
NOT_CDV = "NOT_CDV"
SMOOTH = "SMOOTH"


def random_nonzero(rng: random.Random, height: int = 9) -> Fraction:
    num = rng.choice([k for k in range(-height, height + 1) if k])
    return Fraction(num, rng.randint(1, height))


@dataclass(frozen=True)
class Germ:
    """``poly`` lives in the ring of ``vars`` followed by ``params``."""

    vars: tuple[str, ...]
    poly: Poly
    params: tuple[str, ...] = ()
    chart: str = ""
    point: str = ""
    centered: bool = True

    def __post_init__(self):
        if self.poly.nvars != len(self.vars) + len(self.params):
            raise ValueError("polynomial ring does not match vars + params")
        if self.centered and self.has_constant_term():
            raise ValueError("germ has a constant term")

    def has_constant_term(self) -> bool:
        k = len(self.vars)
        return any(not any(e[:k]) for e in self.poly.terms)

    @classmethod
    def plain(cls, names: Sequence[str], poly: Poly, **kw) -> "Germ":
        return cls(tuple(names), poly, (), **kw)

    @property
    def nlocal(self) -> int:
        return len(self.vars)

    def local_support(self) -> set[tuple[int, ...]]:
        return {e[: self.nlocal] for e in self.poly.terms}

    def specialize_values(self, seed: int) -> list[Fraction]:
        rng = random.Random(seed)
        return [random_nonzero(rng) for _ in self.params]

    def specialize(self, seed: Optional[int] = None, values: Optional[Sequence[Fraction]] = None) -> Poly:
        """The germ with generic coefficients replaced by seeded rationals."""
        if values is None:
            values = self.specialize_values(0 if seed is None else seed)
        k = self.nlocal
        images = [Poly.var(k, i) for i in range(k)] + [Poly.const(k, v) for v in values]
        return self.poly.substitute(images)

    def display(self) -> str:
        """Coefficients shown as their generic symbols."""
        k = self.nlocal
        names = list(self.vars) + list(self.params)
        return self.poly.to_str(names) if not self.params else _display_grouped(self.poly, k, names)

    def to_json(self) -> dict:
        return {
            "vars": list(self.vars),
            "chart": self.chart,
            "point": self.point,
            "equation": self.display(),
            "generic_params": len(self.params),
        }


def _display_grouped(poly: Poly, k: int, names: list[str]) -> str:
    parts = []
    for e in sorted(poly.terms, key=lambda e: (sum(e[:k]), [-a for a in e[:k]], e[k:])):
        c = poly.terms[e]
        coeff = "*".join(names[i] if a == 1 else f"{names[i]}^{a}" for i, a in enumerate(e) if a and i >= k)
        mono = "*".join(names[i] if a == 1 else f"{names[i]}^{a}" for i, a in enumerate(e) if a and i < k)
        if c != 1:
            coeff = f"{c}*{coeff}" if coeff else str(c)
        parts.append(f"{coeff}*{mono}" if coeff else mono)
    return " + ".join(parts)


def local_cover_germ(d_sys: MonomialSystem, point: str = "generic") -> Germ:
    """``x^2 + F`` near a point of ``C`` with ``x2 = 1``, ``x0 = y``, ``x1 = z``.

    ``generic`` and ``1:0`` use ``t0 = 1, t1 = t``; ``0:1`` uses
    ``t0 = t, t1 = 1``.  Every monomial of the system gets its own generic
    coefficient, named after the monomial.
    """
    ambient = d_sys.ambient
    if ambient.kind != "scroll" or ambient.d[2] != 0:
        raise ValueError("local charts along C need a scroll with d3 = 0")
    if point not in POINTS:
        raise ValueError(f"point must be one of {POINTS}, got {point!r}")
    monos = d_sys.monomials()
    params = tuple(f"g[{format_monomial(ambient, m)}]" for m in monos)
    n = 4 + len(params)
    terms = {(2, 0, 0, 0) + (0,) * len(params): 1}
    for j, m in enumerate(monos):
        t0, t1, i1, i2, _ = m
        tpow = t0 if point == "0:1" else t1
        e = [0, i1, i2, tpow] + [0] * len(params)
        e[4 + j] = 1
        terms[tuple(e)] = 1
    chart = "t0=t, t1=1, x0=y, x1=z, x2=1" if point == "0:1" else "t0=1, t1=t, x0=y, x1=z, x2=1"
    return Germ(("x", "y", "z", "t"), Poly(n, terms), params, chart=chart, point=point)


# --- cDV verdicts --------------------------------------------------------------

@dataclass(frozen=True)
class CdvVerdict:
    status: str
    type: Optional[str] = None
    per_seed: tuple[str, ...] = ()
    seeds: tuple[int, ...] = ()
    section: str = ""

    def __str__(self) -> str:
        return f"cDV({self.type})" if self.status == CDV else self.status

    def to_json(self) -> dict:
        return {
            "verdict": str(self),
            "status": self.status,
            "type": self.type,
            "per_seed": list(self.per_seed),
            "seeds": list(self.seeds),
            "section": self.section,
        }


def _split_square(poly: Poly) -> Poly:
    """For ``x^2 + f(y, z, ...)`` return ``f``; variable 0 is ``x``."""
    xs = {e for e in poly.terms if e[0]}
    if xs != {(2,) + (0,) * (poly.nvars - 1)}:
        raise ValueError("germ is not of the form x^2 + f(y, z, ...)")
    rest = Poly(poly.nvars, {e: c for e, c in poly.terms.items() if not e[0]})
    return rest.drop_variables(range(1, poly.nvars))


def residual(poly: Poly, t_value: Optional[Fraction]) -> Poly:
    """The plane germ ``f(y, z)`` of the section ``t = t_value`` (x eliminated)."""
    f = _split_square(poly)
    if f.nvars == 2:
        return f
    if f.nvars != 3:
        raise ValueError("expected local variables (x, y, z[, t])")
    v = Fraction(t_value or 0)
    return f.substitute([Poly.var(2, 0), Poly.var(2, 1), Poly.const(2, v)])


def cdv_verdict(
    germ: Germ,
    seeds: Sequence[int] = DEFAULT_SEEDS,
    t_value: Union[str, Fraction, int, None] = None,
) -> CdvVerdict:
    """Du Val type of the section through the point, stable across seeds.

    The section is ``t = const``: a seeded nonzero value when the germ was
    taken at a generic point of ``C``, and ``0`` at a special point.  A Du
    Val section makes the threefold point cDV.  ``NOT_CDV`` means the
    section is not Du Val for any seed.
    """
    if not seeds:
        raise ValueError("need at least one seed")
    if t_value is None:
        t_value = "generic" if germ.point == "generic" else 0
    labels = []
    sections = []
    for seed in seeds:
        rng = random.Random(seed)
        values = [random_nonzero(rng) for _ in germ.params]
        tv = random_nonzero(rng) if t_value == "generic" else Fraction(t_value)
        sections.append(str(tv))
        f = residual(germ.specialize(values=values), tv)
        if f.constant_term():
            raise ValueError("the point does not lie on the hypersurface")
        try:
            labels.append(ade_type(f))
        except ValueError:
            labels.append(SMOOTH)
    label_set = set(labels)
    section = "t=generic" if t_value == "generic" else f"t={t_value}"
    if germ.nlocal == 3:
        section = "none"
    common = dict(per_seed=tuple(labels), seeds=tuple(seeds), section=section)
    if len(label_set) == 1:
        (only,) = label_set
        if only == SMOOTH:
            return CdvVerdict(SMOOTH, None, **common)
        if is_simple(only):
            return CdvVerdict(CDV, only, **common)
        if only == NOT_SIMPLE:
            return CdvVerdict(NOT_CDV, None, **common)
    return CdvVerdict(UNDETERMINED, None, **common)


# --- weighted blow-ups -------------------------------------------------------------

def weighted_multiplicity(germ: Union[Germ, Poly], weights: Sequence[int]) -> int:
    if isinstance(germ, Poly):
        support = set(germ.terms)
    else:
        support = germ.local_support()
    if not support:
        raise ValueError("w-multiplicity of the zero polynomial is undefined")
    if len(weights) != len(next(iter(support))):
        raise ValueError("one weight per local variable")
    if min(weights) < 1:
        raise ValueError("weights must be positive")
    return min(sum(w * a for w, a in zip(weights, e)) for e in support)


def weighted_discrepancy(germ: Union[Germ, Poly], weights: Sequence[int]) -> int:
    """Discrepancy of the exceptional divisor of the weighted blow-up of a hypersurface."""
    return sum(weights) - weighted_multiplicity(germ, weights) - 1


def weighted_chart(germ: Germ, weights: Sequence[int], i: int) -> Germ:
    """Chart ``var_i = u`` of the weighted blow-up: strict transform equation.

    Only weight-one variables give honest affine charts; the others would be
    quotient charts and are refused.
    """
    if weights[i] != 1:
        raise ValueError("only weight-one variables give affine charts")
    k = germ.nlocal
    n = germ.poly.nvars
    u = Poly.var(n, i)
    images = []
    for j in range(n):
        v = Poly.var(n, j)
        if j < k and j != i:
            v = v * u ** weights[j]
        images.append(v)
    wm = weighted_multiplicity(germ, weights)
    shift = [0] * n
    shift[i] = wm
    strict = germ.poly.substitute(images).divide_monomial(shift)
    names = tuple("u" if j == i else f"{v}'" for j, v in enumerate(germ.vars))
    chart = Germ(names, strict, germ.params, chart=f"{germ.vars[i]}=u", point=germ.point, centered=False)
    if not chart.has_constant_term():
        chart = Germ(names, strict, germ.params, chart=chart.chart, point=germ.point)
    return chart


@dataclass(frozen=True)
class ScanEvidence:
    prime: int
    seeds: tuple[int, ...]
    charts: tuple[str, ...]
    singular_points: tuple[tuple[str, int, tuple[int, ...]], ...]
    explained: tuple[str, ...]
    clean: bool

    def to_json(self) -> dict:
        return {
            "prime": self.prime,
            "seeds": list(self.seeds),
            "charts": list(self.charts),
            "singular_points": [
                {"chart": c, "seed": s, "point": list(p)} for c, s, p in self.singular_points
            ],
            "explained": list(self.explained),
            "clean": self.clean,
        }


def scan_exceptional_divisor(
    germ: Germ,
    weights: Sequence[int] = CREPANT_WEIGHTS,
    seeds: Sequence[int] = DEFAULT_SEEDS,
    prime: int = 101,
) -> ScanEvidence:
    """Search the exceptional divisor of the blow-up for singular points of the strict transform.

    Each weight-one chart is searched on ``u = 0`` over ``F_p``.  A singular
    point at the origin of the ``t`` chart is where the strict transform of
    ``C`` meets the exceptional divisor; it is accepted when the chart germ
    there is cDV (checked symbolically), anything else is a failure.
    """
    if germ.nlocal != len(weights):
        raise ValueError("one weight per local variable")
    charts = [i for i, w in enumerate(weights) if w == 1]
    found, explained = [], []
    ok = True
    for i in charts:
        chart = weighted_chart(germ, weights, i)
        for seed in seeds:
            poly = chart.specialize(seed)
            for pt in singular_scan_fp(poly, prime, fixed={i: 0}):
                found.append((chart.chart, seed, pt))
                on_c = germ.vars[i] == "t" and not any(pt)
                if on_c:
                    verdict = cdv_verdict(chart, seeds, t_value=0)
                    if verdict.status == CDV:
                        explained.append(f"{chart.chart} origin: strict transform of C, {verdict}")
                        continue
                ok = False
    return ScanEvidence(
        prime,
        tuple(seeds),
        tuple(germ.vars[i] + "=u" for i in charts),
        tuple(found),
        tuple(sorted(set(explained))),
        ok,
    )


# --- canonical verdict ---------------------------------------------------------------

CANONICAL = "CANONICAL"
NOT_ESTABLISHED = "NOT_ESTABLISHED"


@dataclass(frozen=True)
class PointEvidence:
    point: str
    germ: Germ
    cdv: CdvVerdict
    evidence: str
    discrepancy: Optional[int] = None
    scan: Optional[ScanEvidence] = None
    ok: bool = False

    def to_json(self) -> dict:
        out = {
            "point": self.point,
            "germ": self.germ.to_json(),
            "cdv": self.cdv.to_json(),
            "evidence": self.evidence,
            "ok": self.ok,
        }
        if self.discrepancy is not None:
            out["discrepancy"] = {"weights": list(CREPANT_WEIGHTS), "value": self.discrepancy}
        if self.scan is not None:
            out["scan"] = self.scan.to_json()
        return out


@dataclass(frozen=True)
class CanonicalVerdict:
    status: str
    points: tuple[PointEvidence, ...] = field(default=())
    failing_point: Optional[str] = None

    def __bool__(self) -> bool:
        return self.status == CANONICAL

    def to_json(self) -> dict:
        return {
            "status": self.status,
            "failing_point": self.failing_point,
            "points": [p.to_json() for p in self.points],
        }


def point_evidence(
    d_sys: MonomialSystem,
    point: str,
    seeds: Sequence[int] = DEFAULT_SEEDS,
    scan_prime: int = 101,
) -> PointEvidence:
    germ = local_cover_germ(d_sys, point)
    cdv = cdv_verdict(germ, seeds)
    if cdv.status in (CDV, SMOOTH):
        return PointEvidence(point, germ, cdv, "SYMBOLIC", ok=True)
    if point == "generic":
        return PointEvidence(point, germ, cdv, "SYMBOLIC", ok=False)
    disc = weighted_discrepancy(germ, CREPANT_WEIGHTS)
    if disc != 0:
        return PointEvidence(point, germ, cdv, "SYMBOLIC", discrepancy=disc, ok=False)
    scan = scan_exceptional_divisor(germ, CREPANT_WEIGHTS, seeds, scan_prime)
    return PointEvidence(point, germ, cdv, "SCAN", discrepancy=disc, scan=scan, ok=scan.clean)


def canonical_verdict(
    d1: int,
    d2: int,
    d_invariant: MonomialSystem,
    seeds: Sequence[int] = DEFAULT_SEEDS,
    scan_prime: int = 101,
) -> CanonicalVerdict:
    """Canonical singularities of the double cover over every point of ``C``."""
    ambient = d_invariant.ambient
    if ambient.kind != "scroll" or ambient.d != (d1, d2, 0):
        raise ValueError(f"system does not live on scroll({d1},{d2},0)")
    if base_locus(d_invariant) != StratumSet(ambient, [{"x0", "x1"}]):
        raise ValueError("precondition Bs(D) = C fails")
    points = []
    for point in POINTS:
        ev = point_evidence(d_invariant, point, seeds, scan_prime)
        points.append(ev)
        if not ev.ok:
            return CanonicalVerdict(NOT_ESTABLISHED, tuple(points), point)
    return CanonicalVerdict(CANONICAL, tuple(points))


__all__ = [
    "CANONICAL",
    "CDV",
    "CREPANT_WEIGHTS",
    "CanonicalVerdict",
    "CdvVerdict",
    "DEFAULT_SEEDS",
    "Germ",
    "NOT_CDV",
    "NOT_ESTABLISHED",
    "POINTS",
    "PointEvidence",
    "SMOOTH",
    "ScanEvidence",
    "canonical_verdict",
    "cdv_verdict",
    "local_cover_germ",
    "point_evidence",
    "random_nonzero",
    "residual",
    "scan_exceptional_divisor",
    "weighted_chart",
    "weighted_discrepancy",
    "weighted_multiplicity",
]
