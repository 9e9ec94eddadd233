"""Base loci, multiplicities and avoidance for generic members of monomial systems."""

from __future__ import annotations

import warnings
from dataclasses import dataclass, replace
from typing import Iterable, Optional, Union

from .ambient import CoxAmbient, StratumSet, all_supports
from .linear_systems import MonomialSystem


class EmptySystemWarning(UserWarning):
    pass


class UnsupportedStratum(ValueError):
    pass


StratumLike = Union[StratumSet, Iterable[str]]


def _single_stratum(stratum: StratumLike) -> frozenset[str]:
    if isinstance(stratum, StratumSet):
        if len(stratum.strata) != 1:
            raise ValueError("expected a single stratum")
        return stratum.strata[0]
    return frozenset(stratum)


def _t_patterns(budget: int, ks: range) -> set[tuple[bool, bool]]:
    """Which of ``t0``, ``t1`` occur in ``t0^(e-k) t1^k`` for ``k`` in ``ks``."""
    out = set()
    if not len(ks):
        return out
    if ks[0] == 0:
        out.add((budget > 0, False))
    if ks[-1] == budget and budget > 0:
        out.add((False, True))
    first_positive = next((k for k in ks[:2] if k > 0), None)
    if first_positive is not None and first_positive < budget:
        out.add((True, True))
    return out


def _supports(system: MonomialSystem) -> set[frozenset[str]]:
    names = system.ambient.variables
    out = set()
    for g in system.generators:
        if system.ambient.kind != "scroll":
            out.add(frozenset(v for v, e in zip(names, g.fiber) if e))
            continue
        xs = {v for v, e in zip(names[2:], g.fiber) if e}
        for has_t0, has_t1 in _t_patterns(g.budget, g.t1_exponents()):
            ts = {t for t, present in (("t0", has_t0), ("t1", has_t1)) if present}
            out.add(frozenset(xs | ts))
    return out


def base_locus(system: MonomialSystem) -> StratumSet:
    """Common zeros of the generic member, as a union of coordinate strata.

    Distinct monomials carry independent generic coefficients, so a point is
    a base point exactly when every monomial vanishes there, i.e. when its
    vanishing set meets the support of every monomial.
    """
    ambient = system.ambient
    if system.is_empty():
        warnings.warn("empty linear system: base locus is everything", EmptySystemWarning, stacklevel=2)
        return StratumSet.whole(ambient)
    supports = _supports(system)
    if frozenset() in supports:
        return StratumSet.empty(ambient)
    hits = [
        vanish
        for vanish in all_supports(ambient)
        if ambient.is_valid_vanishing(vanish) and all(vanish & s for s in supports)
    ]
    return StratumSet(ambient, hits)


def mult_along(system: MonomialSystem, curve: StratumLike) -> int:
    """Order of vanishing of the generic member along ``{curve = 0}``."""
    ambient = system.ambient
    vanish = _single_stratum(curve)
    if ambient.stratum_dim(vanish) != 1:
        raise UnsupportedStratum(f"{sorted(vanish)} does not cut out a curve")
    if ambient.kind == "scroll" and vanish & {"t0", "t1"}:
        raise UnsupportedStratum("the curve must dominate the base of the scroll")
    if system.is_empty():
        raise ValueError("multiplicity of the empty system is undefined")
    idx = [ambient.index(v) for v in vanish]
    offset = 2 if ambient.kind == "scroll" else 0
    return min(sum(g.fiber[i - offset] for i in idx) for g in system.generators)


def mult_witness(system: MonomialSystem, curve: StratumLike) -> tuple[int, ...]:
    """A monomial realizing :func:`mult_along`."""
    ambient = system.ambient
    idx = [ambient.index(v) for v in _single_stratum(curve)]
    return min(system.monomials(), key=lambda m: (sum(m[i] for i in idx), [-e for e in m]))


def fixed_component(system: MonomialSystem) -> Optional[str]:
    if system.is_empty():
        return None
    supports = _supports(system)
    for v in system.ambient.variables:
        if all(v in s for s in supports):
            return v
    return None


def restrict_to_stratum(system: MonomialSystem, stratum: StratumLike) -> MonomialSystem:
    """Keep the monomials that do not vanish identically on the stratum."""
    ambient = system.ambient
    vanish = _single_stratum(stratum)
    xs = [ambient.index(v) for v in vanish if not (ambient.kind == "scroll" and v in ("t0", "t1"))]
    out = []
    for g in system.generators:
        if ambient.kind == "scroll":
            if any(g.fiber[i - 2] for i in xs):
                continue
            lo, hi = g.t1_min, g.t1_max
            if "t0" in vanish:
                lo = max(lo, g.budget)
            if "t1" in vanish:
                hi = min(hi, 0)
            out.append(replace(g, t1_min=lo, t1_max=hi))
        elif not any(g.fiber[i] for i in xs):
            out.append(g)
    return MonomialSystem(ambient, system.cls, tuple(out))


@dataclass(frozen=True)
class AvoidanceVerdict:
    holds: bool
    witnesses: tuple[frozenset[str], ...] = ()
    reasons: tuple[str, ...] = ()

    @property
    def witness(self) -> Optional[frozenset[str]]:
        return self.witnesses[0] if self.witnesses else None

    def __bool__(self) -> bool:
        return self.holds

    def to_json(self, ambient: CoxAmbient) -> dict:
        order = {v: i for i, v in enumerate(ambient.variables)}
        return {
            "holds": self.holds,
            "witnesses": [
                {"stratum": sorted(w, key=order.__getitem__), "reason": r}
                for w, r in zip(self.witnesses, self.reasons)
            ],
        }


def _boundary_points(ambient: CoxAmbient, vanish: frozenset[str]) -> list[frozenset[str]]:
    out = []
    for v in ambient.variables:
        if v in vanish:
            continue
        p = vanish | {v}
        if ambient.is_valid_vanishing(p) and ambient.stratum_dim(p) == 0:
            out.append(p)
    return out


def _zeros_on_curve(system: MonomialSystem, vanish: frozenset[str]):
    """Zeros of the generic member on a curve stratum.

    Returns ``(everything, fixed_points, moving)``: the whole curve when the
    restriction is empty, else the boundary points where every surviving
    monomial vanishes, plus whether further zeros move with the coefficients.
    """
    ambient = system.ambient
    restricted = restrict_to_stratum(system, vanish)
    if restricted.is_empty():
        return True, set(), False
    supports = _supports(restricted)
    fixed = {p for p in _boundary_points(ambient, vanish) if all(p & s for s in supports)}
    return False, fixed, len(restricted) >= 2


def generic_avoidance(d_sys: MonomialSystem, m_sys: MonomialSystem, fixed: StratumSet) -> AvoidanceVerdict:
    """Does ``D0 ∩ M0`` miss every stratum of ``fixed`` for generic members?"""
    ambient = d_sys.ambient
    if m_sys.ambient != ambient or fixed.ambient != ambient:
        raise ValueError("systems live on different ambients")
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", EmptySystemWarning)
        bs_d, bs_m = base_locus(d_sys), base_locus(m_sys)
    witnesses, reasons = [], []
    for z in fixed.strata:
        dim = ambient.stratum_dim(z)
        if dim == 0:
            if bs_d.contains(z) and bs_m.contains(z):
                witnesses.append(z)
                reasons.append("fixed point in both base loci")
            continue
        if dim != 1:
            raise UnsupportedStratum(f"fixed stratum {sorted(z)} has dimension {dim}")
        d_all, d_fixed, d_moving = _zeros_on_curve(d_sys, z)
        m_all, m_fixed, m_moving = _zeros_on_curve(m_sys, z)
        d_some = d_all or d_fixed or d_moving
        m_some = m_all or m_fixed or m_moving
        if m_all and d_some:
            witnesses.append(z)
            reasons.append("fixed curve inside every M member")
        elif d_all and m_some:
            witnesses.append(z)
            reasons.append("fixed curve inside every D member")
        elif d_fixed & m_fixed:
            witnesses.append(z)
            reasons.append("common base point on fixed curve")
    return AvoidanceVerdict(not witnesses, tuple(witnesses), tuple(reasons))
