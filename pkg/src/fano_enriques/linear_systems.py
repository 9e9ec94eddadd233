"""Monomial bases of linear systems with generic coefficients.

A :class:`MonomialSystem` stands for the generic member of the span of its
monomials.  On a scroll the monomials are grouped by their ``x`` part: a
generator ``x^I`` carries a t-budget ``e_I`` and a description of which
``t0^(e-k) t1^k`` are allowed (a range of ``k`` and possibly a parity).
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Iterable, Iterator, Optional, Sequence

from .ambient import CoxAmbient, DivisorClass, M, Monomial, format_monomial, ramification_class
from .involutions import SignInvolution


@dataclass(frozen=True, order=True)
class Generator:
    fiber: Monomial
    budget: int = 0
    parity: Optional[int] = None
    t1_min: int = 0
    t1_max: Optional[int] = None

    def __post_init__(self):
        if self.t1_max is None:
            object.__setattr__(self, "t1_max", self.budget)
        if self.parity not in (None, 0, 1):
            raise ValueError("parity must be None, 0 or 1")

    def t1_exponents(self) -> range:
        lo = max(self.t1_min, 0)
        hi = min(self.t1_max, self.budget)
        if self.parity is not None and lo % 2 != self.parity:
            lo += 1
        step = 1 if self.parity is None else 2
        return range(lo, hi + 1, step)

    def count(self) -> int:
        return len(self.t1_exponents())


@dataclass(frozen=True)
class MonomialSystem:
    ambient: CoxAmbient
    cls: DivisorClass
    generators: tuple[Generator, ...] = field(default=())

    def __post_init__(self):
        gens = tuple(sorted(g for g in self.generators if g.count() > 0))
        object.__setattr__(self, "generators", gens)

    @property
    def scroll_like(self) -> bool:
        return self.ambient.kind == "scroll"

    def monomials(self) -> list[Monomial]:
        return sorted(self.iter_monomials(), reverse=True)

    def iter_monomials(self) -> Iterator[Monomial]:
        for g in self.generators:
            if self.scroll_like:
                for k in g.t1_exponents():
                    yield (g.budget - k, k) + g.fiber
            else:
                yield g.fiber

    def __len__(self) -> int:
        return sum(g.count() for g in self.generators)

    @property
    def dimension(self) -> int:
        """Projective dimension of the span; -1 for the empty system."""
        return len(self) - 1

    def is_empty(self) -> bool:
        return not self.generators

    def __contains__(self, exps) -> bool:
        return tuple(exps) in set(self.iter_monomials())

    def fibers(self) -> set[Monomial]:
        return {g.fiber for g in self.generators}

    def to_json(self) -> dict:
        gens = []
        for g in self.generators:
            entry = {"fiber": list(g.fiber)}
            if self.scroll_like:
                entry.update(budget=g.budget, parity=g.parity, t1_range=[g.t1_min, g.t1_max])
            gens.append(entry)
        return {
            "ambient": self.ambient.describe(),
            "class": list(self.cls.coeffs),
            "h0": len(self),
            "generators": gens,
            "monomials": [format_monomial(self.ambient, m) for m in self.monomials()],
        }

    @classmethod
    def from_monomials(cls, ambient: CoxAmbient, monomials: Iterable[Sequence[int]]) -> "MonomialSystem":
        """The span of an explicit list of monomials, all of one class."""
        monomials = [tuple(m) for m in monomials]
        if not monomials:
            raise ValueError("cannot infer the class of an empty monomial list")
        classes = {ambient.class_of(m) for m in monomials}
        if len(classes) != 1:
            raise ValueError("monomials of different classes")
        gens = []
        for m in set(monomials):
            if ambient.kind == "scroll":
                k = m[1]
                gens.append(Generator(m[2:], m[0] + m[1], None, k, k))
            else:
                gens.append(Generator(m))
        return cls(ambient, classes.pop(), tuple(gens))

    def subsystem(self, monomials: Iterable[Sequence[int]]) -> "MonomialSystem":
        own = set(self.iter_monomials())
        monomials = [tuple(m) for m in monomials]
        if not set(monomials) <= own:
            raise ValueError("not a subsystem")
        if not monomials:
            return MonomialSystem(self.ambient, self.cls, ())
        return MonomialSystem.from_monomials(self.ambient, monomials)


def _compositions(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    if parts == 1:
        yield (total,)
        return
    for first in range(total, -1, -1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def _weighted(weights: Sequence[int], degree: int) -> Iterator[tuple[int, ...]]:
    if not weights:
        if degree == 0:
            yield ()
        return
    w, rest = weights[0], weights[1:]
    for e in range(degree // w, -1, -1):
        for tail in _weighted(rest, degree - e * w):
            yield (e,) + tail


def basis(ambient: CoxAmbient, cls: DivisorClass) -> MonomialSystem:
    if ambient.kind == "scroll":
        a, b = cls.a, cls.b
        gens = []
        if a >= 0:
            for fiber in _compositions(a, 3):
                e = b + sum(d * i for d, i in zip(ambient.d, fiber))
                if e >= 0:
                    gens.append(Generator(fiber, e))
        return MonomialSystem(ambient, cls, tuple(gens))
    if ambient.rank != 1:
        raise ValueError("basis enumeration needs a scroll or a rank-one ambient")
    degree = cls.coeffs[0]
    gens = () if degree < 0 else tuple(Generator(m) for m in _weighted(ambient.weights[0], degree))
    return MonomialSystem(ambient, cls, gens)


def h0(ambient: CoxAmbient, cls: DivisorClass) -> int:
    return len(basis(ambient, cls))


def parity_decompose(system: MonomialSystem, inv: SignInvolution, sign: int) -> MonomialSystem:
    """Monomials on which ``inv`` acts by ``sign`` relative to the class character."""
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    ambient = system.ambient
    chi = inv.character(ambient, system.cls) if not system.is_empty() else 1
    out = []
    for g in system.generators:
        if not system.scroll_like:
            if inv.sign(g.fiber) * chi == sign:
                out.append(g)
            continue
        allowed = []
        for p in (0, 1):
            if g.parity is not None and g.parity != p:
                continue
            # a representative t1-exponent of parity p inside [0, e]
            exps = (g.budget - p, p) + g.fiber
            if p <= g.budget and inv.sign(exps) * chi == sign:
                allowed.append(p)
        if not allowed:
            continue
        parity = allowed[0] if len(allowed) == 1 else g.parity
        out.append(replace(g, parity=parity))
    return MonomialSystem(ambient, system.cls, tuple(out))


def m_system_invariant(ambient: CoxAmbient, inv: SignInvolution) -> MonomialSystem:
    if ambient.kind != "scroll":
        raise ValueError("defined on scrolls only")
    return parity_decompose(basis(ambient, M), inv, 1)


def ramification_system(ambient: CoxAmbient) -> MonomialSystem:
    return basis(ambient, ramification_class(ambient))


def invariant_ramification_system(ambient: CoxAmbient, inv: SignInvolution) -> MonomialSystem:
    return parity_decompose(ramification_system(ambient), inv, 1)
