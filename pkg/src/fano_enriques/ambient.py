"""Scrolls and weighted projective spaces as diagonal torus quotients.

A point of the ambient is a coordinate vector modulo a torus ``(C*)^k`` that
acts through an integer weight matrix.  On the scroll ``F(d1, d2, d3)`` the
coordinates are ``t0, t1, x0, x1, x2``; ``t`` has weight ``(1, 0)`` and
``x_j`` has weight ``(-d_j, 1)``, so a class ``(b, a)`` reads ``aM + bL``.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from typing import Iterable, NamedTuple, Sequence

import numpy as np

from ._lattice import integer_solve

Monomial = tuple[int, ...]


@dataclass(frozen=True)
class DivisorClass:
    coeffs: tuple[int, ...]

    @classmethod
    def scroll(cls, a: int, b: int) -> "DivisorClass":
        """The class ``aM + bL``."""
        return cls((int(b), int(a)))

    @property
    def a(self) -> int:
        return self.coeffs[1]

    @property
    def b(self) -> int:
        return self.coeffs[0]

    def __add__(self, other: "DivisorClass") -> "DivisorClass":
        return DivisorClass(tuple(x + y for x, y in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "DivisorClass") -> "DivisorClass":
        return DivisorClass(tuple(x - y for x, y in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> "DivisorClass":
        return DivisorClass(tuple(-x for x in self.coeffs))

    def __mul__(self, k: int) -> "DivisorClass":
        return DivisorClass(tuple(k * x for x in self.coeffs))

    __rmul__ = __mul__


M = DivisorClass.scroll(1, 0)
L = DivisorClass.scroll(0, 1)


@dataclass(frozen=True)
class CoxAmbient:
    kind: str
    variables: tuple[str, ...]
    weights: tuple[tuple[int, ...], ...]
    irrelevant_groups: tuple[frozenset[str], ...]
    params: tuple[int, ...]

    def __post_init__(self):
        seen = [v for g in self.irrelevant_groups for v in g]
        if sorted(seen) != sorted(self.variables):
            raise ValueError("every variable must lie in exactly one irrelevant group")
        if any(len(row) != len(self.variables) for row in self.weights):
            raise ValueError("weight matrix shape does not match the variables")
        if np.linalg.matrix_rank(np.array(self.weights, dtype=float)) != len(self.weights):
            raise ValueError("weight rows must be linearly independent")

    @property
    def n(self) -> int:
        return len(self.variables)

    @property
    def rank(self) -> int:
        return len(self.weights)

    @property
    def d(self) -> tuple[int, int, int]:
        if self.kind != "scroll":
            raise ValueError("not a scroll")
        return self.params  # type: ignore[return-value]

    def index(self, name: str) -> int:
        return self.variables.index(name)

    def class_of(self, exps: Sequence[int]) -> DivisorClass:
        return DivisorClass(tuple(sum(w * e for w, e in zip(row, exps)) for row in self.weights))

    def reference_exponents(self, cls: DivisorClass) -> tuple[int, ...]:
        """A Laurent monomial of class ``cls`` used to fix the linearization.

        Scrolls use ``t0^(b + a*d3) * x2^a``; weighted projective spaces use a
        power of the first weight-one coordinate when there is one.
        """
        e = [0] * self.n
        if self.kind == "scroll":
            e[0] = cls.b + cls.a * self.params[2]
            e[4] = cls.a
            return tuple(e)
        if 1 in self.weights[0]:
            e[self.weights[0].index(1)] = cls.coeffs[0]
            return tuple(e)
        sol = integer_solve(self.weights, cls.coeffs)
        if sol is None:
            raise ValueError(f"class {cls.coeffs} is not in the image of the weights")
        return sol

    def is_valid_vanishing(self, vanish: Iterable[str]) -> bool:
        """False when the vanishing set swallows an irrelevant group."""
        vanish = frozenset(vanish)
        return not any(g <= vanish for g in self.irrelevant_groups)

    def stratum_dim(self, vanish: Iterable[str]) -> int:
        vanish = frozenset(vanish)
        if not self.is_valid_vanishing(vanish):
            return -1
        cols = [j for j, v in enumerate(self.variables) if v not in vanish]
        sub = np.array([[row[j] for j in cols] for row in self.weights], dtype=float)
        return len(cols) - int(np.linalg.matrix_rank(sub))

    def describe(self) -> dict:
        return {"kind": self.kind, "params": list(self.params), "variables": list(self.variables)}


def scroll(d1: int, d2: int, d3: int) -> CoxAmbient:
    if not d1 >= d2 >= d3 >= 0:
        raise ValueError(f"scroll needs d1 >= d2 >= d3 >= 0, got {(d1, d2, d3)}")
    return CoxAmbient(
        kind="scroll",
        variables=("t0", "t1", "x0", "x1", "x2"),
        weights=((1, 1, -d1, -d2, -d3), (0, 0, 1, 1, 1)),
        irrelevant_groups=(frozenset({"t0", "t1"}), frozenset({"x0", "x1", "x2"})),
        params=(d1, d2, d3),
    )


def wps(weights: Sequence[int]) -> CoxAmbient:
    weights = tuple(int(w) for w in weights)
    if not weights:
        raise ValueError("empty weight list")
    if min(weights) < 1:
        raise ValueError("weights must be positive")
    names = tuple(f"x{i}" for i in range(len(weights)))
    return CoxAmbient(
        kind="wps",
        variables=names,
        weights=(weights,),
        irrelevant_groups=(frozenset(names),),
        params=weights,
    )


def _require_scroll(ambient: CoxAmbient) -> tuple[int, int, int]:
    if ambient.kind != "scroll":
        raise ValueError("operation is defined on scrolls only")
    return ambient.d


def triple_intersection(ambient: CoxAmbient, cls: DivisorClass) -> int:
    """``(aM + bL)^3`` from ``L^2 = 0``, ``M^2 L = 1``, ``M^3 = d1 + d2 + d3``."""
    s = sum(_require_scroll(ambient))
    a, b = cls.a, cls.b
    return a**3 * s + 3 * a**2 * b


def canonical_class(ambient: CoxAmbient) -> DivisorClass:
    s = sum(_require_scroll(ambient))
    return DivisorClass.scroll(-3, s - 2)


def ramification_class(ambient: CoxAmbient) -> DivisorClass:
    s = sum(_require_scroll(ambient))
    return DivisorClass.scroll(4, -2 * (s - 2))


class DegreeGenus(NamedTuple):
    anticanonical_degree: int
    genus: int


def degree_and_genus(d1: int, d2: int, d3: int) -> DegreeGenus:
    s = d1 + d2 + d3
    if s % 2:
        raise ValueError(f"d1+d2+d3 = {s} is odd: -K^3 = {2 * s} is not divisible by 4")
    return DegreeGenus(2 * s, s // 2 + 1)


def projective_dimension(anticanonical_degree: int) -> int:
    """Dimension ``n`` of the target of the anticanonical map, ``-K^3/2 + 2``."""
    return anticanonical_degree // 2 + 2


# --- monomial text ---------------------------------------------------------

def format_monomial(ambient: CoxAmbient, exps: Sequence[int]) -> str:
    parts = []
    for v, e in zip(ambient.variables, exps):
        if e == 1:
            parts.append(v)
        elif e > 1:
            parts.append(f"{v}^{e}")
    return "*".join(parts) if parts else "1"


_FACTOR = re.compile(r"([a-z]\d+)(?:\^(\d+))?")


def parse_monomial(ambient: CoxAmbient, text: str) -> Monomial:
    """Inverse of :func:`format_monomial`; also accepts spaces for ``*``."""
    exps = [0] * ambient.n
    text = text.strip()
    if text == "1":
        return tuple(exps)
    for tok in re.split(r"[*\s]+", text):
        m = _FACTOR.fullmatch(tok)
        if not m:
            raise ValueError(f"bad monomial factor {tok!r}")
        exps[ambient.index(m.group(1))] += int(m.group(2) or 1)
    return tuple(exps)


# --- strata ----------------------------------------------------------------

@dataclass(frozen=True, init=False)
class StratumSet:
    """Union of coordinate strata, each given by its set of vanishing variables.

    Normalized: strata meeting an irrelevant group entirely are dropped and
    only inclusion-minimal vanishing sets (maximal subvarieties) are kept.
    """

    ambient: CoxAmbient
    strata: tuple[frozenset[str], ...]

    def __init__(self, ambient: CoxAmbient, strata: Iterable[Iterable[str]]):
        cands = {frozenset(s) for s in strata}
        cands = {s for s in cands if ambient.is_valid_vanishing(s)}
        minimal = [s for s in cands if not any(o < s for o in cands)]
        order = {v: i for i, v in enumerate(ambient.variables)}
        minimal.sort(key=lambda s: (len(s), sorted(order[v] for v in s)))
        object.__setattr__(self, "ambient", ambient)
        object.__setattr__(self, "strata", tuple(minimal))

    @classmethod
    def whole(cls, ambient: CoxAmbient) -> "StratumSet":
        return cls(ambient, [()])

    @classmethod
    def empty(cls, ambient: CoxAmbient) -> "StratumSet":
        return cls(ambient, [])

    def is_empty(self) -> bool:
        return not self.strata

    def contains(self, vanish: Iterable[str]) -> bool:
        """Whether the (nonempty) stratum ``vanish`` lies inside this locus."""
        vanish = frozenset(vanish)
        return any(s <= vanish for s in self.strata)

    def meets(self, vanish: Iterable[str]) -> bool:
        vanish = frozenset(vanish)
        return any(self.ambient.is_valid_vanishing(s | vanish) for s in self.strata)

    def dims(self) -> list[int]:
        return [self.ambient.stratum_dim(s) for s in self.strata]

    def to_json(self) -> list[list[str]]:
        order = {v: i for i, v in enumerate(self.ambient.variables)}
        return [sorted(s, key=order.__getitem__) for s in self.strata]

    def __repr__(self) -> str:
        inner = ", ".join("{" + ",".join(s) + "=0}" for s in self.to_json())
        return f"StratumSet({inner})"


def all_supports(ambient: CoxAmbient) -> Iterable[frozenset[str]]:
    for r in range(ambient.n + 1):
        for combo in itertools.combinations(ambient.variables, r):
            yield frozenset(combo)
