"""Exhaustive singular-point search over a prime field."""

from __future__ import annotations

from fractions import Fraction
from typing import Mapping, Optional

import numpy as np

from .poly import Poly

POINT_BUDGET = 10**8
CHUNK = 1 << 18


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    return all(p % q for q in range(2, int(p**0.5) + 1))


def _mod(c: Fraction, p: int) -> int:
    den = c.denominator % p
    if den == 0:
        raise ZeroDivisionError(f"coefficient {c} has a denominator divisible by {p}")
    return (c.numerator * pow(den, -1, p)) % p


class _ModPoly:
    """A polynomial reduced mod p, evaluated on columns of points."""

    def __init__(self, poly: Poly, p: int):
        self.p = p
        self.terms = [(e, _mod(c, p)) for e, c in poly.terms.items()]
        self.terms = [(e, c) for e, c in self.terms if c]
        self.maxdeg = max((max(e) for e, _ in self.terms), default=0)

    def __call__(self, powers: list[np.ndarray], size: int) -> np.ndarray:
        out = np.zeros(size, dtype=np.int64)
        for e, c in self.terms:
            v = np.full(size, c, dtype=np.int64)
            for i, k in enumerate(e):
                if k:
                    v = (v * powers[i][k]) % self.p
            out = (out + v) % self.p
        return out


def singular_scan_fp(
    poly: Poly,
    p: int,
    fixed: Optional[Mapping[int, int]] = None,
    limit: Optional[int] = None,
) -> list[tuple[int, ...]]:
    """Points of ``F_p^n`` where ``poly`` and all its partials vanish.

    ``fixed`` pins some coordinates (e.g. ``{0: 0}`` to search only the
    exceptional divisor of a chart); the remaining ones run over ``F_p``.
    """
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    fixed = dict(fixed or {})
    n = poly.nvars
    free = [i for i in range(n) if i not in fixed]
    if p ** len(free) > POINT_BUDGET:
        raise ValueError(f"{p}^{len(free)} points exceeds the scan budget of {POINT_BUDGET}")
    system = [_ModPoly(poly, p)] + [_ModPoly(poly.diff(i), p) for i in range(n)]
    maxdeg = max(s.maxdeg for s in system)
    total = p ** len(free)
    found: list[tuple[int, ...]] = []
    for start in range(0, total, CHUNK):
        idx = np.arange(start, min(start + CHUNK, total), dtype=np.int64)
        size = len(idx)
        coords: list[np.ndarray] = [None] * n  # type: ignore[list-item]
        rest = idx
        for i in reversed(free):
            coords[i] = rest % p
            rest = rest // p
        for i, v in fixed.items():
            coords[i] = np.full(size, v % p, dtype=np.int64)
        powers = []
        for i in range(n):
            col = [np.ones(size, dtype=np.int64)]
            for _ in range(maxdeg):
                col.append((col[-1] * coords[i]) % p)
            powers.append(col)
        mask = np.ones(size, dtype=bool)
        for s in system:
            sub = np.nonzero(mask)[0]
            if not len(sub):
                break
            vals = s([[c[sub] for c in col] for col in powers], len(sub))
            mask[sub[vals != 0]] = False
        for j in np.nonzero(mask)[0]:
            found.append(tuple(int(coords[i][j]) for i in range(n)))
        if limit is not None and len(found) >= limit:
            return sorted(found)[:limit]
    return sorted(found)

