"""Recognition of simple (ADE) plane curve singularities.

A germ ``f(y, z)`` of multiplicity two or three is simple exactly when its
Milnor number is small enough for its 3-jet class: corank one gives
``A_mu``, a cubic with three distinct linear factors gives ``D4``, a double
factor gives ``D_mu`` and a triple factor gives ``E_mu`` for
``mu in {6, 7, 8}``.  The Milnor number is computed exactly as the local
intersection number of the partials, by Fulton's algorithm.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Optional

from .poly import Poly

NOT_SIMPLE = "NOT_SIMPLE"
UNDETERMINED = "UNDETERMINED"

MAX_INDEX = 19


def _restrict_y0(f: Poly) -> dict[int, Fraction]:
    """``f(X, 0)`` as a dense-ish map degree -> coefficient."""
    return {e[0]: c for e, c in f.terms.items() if e[1] == 0}


def _truncate(p: Poly, n: int) -> Poly:
    return Poly(p.nvars, {e: c for e, c in p.terms.items() if e[0] + e[1] <= n})


def _eliminate(g: Poly, f: Poly, shift: int, lead: Fraction, cut: int) -> Poly:
    """``g - lead * X^shift * f`` with terms above degree ``cut`` dropped."""
    out = dict(g.terms)
    for (a, b), c in f.terms.items():
        e = (a + shift, b)
        if e[0] + b <= cut:
            out[e] = out[e] - lead * c if e in out else -lead * c
    return Poly._raw(2, out)


TRUNCATIONS = (8, 12, 16, 24, 32)


def intersection_multiplicity(f: Poly, g: Poly) -> Optional[int]:
    """Local intersection number of two plane curves at the origin.

    ``None`` means the curves share a component through the origin.

    Every intermediate polynomial is cut at some degree ``n``.  An answer
    ``r <= n`` is exact: then ``m^n`` lies in the ideal, so by Nakayama the
    dropped terms never changed it.  Conversely a true value ``<= n`` is
    always found at cut ``n``.  A finite value is at most
    ``deg f * deg g`` (Bezout, after removing components away from the
    origin), so the run at that cut decides the infinite case.
    """
    if f.nvars != 2 or g.nvars != 2:
        raise ValueError("plane curves only")
    if f.is_zero() or g.is_zero():
        return None
    if f.constant_term() or g.constant_term():
        return 0
    for axis in range(2):
        if all(e[axis] for e in f.terms) and all(e[axis] for e in g.terms):
            return None
    bezout = f.total_degree() * g.total_degree()
    for n in [t for t in TRUNCATIONS if t < bezout] + [bezout]:
        r = _fulton(_truncate(f, n), _truncate(g, n), n)
        if r is not None and r <= n:
            return r
    return None


def _fulton(f: Poly, g: Poly, cut: int) -> Optional[int]:
    """Fulton's algorithm on polynomials cut at degree ``cut``.

    Returns early with a value ``> cut`` once the running total passes the
    cut; ``None`` when a generator becomes zero.  Terminates: between two
    divisions by ``Y`` the sum of the ``X``-degrees on ``Y = 0`` drops, and
    each division adds at least one to the total.
    """
    total = 0
    while total <= cut:
        if f.constant_term() or g.constant_term():
            return total
        if f.is_zero() or g.is_zero():
            return None
        fx, gx = _restrict_y0(f), _restrict_y0(g)
        r = max(fx) if fx else 0
        s = max(gx) if gx else 0
        if r > s:
            f, g, fx, gx, r, s = g, f, gx, fx, s, r
        if r == 0:
            # Y divides f: I(f, g) = I(Y, g) + I(f / Y, g)
            if not gx:
                return None
            total += min(gx)
            f = f.divide_monomial((0, 1))
            continue
        g = _eliminate(g, f, s - r, gx[s] / fx[r], cut)
    return total


def milnor_number(f: Poly) -> Optional[int]:
    return intersection_multiplicity(f.diff(0), f.diff(1))


def _cubic_coeffs(c: Poly) -> tuple[Fraction, Fraction, Fraction, Fraction]:
    return c.coeff((3, 0)), c.coeff((2, 1)), c.coeff((1, 2)), c.coeff((0, 3))


def cubic_discriminant(c: Poly) -> Fraction:
    a, b, cc, d = _cubic_coeffs(c)
    return b * b * cc * cc - 4 * a * cc**3 - 4 * b**3 * d - 27 * a * a * d * d + 18 * a * b * cc * d


def cubic_is_cube(c: Poly) -> bool:
    """True when the binary cubic is the cube of a linear form (Hessian vanishes)."""
    a, b, cc, d = _cubic_coeffs(c)
    return b * b == 3 * a * cc and cc * cc == 3 * b * d and b * cc == 9 * a * d


def ade_type(f: Poly) -> str:
    """``"A3"``, ``"D5"``, ``"E6"`` ..., ``NOT_SIMPLE`` or ``UNDETERMINED``."""
    if f.nvars != 2:
        raise ValueError("ade_type expects a polynomial in two variables")
    if f.constant_term():
        raise ValueError("germ does not pass through the origin")
    if f.is_zero():
        return NOT_SIMPLE
    m = f.order()
    if m == 1:
        raise ValueError("germ is smooth (has a linear term)")
    if m >= 4:
        return NOT_SIMPLE
    if m == 2:
        q = f.homogeneous_part(2)
        a, b, c = q.coeff((2, 0)), q.coeff((1, 1)), q.coeff((0, 2))
        if b * b - 4 * a * c != 0:
            return "A1"
        mu = milnor_number(f)
        if mu is None:
            return NOT_SIMPLE
        return f"A{mu}" if mu <= MAX_INDEX else UNDETERMINED
    cubic = f.homogeneous_part(3)
    if cubic_discriminant(cubic) != 0:
        return "D4"
    mu = milnor_number(f)
    if cubic_is_cube(cubic):
        if mu is None or mu > 8:
            return NOT_SIMPLE
        return f"E{mu}" if mu >= 6 else UNDETERMINED
    if mu is None:
        return NOT_SIMPLE
    if mu < 5:
        return UNDETERMINED
    return f"D{mu}" if mu <= MAX_INDEX else UNDETERMINED


def is_simple(label: str) -> bool:
    return label not in (NOT_SIMPLE, UNDETERMINED)
