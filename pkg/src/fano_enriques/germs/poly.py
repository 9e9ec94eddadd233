"""Sparse multivariate polynomials with exact rational coefficients."""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational
from typing import Iterable, Mapping, Sequence, Union

Exps = tuple[int, ...]
Scalar = Union[int, Fraction]


class Poly:
    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: Mapping[Exps, Scalar] | None = None):
        self.nvars = nvars
        clean: dict[Exps, Fraction] = {}
        for e, c in (terms or {}).items():
            if len(e) != nvars:
                raise ValueError(f"exponent {e} has wrong length for {nvars} variables")
            if c:
                clean[tuple(e)] = c if type(c) is Fraction else Fraction(c)
        self.terms = clean

    @classmethod
    def _raw(cls, nvars: int, terms: dict[Exps, Fraction]) -> "Poly":
        """Trusted constructor: exponent tuples of the right length, Fraction values."""
        p = cls.__new__(cls)
        p.nvars = nvars
        p.terms = {e: c for e, c in terms.items() if c}
        return p

    # construction
    @classmethod
    def var(cls, nvars: int, i: int) -> "Poly":
        e = [0] * nvars
        e[i] = 1
        return cls(nvars, {tuple(e): 1})

    @classmethod
    def const(cls, nvars: int, c: Scalar) -> "Poly":
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def monomial(cls, exps: Sequence[int], c: Scalar = 1) -> "Poly":
        return cls(len(exps), {tuple(exps): c})

    def gens(self) -> list["Poly"]:
        return [Poly.var(self.nvars, i) for i in range(self.nvars)]

    # arithmetic
    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            if other.nvars != self.nvars:
                raise ValueError("polynomials live in different rings")
            return other
        if isinstance(other, (int, Rational)):
            return Poly.const(self.nvars, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out[e] + c if e in out else c
        return Poly._raw(self.nvars, out)

    __radd__ = __add__

    def __neg__(self):
        return Poly._raw(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Rational)) and not isinstance(other, Poly):
            return Poly(self.nvars, {e: c * other for e, c in self.terms.items()})
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out: dict[Exps, Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out[e] + c1 * c2 if e in out else c1 * c2
        return Poly._raw(self.nvars, out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        result, base = Poly.const(self.nvars, 1), self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Rational)) and not isinstance(other, Poly):
            other = Poly.const(self.nvars, other)
        if not isinstance(other, Poly):
            return NotImplemented
        return self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    # inspection
    def constant_term(self) -> Fraction:
        return self.terms.get((0,) * self.nvars, Fraction(0))

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def order(self) -> int:
        """Lowest total degree of a term; ``-1`` for the zero polynomial."""
        return min((sum(e) for e in self.terms), default=-1)

    def weighted_order(self, weights: Sequence[int]) -> int:
        if not self.terms:
            raise ValueError("weighted order of the zero polynomial")
        return min(sum(w * a for w, a in zip(weights, e)) for e in self.terms)

    def homogeneous_part(self, degree: int) -> "Poly":
        return Poly(self.nvars, {e: c for e, c in self.terms.items() if sum(e) == degree})

    def weighted_part(self, weights: Sequence[int], degree: int) -> "Poly":
        return Poly(
            self.nvars,
            {e: c for e, c in self.terms.items() if sum(w * a for w, a in zip(weights, e)) == degree},
        )

    def coeff(self, exps: Sequence[int]) -> Fraction:
        return self.terms.get(tuple(exps), Fraction(0))

    def degree_in(self, i: int) -> int:
        return max((e[i] for e in self.terms), default=-1)

    def involves(self, i: int) -> bool:
        return any(e[i] for e in self.terms)

    # calculus and substitution
    def diff(self, i: int) -> "Poly":
        out = {}
        for e, c in self.terms.items():
            if e[i]:
                f = list(e)
                f[i] -= 1
                out[tuple(f)] = c * e[i]
        return Poly(self.nvars, out)

    def substitute(self, images: Sequence["Poly"]) -> "Poly":
        """Compose: variable ``i`` is replaced by ``images[i]`` (all in one ring)."""
        if len(images) != self.nvars:
            raise ValueError("need one image per variable")
        if not images:
            return self
        target = images[0].nvars
        cache: dict[tuple[int, int], Poly] = {}

        def power(i: int, k: int) -> Poly:
            if (i, k) not in cache:
                cache[(i, k)] = images[i] ** k
            return cache[(i, k)]

        out = Poly(target)
        for e, c in self.terms.items():
            term = Poly.const(target, c)
            for i, k in enumerate(e):
                if k:
                    term = term * power(i, k)
            out = out + term
        return out

    def evaluate(self, point: Sequence[Scalar]) -> Fraction:
        total = Fraction(0)
        for e, c in self.terms.items():
            v = c
            for x, k in zip(point, e):
                if k:
                    v *= Fraction(x) ** k
            total += v
        return total

    def divide_monomial(self, exps: Sequence[int]) -> "Poly":
        out = {}
        for e, c in self.terms.items():
            f = tuple(a - b for a, b in zip(e, exps))
            if min(f) < 0:
                raise ValueError("monomial does not divide the polynomial")
            out[f] = c
        return Poly(self.nvars, out)

    def drop_variables(self, keep: Iterable[int]) -> "Poly":
        """Project onto the variables ``keep``; the others must not occur."""
        keep = list(keep)
        out = {}
        for e, c in self.terms.items():
            if any(e[i] for i in range(self.nvars) if i not in keep):
                raise ValueError("dropped variable occurs in the polynomial")
            out[tuple(e[i] for i in keep)] = c
        return Poly(len(keep), out)

    def to_str(self, names: Sequence[str]) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms, key=lambda e: (sum(e), [-a for a in e])):
            c = self.terms[e]
            mono = "*".join(n if k == 1 else f"{n}^{k}" for n, k in zip(names, e) if k)
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self):
        return f"Poly({self.to_str([f'v{i}' for i in range(self.nvars)])})"


def lift(p: Poly, nvars: int, positions: Sequence[int]) -> Poly:
    """Embed ``p`` into a ring with ``nvars`` variables, variable i going to positions[i]."""
    out = {}
    for e, c in p.terms.items():
        f = [0] * nvars
        for i, k in zip(positions, e):
            f[i] += k
        out[tuple(f)] = c
    return Poly(nvars, out)
