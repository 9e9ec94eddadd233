"""Diagonal sign involutions, their normal forms and fixed loci."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Sequence

from ._lattice import integer_kernel
from .ambient import CoxAmbient, DivisorClass, StratumSet, all_supports


@dataclass(frozen=True)
class SignInvolution:
    signs: tuple[int, ...]

    def __post_init__(self):
        if any(s not in (1, -1) for s in self.signs):
            raise ValueError(f"signs must be +1/-1, got {self.signs}")

    @classmethod
    def identity(cls, n: int) -> "SignInvolution":
        return cls((1,) * n)

    @classmethod
    def negating(cls, ambient: CoxAmbient, names: Iterable[str]) -> "SignInvolution":
        names = set(names)
        unknown = names - set(ambient.variables)
        if unknown:
            raise ValueError(f"unknown variables {sorted(unknown)}")
        return cls(tuple(-1 if v in names else 1 for v in ambient.variables))

    @classmethod
    def parse(cls, text: str) -> "SignInvolution":
        """``"+,-,-,+,-"`` or ``"1,-1,..."``."""
        out = []
        for tok in text.split(","):
            tok = tok.strip()
            if tok in ("+", "+1", "1"):
                out.append(1)
            elif tok in ("-", "-1"):
                out.append(-1)
            else:
                raise ValueError(f"bad sign token {tok!r}")
        return cls(tuple(out))

    def sign(self, exps: Sequence[int]) -> int:
        """Sign picked up by the (Laurent) monomial ``exps``."""
        odd = sum(abs(e) for s, e in zip(self.signs, exps) if s < 0)
        return -1 if odd % 2 else 1

    def character(self, ambient: CoxAmbient, cls: DivisorClass) -> int:
        return self.sign(ambient.reference_exponents(cls))

    def relative_sign(self, ambient: CoxAmbient, exps: Sequence[int]) -> int:
        """Sign of a section measured against the reference monomial of its class.

        Sections transform only up to a scalar, so invariance is relative to
        a chosen linearization; see :meth:`CoxAmbient.reference_exponents`.
        """
        return self.sign(exps) * self.character(ambient, ambient.class_of(exps))

    def compose(self, other: "SignInvolution") -> "SignInvolution":
        return SignInvolution(tuple(a * b for a, b in zip(self.signs, other.signs)))

    def is_identity(self) -> bool:
        return all(s == 1 for s in self.signs)

    def __str__(self) -> str:
        return ",".join("+" if s > 0 else "-" for s in self.signs)


def reference_sigma(ambient: CoxAmbient) -> SignInvolution:
    """``t1 -> -t1``, ``x0 -> -x0``, ``x2 -> -x2`` on a scroll."""
    if ambient.kind != "scroll":
        raise ValueError("defined on scrolls only")
    return SignInvolution((1, -1, -1, 1, -1))


def torus_signs(ambient: CoxAmbient) -> list[SignInvolution]:
    """Sign vectors induced by the order-two elements of the torus."""
    out = set()
    for lam in itertools.product((1, -1), repeat=ambient.rank):
        signs = []
        for j in range(ambient.n):
            s = 1
            for l, row in zip(lam, ambient.weights):
                if l < 0 and row[j] % 2:
                    s = -s
            signs.append(s)
        out.add(tuple(signs))
    return [SignInvolution(s) for s in sorted(out, reverse=True)]


def _equal_weight_permutations(ambient: CoxAmbient) -> list[tuple[int, ...]]:
    """Permutations of the ``x`` coordinates of a scroll with equal ``d_j``."""
    d = ambient.d
    perms = []
    for p in itertools.permutations(range(3)):
        if all(d[p[j]] == d[j] for j in range(3)):
            perms.append((0, 1) + tuple(2 + p[j] for j in range(3)))
    return perms


def orbit(ambient: CoxAmbient, inv: SignInvolution) -> set[tuple[int, ...]]:
    torus = [t.signs for t in torus_signs(ambient)]
    out = set()
    for perm in _equal_weight_permutations(ambient):
        permuted = tuple(inv.signs[perm[j]] for j in range(ambient.n))
        for t in torus:
            out.add(tuple(a * b for a, b in zip(permuted, t)))
    return out


# t0 first, then x1: the normalization used when writing the scroll involution
_SCROLL_KEY = (0, 3, 2, 4, 1)


def normal_form(ambient: CoxAmbient, inv: SignInvolution) -> SignInvolution:
    if ambient.kind != "scroll":
        raise ValueError("defined on scrolls only")
    best = max(orbit(ambient, inv), key=lambda s: tuple(s[i] for i in _SCROLL_KEY))
    return SignInvolution(best)


def same_involution(ambient: CoxAmbient, a: SignInvolution, b: SignInvolution) -> bool:
    """Equal as automorphisms: the sign vectors differ by a torus element."""
    return any(
        a.compose(t).signs == b.signs for t in torus_signs(ambient)
    )


def canonical_forms(ambient: CoxAmbient) -> list[SignInvolution]:
    """Non-trivial sign involutions up to the torus and equal-weight swaps."""
    reps = {normal_form(ambient, SignInvolution(s)) for s in itertools.product((1, -1), repeat=ambient.n)}
    reps = [r for r in reps if not same_involution(ambient, r, SignInvolution.identity(ambient.n))]
    return sorted(reps, key=lambda r: tuple(r.signs[i] for i in _SCROLL_KEY), reverse=True)


def _support_is_fixed(ambient: CoxAmbient, inv: SignInvolution, support: Sequence[int]) -> bool:
    """Is there a torus element ``lam`` with ``lam^w_j = sign_j`` on the support?

    The image of ``lam -> (lam^w_j)`` is cut out by the characters with
    exponent vectors in the integer kernel of the weight columns, so the sign
    vector lies in it iff it is trivial on a kernel basis.
    """
    if not support:
        return True
    cols = [[row[j] for j in support] for row in ambient.weights]
    for u in integer_kernel(cols):
        odd = sum(abs(uj) for uj, j in zip(u, support) if inv.signs[j] < 0)
        if odd % 2:
            return False
    return True


def fixed_locus(ambient: CoxAmbient, inv: SignInvolution) -> StratumSet:
    index = {v: i for i, v in enumerate(ambient.variables)}
    solvable = []
    for support in all_supports(ambient):
        vanish = frozenset(ambient.variables) - support
        if not ambient.is_valid_vanishing(vanish):
            continue
        if _support_is_fixed(ambient, inv, sorted(index[v] for v in support)):
            solvable.append(vanish)
    return StratumSet(ambient, solvable)
