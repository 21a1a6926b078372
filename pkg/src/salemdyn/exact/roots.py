"""Certified root enclosures.

Complex roots of a squarefree polynomial are enclosed in pairwise disjoint
disks using the Weierstrass (Smith) inclusion theorem: for approximations
z_1..z_n of the roots of a degree-n polynomial P with leading coefficient c,
every disk D(z_i, n |P(z_i)| / |c prod_{j != i} (z_i - z_j)|) contains a
root, and a connected component made of k disks holds exactly k roots.  When
all disks are pairwise disjoint each contains exactly one root.  The
floating-point evaluation error of P(z_i) is bounded a priori and added to
the numerator, and the denominator is shrunk by a relative safety margin.

Real roots are handled exactly with Sturm sequences (:class:`RealAlgebraic`).
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import mpmath

from ..config import MAX_PRECISION_BITS, precision_bits
from ..errors import Indeterminate, InvalidInput, NotSquarefree
from .poly import RatPolynomial, is_squarefree, isolate_real_roots, sturm_count


def _mpf(c: Fraction):
    c = Fraction(c)
    return mpmath.mpf(c.numerator) / c.denominator


@dataclass(frozen=True)
class RootDisks:
    """Pairwise disjoint disks, each holding exactly one root of ``poly``."""

    poly: RatPolynomial
    prec: int
    centers: tuple
    radii: tuple

    def __len__(self):
        return len(self.centers)

    def modulus_interval(self, i: int) -> tuple:
        """Certified (lo, hi) bounds for |root_i| as mpf values."""
        with mpmath.workprec(self.prec):
            a = abs(self.centers[i])
            r = self.radii[i]
            lo = a - r
            return (lo if lo > 0 else mpmath.mpf(0), a + r)

    def is_real(self, i: int) -> bool:
        """True when the disk meets the real axis and its conjugate is itself."""
        return self.conjugate_index(i) == i

    def conjugate_index(self, i: int) -> int | None:
        """Index j with root_j == conj(root_i), or None if not certified."""
        with mpmath.workprec(self.prec):
            zc = mpmath.conj(self.centers[i])
            hits = [
                j for j in range(len(self.centers))
                if abs(zc - self.centers[j]) <= self.radii[i] + self.radii[j]
            ]
        return hits[0] if len(hits) == 1 else None

    def locate(self, z, radius) -> int | None:
        """Index of the unique disk meeting D(z, radius), else None."""
        with mpmath.workprec(self.prec):
            hits = [
                j for j in range(len(self.centers))
                if abs(z - self.centers[j]) <= radius + self.radii[j]
            ]
        return hits[0] if len(hits) == 1 else None


def _eval_with_bound(coeffs_mp, z, prec):
    """P(z) by Horner plus a rigorous-style bound on the rounding error."""
    acc = mpmath.mpc(0)
    absacc = mpmath.mpf(0)
    az = abs(z)
    for c in coeffs_mp:
        acc = acc * z + c
        absacc = absacc * az + abs(c)
    n = len(coeffs_mp)
    err = absacc * mpmath.mpf(2) ** (-prec + 4) * (4 * n + 4)
    return acc, err


def _disks_at(poly: RatPolynomial, prec: int):
    n = poly.degree
    coeffs_hi = [_mpf(c) for c in reversed(poly.coeffs)]
    with mpmath.workprec(prec):
        coeffs_hi = [+c for c in coeffs_hi]
        if n == 1:
            roots = [-coeffs_hi[1] / coeffs_hi[0]]
        else:
            try:
                roots = mpmath.polyroots(
                    coeffs_hi, maxsteps=max(100, 20 * n), extraprec=max(prec, 60), error=False
                )
            except mpmath.libmp.libhyper.NoConvergence:
                return None
        roots = [mpmath.mpc(r) for r in roots]
        lc = coeffs_hi[0]
        radii = []
        margin = 1 + mpmath.mpf(2) ** (-prec // 2)
        for i, z in enumerate(roots):
            val, err = _eval_with_bound(coeffs_hi, z, prec)
            denom = abs(lc)
            for j, w in enumerate(roots):
                if j != i:
                    denom *= abs(z - w)
            if denom == 0:
                return None
            denom = denom / margin
            radii.append(n * (abs(val) + err) / denom * margin + mpmath.mpf(2) ** (-prec + 2) * (1 + abs(z)))
        for i in range(n):
            for j in range(i + 1, n):
                if abs(roots[i] - roots[j]) <= radii[i] + radii[j]:
                    return None
    return RootDisks(poly, prec, tuple(roots), tuple(radii))


def certified_roots(poly: RatPolynomial, prec: int | None = None, max_prec: int = MAX_PRECISION_BITS) -> RootDisks:
    """Disjoint certified disks around all complex roots of a squarefree polynomial.

    Precision starts at ``prec`` (default: ADT_PRECISION_BITS) and doubles
    until certification succeeds or ``max_prec`` is exceeded.
    """
    if poly.degree < 1:
        raise InvalidInput("need degree >= 1")
    if not is_squarefree(poly):
        raise NotSquarefree(f"{poly} is not squarefree")
    p = prec or precision_bits()
    while p <= max_prec:
        d = _disks_at(poly, p)
        if d is not None:
            return d
        p *= 2
    raise Indeterminate(f"root isolation failed for {poly} at {max_prec} bits")


def refine_until(poly: RatPolynomial, predicate, prec: int | None = None, max_prec: int = MAX_PRECISION_BITS):
    """Yield-free helper: certified disks at increasing precision until ``predicate(disks)`` holds."""
    p = prec or precision_bits()
    while p <= max_prec:
        d = certified_roots(poly, p, max_prec)
        if predicate(d):
            return d
        p = d.prec * 2
    raise Indeterminate(f"could not resolve root data of {poly} within {max_prec} bits")


class RealAlgebraic:
    """A real root of a squarefree rational polynomial, isolated in (lo, hi).

    ``lo`` and ``hi`` are rationals that are not roots, and the open
    interval contains exactly one root.  Rational roots may also be stored
    exactly by passing ``lo == hi`` equal to the root.
    """

    __slots__ = ("poly", "lo", "hi")

    def __init__(self, poly: RatPolynomial, lo, hi, check: bool = True):
        self.poly = poly
        self.lo = Fraction(lo)
        self.hi = Fraction(hi)
        if check:
            if self.lo == self.hi:
                if poly(self.lo) != 0:
                    raise InvalidInput("degenerate interval is not a root")
            elif sturm_count(poly, self.lo, self.hi) != 1:
                raise InvalidInput("interval does not isolate exactly one root")

    @classmethod
    def all_roots(cls, poly: RatPolynomial) -> list:
        return [cls(poly, lo, hi, check=False) for lo, hi in isolate_real_roots(poly)]

    def is_exact(self) -> bool:
        return self.lo == self.hi

    def refine(self, width) -> "RealAlgebraic":
        """Bisect (by sign changes) until hi - lo <= width."""
        width = Fraction(width)
        lo, hi = self.lo, self.hi
        if lo == hi:
            return self
        slo = self.poly(lo) > 0
        while hi - lo > width:
            mid = (lo + hi) / 2
            v = self.poly(mid)
            if v == 0:
                return RealAlgebraic(self.poly, mid, mid, check=False)
            if (v > 0) == slo:
                lo = mid
            else:
                hi = mid
        return RealAlgebraic(self.poly, lo, hi, check=False)

    def to_mpf(self, prec: int | None = None):
        prec = prec or precision_bits()
        r = self.refine(Fraction(1, 2 ** (prec + 4)))
        with mpmath.workprec(prec + 8):
            return (_mpf(r.lo) + _mpf(r.hi)) / 2

    def __float__(self):
        r = self.refine(Fraction(1, 2**60))
        return float((r.lo + r.hi) / 2)

    def sign(self) -> int:
        """Exact sign of the number."""
        if self.lo == self.hi:
            return (self.lo > 0) - (self.lo < 0)
        if self.lo >= 0:
            return 1
        if self.hi <= 0:
            return -1
        if self.poly(0) == 0:
            return 0
        return 1 if sturm_count(self.poly, 0, self.hi) == 1 else -1

    def compare_rational(self, c) -> int:
        """Sign of (self - c), exactly."""
        c = Fraction(c)
        if self.lo == self.hi:
            return (self.lo > c) - (self.lo < c)
        if c <= self.lo:
            return 1
        if c >= self.hi:
            return -1
        if self.poly(c) == 0:
            return 0
        return 1 if sturm_count(self.poly, self.lo, c) == 0 else -1

    def decimal(self, digits: int = 30) -> str:
        r = self.refine(Fraction(1, 10 ** (digits + 4)))
        with mpmath.workdps(digits + 10):
            mid = (_mpf(r.lo) + _mpf(r.hi)) / 2
            return mpmath.nstr(mid, digits, strip_zeros=False)

    def to_json(self, digits: int = 30) -> dict:
        return {
            "min_poly": self.poly.to_json(),
            "interval": [str(self.lo), str(self.hi)],
            "decimal": self.decimal(digits),
        }

    @classmethod
    def from_json(cls, data: dict) -> "RealAlgebraic":
        from .poly import parse_polynomial

        return cls(parse_polynomial(data["min_poly"]), Fraction(data["interval"][0]), Fraction(data["interval"][1]))

    def __repr__(self):
        return f"RealAlgebraic({self.poly}, [{self.lo}, {self.hi}])"


def real_algebraic_near(poly: RatPolynomial, value, radius) -> RealAlgebraic:
    """The unique real root of ``poly`` within ``radius`` of the mpf ``value``.

    Raises Indeterminate if the rational interval around value does not
    isolate exactly one root.
    """
    from .poly import squarefree_part

    sq = squarefree_part(poly)
    lo = _to_fraction(value - 2 * radius)
    hi = _to_fraction(value + 2 * radius)
    for _ in range(40):
        if sq(lo) != 0 and sq(hi) != 0:
            break
        lo -= Fraction(1, 10**40)
        hi += Fraction(1, 10**40)
    if sturm_count(sq, lo, hi) != 1:
        raise Indeterminate("enclosure does not isolate a single real root")
    return RealAlgebraic(sq, lo, hi, check=False)


def _to_fraction(x) -> Fraction:
    x = mpmath.mpf(x)
    if x == 0:
        return Fraction(0)
    m, e = x.man_exp
    return Fraction(int(m)) * (Fraction(2) ** int(e))
