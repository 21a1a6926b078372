"""Certified classification of root moduli; Salem and Pisot detection.

Modulus-one detection never uses a floating-point threshold.  A root on the
unit circle is a common root of P and its reversal, so circle roots live in
the self-reciprocal part G = gcd(P, P*).  After removing the roots +-1, G is
self-reciprocal of even degree and its circle roots correspond to the real
roots of the trace polynomial in (-2, 2).  All remaining roots are classified
with certified disks that are refined until each disk avoids the unit circle.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import mpmath

from .errors import Indeterminate, NotReciprocal, NotSalem, NotSquarefree
from .exact.factor import is_irreducible
from .exact.poly import (
    IntPolynomial,
    RatPolynomial,
    cauchy_bound,
    is_squarefree,
    make_poly,
    parse_polynomial,
    poly_gcd,
    real_root_count,
    sturm_count,
)
from .exact.roots import RealAlgebraic, refine_until


@dataclass(frozen=True)
class ModuliPattern:
    n_outside: int
    n_on: int
    n_inside: int
    certified: bool
    real_root_count: int

    @property
    def degree(self) -> int:
        return self.n_outside + self.n_on + self.n_inside

    def to_json(self) -> dict:
        return {
            "n_outside": self.n_outside,
            "n_on": self.n_on,
            "n_inside": self.n_inside,
            "certified": self.certified,
            "real_root_count": self.real_root_count,
        }

    @classmethod
    def from_json(cls, d: dict) -> "ModuliPattern":
        return cls(d["n_outside"], d["n_on"], d["n_inside"], d["certified"], d["real_root_count"])


@dataclass(frozen=True)
class CertifiedReal:
    """A real algebraic number with an isolating interval of guaranteed width."""

    value: RealAlgebraic
    radius: Fraction

    def decimal(self, digits: int = 30) -> str:
        return self.value.decimal(digits)

    def mid(self) -> Fraction:
        return (self.value.lo + self.value.hi) / 2

    def __float__(self):
        return float(self.value)

    def to_json(self) -> dict:
        d = self.value.to_json()
        d["radius"] = f"{float(self.radius):.3e}"
        return d


@dataclass(frozen=True)
class SalemCertificate:
    polynomial: IntPolynomial
    trace_polynomial: IntPolynomial
    salem_value: CertifiedReal
    degree: int
    pattern: ModuliPattern

    def to_json(self) -> dict:
        return {
            "polynomial": self.polynomial.to_json(),
            "trace_polynomial": self.trace_polynomial.to_json(),
            "salem_value": self.salem_value.to_json(),
            "degree": self.degree,
            "pattern": self.pattern.to_json(),
        }


def _as_poly(p) -> RatPolynomial:
    return parse_polynomial(p) if not isinstance(p, RatPolynomial) else p


def trace_polynomial(P) -> IntPolynomial:
    """Polynomial T of degree m with P(x) = x^m T(x + 1/x) for self-reciprocal P of degree 2m."""
    P = _as_poly(P)
    n = P.degree
    if n < 2 or n % 2 or not P.is_self_reciprocal():
        raise NotReciprocal(f"{P} is not self-reciprocal of even degree")
    m = n // 2
    c = P.coeffs
    v_prev = make_poly([2])
    v_cur = make_poly([0, 1])
    y = make_poly([0, 1])
    acc = make_poly([c[m]])
    for k in range(1, m + 1):
        acc = acc + v_cur.scale(c[m + k])
        v_prev, v_cur = v_cur, y * v_cur - v_prev
    return acc


def _strip_unit_roots(G: RatPolynomial) -> tuple:
    count = 0
    for r in (1, -1):
        lin = make_poly([-r, 1])
        if G.degree >= 1 and G(r) == 0:
            G = G.exact_div(lin)
            count += 1
    return G, count


def _off_circle_counts(R: RatPolynomial) -> tuple:
    """(outside, inside) for a squarefree R without roots on the unit circle."""
    if R.degree < 1:
        return 0, 0

    def resolved(d):
        for i in range(len(d)):
            lo, hi = d.modulus_interval(i)
            if not (lo > 1 or hi < 1):
                return False
        return True

    disks = refine_until(R, resolved)
    out = sum(1 for i in range(len(disks)) if disks.modulus_interval(i)[0] > 1)
    return out, R.degree - out


def classify_root_moduli(P) -> ModuliPattern:
    """Exact counts of roots outside, on and inside the unit circle."""
    P = _as_poly(P)
    if P.is_zero():
        raise NotSquarefree("zero polynomial")
    if P.degree < 1:
        return ModuliPattern(0, 0, 0, True, 0)
    if not is_squarefree(P):
        raise NotSquarefree(f"{P} is not squarefree")
    n_in = 0
    Q = P
    if Q(0) == 0:
        Q = Q.exact_div(make_poly([0, 1]))
        n_in += 1
    n_on = n_out = 0
    if Q.degree >= 1:
        G = poly_gcd(Q, Q.reverse())
        H, units = _strip_unit_roots(G)
        n_on += units
        if H.degree >= 2:
            T = trace_polynomial(H.primitive())
            circle = sturm_count(T, -2, 2)
            n_on += 2 * circle
            pairs = (H.degree - 2 * circle) // 2
            n_out += pairs
            n_in += pairs
        R = Q.exact_div(G)
        o, i = _off_circle_counts(R)
        n_out += o
        n_in += i
    return ModuliPattern(n_out, n_on, n_in, True, real_root_count(P))


def _monic_integral(P: RatPolynomial) -> bool:
    return isinstance(P, IntPolynomial) and P.is_monic()


def _has_real_root_above_one(P: RatPolynomial) -> bool:
    if P(1) == 0:
        return P.degree > 1 and _has_real_root_above_one(P.exact_div(make_poly([-1, 1])))
    b = Fraction(int(cauchy_bound(P)) + 1)
    return sturm_count(P, 1, b) >= 1


def is_salem(P, allow_quadratic: bool = False) -> bool:
    """Salem polynomial test under the degree >= 4 convention.

    With ``allow_quadratic`` degree-2 reciprocal units (no circle roots) are
    also accepted, matching the wider convention used elsewhere.
    """
    try:
        P = _as_poly(P)
    except Exception:
        return False
    if not _monic_integral(P) or P.degree < 2:
        return False
    if not is_irreducible(P):
        return False
    pat = classify_root_moduli(P)
    if pat.n_outside != 1 or pat.n_inside != 1:
        return False
    if not _has_real_root_above_one(P):
        return False
    if P.degree == 2:
        return allow_quadratic
    return pat.n_on >= 2


def is_pisot(P) -> bool:
    """Irreducible monic integer polynomial with one real root > 1 and all others strictly inside."""
    try:
        P = _as_poly(P)
    except Exception:
        return False
    if not _monic_integral(P) or P.degree < 1:
        return False
    if not is_irreducible(P):
        return False
    pat = classify_root_moduli(P)
    return pat.n_outside == 1 and pat.n_on == 0 and _has_real_root_above_one(P)


def _largest_real_root(P: RatPolynomial) -> RealAlgebraic:
    roots = RealAlgebraic.all_roots(P)
    if not roots:
        raise Indeterminate("no real root")
    return roots[-1]


def salem_value(P, allow_quadratic: bool = False) -> CertifiedReal:
    """The Salem number of P, with an isolating interval of width <= 1e-30."""
    P = _as_poly(P)
    if not is_salem(P, allow_quadratic=allow_quadratic):
        raise NotSalem(f"{P} is not a Salem polynomial")
    root = _largest_real_root(P)
    width = Fraction(1, 10**31)
    root = root.refine(width)
    value = CertifiedReal(root, (root.hi - root.lo) / 2)
    _cross_check_trace_route(P, value)
    return value


def _cross_check_trace_route(P: RatPolynomial, value: CertifiedReal) -> None:
    """Independent check: lambda = (y + sqrt(y^2 - 4)) / 2 for the largest trace root y."""
    T = trace_polynomial(P)
    y = _largest_real_root(T).to_mpf(160)
    with mpmath.workprec(160):
        lam = (y + mpmath.sqrt(y * y - 4)) / 2
        lo = mpmath.mpf(value.value.lo.numerator) / value.value.lo.denominator
        hi = mpmath.mpf(value.value.hi.numerator) / value.value.hi.denominator
        slack = mpmath.mpf(10) ** -40
        if not (lo - slack <= lam <= hi + slack):
            raise Indeterminate("Salem value disagrees with the trace-polynomial route")


def salem_certificate(P, allow_quadratic: bool = False) -> SalemCertificate:
    P = _as_poly(P)
    value = salem_value(P, allow_quadratic=allow_quadratic)
    return SalemCertificate(
        polynomial=P,
        trace_polynomial=trace_polynomial(P),
        salem_value=value,
        degree=P.degree,
        pattern=classify_root_moduli(P),
    )
