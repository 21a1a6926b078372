"""Number fields given by a monic irreducible integer polynomial.

Elements are residue classes of rational polynomials modulo the defining
polynomial.  Norms are resultants, traces and characteristic polynomials come
from the multiplication matrix, and signs at real embeddings are decided
exactly by interval evaluation on Sturm-isolated roots.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Sequence

import mpmath

from ._kernels import find_zero_divisor
from .errors import (
    Indeterminate,
    InvalidInput,
    NotIrreducible,
    Unsupported,
    UnsupportedResidueChar,
    WorkBoundExceeded,
    ZeroElement,
)
from .exact.factor import is_irreducible
from .exact.finite_field import factor_mod_p, is_irreducible_mod_p
from .exact.integers import is_prime, is_squarefree_integer, legendre
from .exact.linalg import charpoly
from .exact.poly import (
    IntPolynomial,
    RatPolynomial,
    make_poly,
    parse_polynomial,
    poly_resultant,
    real_root_count,
    squarefree_part,
)
from .exact.roots import RealAlgebraic, certified_roots

MAX_FIELD_DEGREE = 8


class NumberField:
    """Q[x]/(defining) for a monic irreducible integer polynomial of degree <= 8.

    ``max_degree`` lifts the cap for callers that only need element
    arithmetic (for instance the degree-10 field of Lehmer's polynomial).
    """

    def __init__(self, defining, var: str = "x", check: bool = True, max_degree: int = MAX_FIELD_DEGREE):
        P = parse_polynomial(defining)
        if not isinstance(P, IntPolynomial) or not P.is_monic():
            raise InvalidInput(f"defining polynomial must be monic with integer coefficients: {P}")
        if P.degree < 1:
            raise InvalidInput("defining polynomial must have degree >= 1")
        if P.degree > max_degree:
            raise Unsupported(f"field degree {P.degree} exceeds the cap {max_degree}")
        if check and not is_irreducible(P):
            raise NotIrreducible(f"{P} is reducible over Q")
        self.defining = P
        self.degree = P.degree
        self.var = var

    def __eq__(self, other):
        return isinstance(other, NumberField) and self.defining == other.defining

    def __hash__(self):
        return hash(("NumberField", self.defining))

    def __repr__(self):
        return f"NumberField({self.defining.to_str(self.var)})"

    # -- elements -------------------------------------------------------
    def __call__(self, value) -> "FieldElement":
        if isinstance(value, FieldElement):
            if value.parent != self:
                raise InvalidInput("element belongs to another field")
            return value
        if isinstance(value, RatPolynomial):
            return FieldElement(self, value)
        if isinstance(value, (int, Fraction)):
            return FieldElement(self, make_poly([value]))
        if isinstance(value, (list, tuple)):
            return FieldElement(self, make_poly([Fraction(c) for c in value]))
        if isinstance(value, str):
            return FieldElement(self, parse_polynomial(value))
        raise InvalidInput(f"cannot convert {value!r} to a field element")

    def gen(self) -> "FieldElement":
        return FieldElement(self, make_poly([0, 1]))

    def one(self) -> "FieldElement":
        return self(1)

    def zero(self) -> "FieldElement":
        return self(0)

    # -- invariants -------------------------------------------------------
    @cached_property
    def signature(self) -> tuple:
        r1 = real_root_count(self.defining)
        return (r1, (self.degree - r1) // 2)

    @cached_property
    def real_roots(self) -> tuple:
        """Sturm-isolated real roots of the defining polynomial (the real embeddings)."""
        return tuple(RealAlgebraic.all_roots(self.defining))

    @cached_property
    def polynomial_discriminant(self) -> int:
        return power_basis_discriminant(self.defining)

    def root_disks(self, prec: int | None = None):
        return certified_roots(self.defining, prec)

    def is_totally_real(self) -> bool:
        return self.signature[1] == 0

    def kind(self) -> str:
        return field_kind(self.defining)


class FieldElement:
    """Residue class of a rational polynomial modulo the defining polynomial."""

    __slots__ = ("parent", "repr")

    def __init__(self, parent: NumberField, rep: RatPolynomial):
        self.parent = parent
        if rep.degree >= parent.degree:
            rep = rep % parent.defining
        self.repr = rep

    # -- arithmetic -------------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, FieldElement):
            if other.parent != self.parent:
                raise InvalidInput("elements of different fields")
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.parent(other)
        return None

    def __add__(self, o):
        o = self._coerce(o)
        if o is None:
            return NotImplemented
        return FieldElement(self.parent, self.repr + o.repr)

    __radd__ = __add__

    def __neg__(self):
        return FieldElement(self.parent, -self.repr)

    def __sub__(self, o):
        o = self._coerce(o)
        if o is None:
            return NotImplemented
        return FieldElement(self.parent, self.repr - o.repr)

    def __rsub__(self, o):
        o = self._coerce(o)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, o):
        o = self._coerce(o)
        if o is None:
            return NotImplemented
        return FieldElement(self.parent, (self.repr * o.repr) % self.parent.defining)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        result = self.parent.one()
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def inverse(self) -> "FieldElement":
        if self.is_zero():
            raise ZeroElement("zero has no inverse")
        # extended Euclid: s*repr + t*P = 1
        r0, r1 = self.parent.defining, self.repr
        s0, s1 = make_poly([]), make_poly([1])
        while not r1.is_zero():
            q, r = divmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, s0 - q * s1
        # r0 is a nonzero constant
        return FieldElement(self.parent, s0.scale(Fraction(1) / Fraction(r0.lc)))

    def __truediv__(self, o):
        o = self._coerce(o)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, o):
        o = self._coerce(o)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __eq__(self, o):
        if isinstance(o, (int, Fraction)) and not isinstance(o, bool):
            o = self.parent(o)
        if not isinstance(o, FieldElement):
            return NotImplemented
        return self.parent == o.parent and self.repr == o.repr

    def __hash__(self):
        return hash((self.parent, self.repr))

    def is_zero(self) -> bool:
        return self.repr.is_zero()

    def is_rational(self) -> bool:
        return self.repr.degree <= 0

    def coords(self) -> list:
        """Coordinates in the power basis (length = field degree)."""
        cs = list(self.repr.coeffs)
        return [Fraction(c) for c in cs] + [Fraction(0)] * (self.parent.degree - len(cs))

    # -- invariants -------------------------------------------------------
    def norm(self) -> Fraction:
        return element_norm(self)

    def trace(self) -> Fraction:
        return element_trace(self)

    def mult_matrix(self) -> list:
        """Matrix of multiplication by self in the power basis (columns = images)."""
        n = self.parent.degree
        g = self.parent.gen()
        cols = []
        cur = self
        for _ in range(n):
            cols.append(cur.coords())
            cur = cur * g
        return [[cols[j][i] for j in range(n)] for i in range(n)]

    def charpoly(self) -> RatPolynomial:
        return charpoly(self.mult_matrix())

    def minpoly(self) -> RatPolynomial:
        return min_poly_over_Q(self)

    def evaluate(self, z):
        """Value at a complex/real approximation z of the generator (mpmath)."""
        acc = mpmath.mpc(0)
        for c in reversed(self.repr.coeffs):
            acc = acc * z + mpmath.mpf(c.numerator) / c.denominator
        return acc

    def sign_at(self, root: RealAlgebraic) -> int:
        """Exact sign of the image under the real embedding sending x to ``root``."""
        if self.is_zero():
            return 0
        A = self.repr
        if A.degree == 0:
            return 1 if A.coeffs[0] > 0 else -1
        r = root
        width = r.hi - r.lo
        for _ in range(400):
            lo, hi = _interval_eval(A, r.lo, r.hi)
            if lo > 0:
                return 1
            if hi < 0:
                return -1
            if r.is_exact():
                v = A(r.lo)
                return (v > 0) - (v < 0)
            width = width / 4 if width else Fraction(1, 2)
            r = r.refine(width)
        raise Indeterminate("sign at a real embedding not resolved")

    def to_json(self) -> list:
        return [str(c) for c in self.coords()]

    def __repr__(self):
        return f"[{self.repr.to_str(self.parent.var)}] in {self.parent!r}"


def _interval_eval(A: RatPolynomial, lo: Fraction, hi: Fraction) -> tuple:
    """Naive interval Horner evaluation of A on [lo, hi]."""
    a, b = Fraction(0), Fraction(0)
    for c in reversed(A.coeffs):
        cands = (a * lo, a * hi, b * lo, b * hi)
        a, b = min(cands) + c, max(cands) + c
    return a, b


# -- operations ----------------------------------------------------------------
def element_norm(x: FieldElement) -> Fraction:
    """N_{K/Q}(x) = Res(defining, repr); N(c) = c^n for rationals."""
    if x.is_zero():
        return Fraction(0)
    return poly_resultant(x.parent.defining, x.repr)


def element_trace(x: FieldElement) -> Fraction:
    m = x.mult_matrix()
    return sum((m[i][i] for i in range(len(m))), Fraction(0))


def min_poly_over_Q(x: FieldElement) -> RatPolynomial:
    """Monic minimal polynomial over Q (the squarefree part of the characteristic polynomial)."""
    if x.is_rational():
        return make_poly([-x.coords()[0], 1])
    return squarefree_part(x.charpoly())


def power_basis_discriminant(P) -> int:
    """(-1)^(n(n-1)/2) N(P'(gamma)) for monic irreducible P."""
    P = parse_polynomial(P)
    if not isinstance(P, IntPolynomial) or not P.is_monic():
        raise InvalidInput("need a monic integer polynomial")
    n = P.degree
    sign = -1 if (n * (n - 1) // 2) % 2 else 1
    value = sign * poly_resultant(P, P.derivative())
    return int(value)


def embedding_signature(P) -> tuple:
    P = parse_polynomial(P)
    r1 = real_root_count(P)
    return (r1, (P.degree - r1) // 2)


def field_kind(P) -> str:
    """One of 'totally_real', 'cm', 'mixed', 'other' (the last: totally imaginary but not CM)."""
    P = parse_polynomial(P)
    r1, r2 = embedding_signature(P)
    if r2 == 0:
        return "totally_real"
    if r1 > 0:
        return "mixed"
    return "cm" if complex_conjugation_polynomial(P) is not None else "other"


def complex_conjugation_polynomial(P, prec: int | None = None) -> RatPolynomial | None:
    """For totally imaginary P: h with h(alpha) = conj(alpha) for every root, or None.

    The candidate is recovered numerically (its coefficients lie in
    disc(P)^-1 Z) and then verified exactly: P(h) = 0 and h(h(x)) = x modulo
    P, plus a certified check that h maps every root disk onto its
    conjugate disk.  Such h exists exactly when the field is CM.
    """
    P = parse_polynomial(P)
    if real_root_count(P) != 0:
        return None
    n = P.degree
    d = abs(power_basis_discriminant(P))
    disks = certified_roots(P, prec)
    work = max(disks.prec, 200) + 8 * n + d.bit_length() * 2
    with mpmath.workprec(work):
        zs = list(disks.centers)
        V = mpmath.matrix([[z**k for k in range(n)] for z in zs])
        rhs = mpmath.matrix([mpmath.conj(z) for z in zs])
        try:
            sol = mpmath.lu_solve(V, rhs)
        except ZeroDivisionError:
            return None
        coeffs = []
        for k in range(n):
            c = sol[k]
            if abs(mpmath.im(c)) > mpmath.mpf(10) ** -10:
                return None
            scaled = mpmath.re(c) * d
            rounded = int(mpmath.nint(scaled))
            if abs(scaled - rounded) > mpmath.mpf(10) ** -8:
                return None
            coeffs.append(Fraction(rounded, d))
    h = make_poly(coeffs)
    if not (P.compose(h) % P).is_zero():
        return None
    if not ((h.compose(h) - make_poly([0, 1])) % P).is_zero():
        return None
    # certified: h(alpha_i) lies in the disk of conj(alpha_i)
    with mpmath.workprec(disks.prec):
        for i, z in enumerate(disks.centers):
            j = disks.conjugate_index(i)
            if j is None or j == i:
                return None
            r = disks.radii[i]
            hz = sum((mpmath.mpf(c.numerator) / c.denominator) * z**k for k, c in enumerate(h.coeffs))
            slope = sum(
                abs(mpmath.mpf(c.numerator) / c.denominator) * (abs(z) + r) ** max(k - 1, 0) * k
                for k, c in enumerate(h.coeffs)
            )
            if disks.locate(hz, r * slope + mpmath.mpf(2) ** (-disks.prec + 8)) != j:
                return None
    return h


# -- splitting ---------------------------------------------------------------------
@dataclass(frozen=True)
class SplittingType:
    kind: str  # split | inert | ramified | general
    primes: tuple  # ((e, f), ...)

    def to_json(self) -> dict:
        return {"kind": self.kind, "primes": [{"e": e, "f": f} for e, f in self.primes]}


def quadratic_discriminant(D: int) -> int:
    return D if D % 4 == 1 else 4 * D


def quadratic_splitting(D: int, p: int) -> SplittingType:
    """Splitting of the odd prime p in Q(sqrt D), D squarefree."""
    if p == 2:
        raise UnsupportedResidueChar("residue characteristic 2 is not supported")
    if not is_prime(p):
        raise InvalidInput(f"{p} is not prime")
    if D in (0, 1) or not is_squarefree_integer(D):
        raise InvalidInput(f"{D} is not a squarefree integer != 0, 1")
    if quadratic_discriminant(D) % p == 0:
        return SplittingType("ramified", ((2, 1),))
    if legendre(D, p) == 1:
        return SplittingType("split", ((1, 1), (1, 1)))
    return SplittingType("inert", ((1, 2),))


@dataclass(frozen=True)
class PrimeAbove:
    """A prime ideal (p, phi(gamma)) above an unramified p, via Dedekind-Kummer."""

    p: int
    factor: tuple  # monic irreducible factor of the defining polynomial mod p
    e: int
    f: int


def prime_decomposition(K: NumberField, p: int) -> tuple:
    """Primes above p for p not dividing the polynomial discriminant.

    Under that hypothesis Z[gamma] is p-maximal and the factorisation of the
    defining polynomial modulo p describes the primes above p.
    """
    if K.polynomial_discriminant % p == 0:
        raise InvalidInput(f"{p} divides the polynomial discriminant")
    facs = factor_mod_p(K.defining, p)
    primes = tuple(PrimeAbove(p, tuple(f), 1, len(f) - 1) for f in facs)
    kind = "split" if all(q.f == 1 for q in primes) else ("inert" if len(primes) == 1 else "general")
    return primes, SplittingType(kind, tuple((q.e, q.f) for q in primes))


# -- orders ----------------------------------------------------------------------------
class PowerOrder:
    """Z[gamma] with integer structure constants from the defining relation."""

    def __init__(self, K: NumberField):
        self.field = K
        n = K.degree
        g = K.gen()
        powers = [K.one()]
        for _ in range(2 * n - 2):
            powers.append(powers[-1] * g)
        table = []
        for i in range(n):
            row = []
            for j in range(n):
                cs = powers[i + j].coords()
                if any(c.denominator != 1 for c in cs):
                    raise InvalidInput("power basis not closed under multiplication")
                row.append([int(c) for c in cs])
            table.append(row)
        self.structure_constants = table
        disc = K.polynomial_discriminant
        self.discriminant = disc
        self.maximal_certified = is_squarefree_integer(disc)

    @property
    def degree(self) -> int:
        return self.field.degree

    def multiply(self, u: Sequence[int], v: Sequence[int]) -> list:
        n = self.degree
        out = [0] * n
        L = self.structure_constants
        for i in range(n):
            if u[i]:
                for j in range(n):
                    if v[j]:
                        c = u[i] * v[j]
                        row = L[i][j]
                        for k in range(n):
                            out[k] += c * row[k]
        return out

    def warnings(self) -> list:
        return [] if self.maximal_certified else ["MaybeNonMaximal"]


DEFAULT_PAIR_BOUND = 7**8


def zero_divisor_witness(order: PowerOrder, p: int, max_pairs: int = DEFAULT_PAIR_BOUND):
    """First pair (u, v) of nonzero residue vectors with u*v = 0 in O/pO, or None.

    Enumeration order: u lexicographic (first coordinate most significant),
    then v with v_1 <= u_1 and the remaining coordinates lexicographic.
    """
    if not is_prime(p):
        raise InvalidInput(f"{p} is not prime")
    n = order.degree
    if p ** (2 * n) > max_pairs:
        raise WorkBoundExceeded(f"p^(2n) = {p}^{2 * n} exceeds the work bound {max_pairs}")
    return find_zero_divisor(order.structure_constants, n, p)


def is_prime_ideal_pO(order: PowerOrder, p: int, max_pairs: int = DEFAULT_PAIR_BOUND) -> bool:
    """True iff O/pO has no zero divisors (brute force over residue vectors)."""
    return zero_divisor_witness(order, p, max_pairs) is None


def inert_by_factorization(P, p: int) -> bool:
    """Independent oracle: O/pO for the power order is a field iff P is irreducible mod p."""
    return is_irreducible_mod_p(parse_polynomial(P), p)


def square_root_candidates(x: FieldElement, prec: int | None = None) -> FieldElement | None:
    """An exact square root of x in its field, or None if none was found.

    Candidates are interpolated from numerical square roots at every complex
    embedding (all sign choices) and verified exactly.
    """
    K = x.parent
    if x.is_zero():
        return K.zero()
    # scale to an algebraic integer: x * c^2 with c the lcm of denominators of the charpoly
    mp = min_poly_over_Q(x)
    den = 1
    for c in mp.coeffs:
        den = den * Fraction(c).denominator // _gcd(den, Fraction(c).denominator)
    y = x * (den * den)
    n = K.degree
    disks = K.root_disks(prec)
    d = abs(K.polynomial_discriminant)
    work = max(disks.prec, 200) + 8 * n + d.bit_length() * 2
    with mpmath.workprec(work):
        zs = list(disks.centers)
        vals = [mpmath.sqrt(y.evaluate(z)) for z in zs]
        V = mpmath.matrix([[z**k for k in range(n)] for z in zs])
        # respect conjugation: sign choices made on one root of each conjugate pair
        reps = []
        seen = set()
        for i in range(n):
            if i in seen:
                continue
            j = disks.conjugate_index(i)
            seen.add(i)
            if j is not None:
                seen.add(j)
            reps.append((i, j))
        if len(reps) > 10:
            return None
        for mask in range(1 << len(reps)):
            rhs = [None] * n
            for b, (i, j) in enumerate(reps):
                s = -1 if (mask >> b) & 1 else 1
                rhs[i] = s * vals[i]
                if j is not None and j != i:
                    rhs[j] = mpmath.conj(rhs[i])
            try:
                sol = mpmath.lu_solve(V, mpmath.matrix(rhs))
            except ZeroDivisionError:
                return None
            coeffs = []
            ok = True
            for k in range(n):
                c = sol[k]
                scaled = mpmath.re(c) * d
                r = int(mpmath.nint(scaled))
                if abs(mpmath.im(c)) > mpmath.mpf(10) ** -10 or abs(scaled - r) > mpmath.mpf(10) ** -8:
                    ok = False
                    break
                coeffs.append(Fraction(r, d))
            if not ok:
                continue
            cand = K(make_poly(coeffs))
            if cand * cand == y:
                return cand / den
    return None


def _gcd(a: int, b: int) -> int:
    from math import gcd

    return gcd(a, b)


def is_square(x: FieldElement) -> bool:
    """Exact square test.

    A square root found by interpolation proves squareness; a negative value
    at a real embedding, or a non-square residue at some unramified prime,
    proves non-squareness.
    """
    K = x.parent
    if x.is_zero():
        return True
    for r in K.real_roots:
        if x.sign_at(r) < 0:
            return False
    if square_root_candidates(x) is not None:
        return True
    from .exact.finite_field import ff_is_square
    from .exact.integers import odd_primes

    N = x.norm()
    for p in odd_primes(3, 2000):
        if K.polynomial_discriminant % p == 0 or N.numerator % p == 0 or N.denominator % p == 0:
            continue
        primes, _ = prime_decomposition(K, p)
        for q in primes:
            img = reduce_to_residue_field(x, q)
            if not ff_is_square(img):
                return False
    raise Indeterminate("square test not resolved")


def reduce_to_residue_field(x: FieldElement, prime: PrimeAbove):
    """Image of x in GF(p)[t]/(phi), where phi is the factor defining the prime."""
    from .exact.finite_field import FiniteField, fp_from_poly

    F = FiniteField(prime.p, list(prime.factor))
    return F(fp_from_poly(x.repr, prime.p))
