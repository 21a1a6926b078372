"""Exact comparisons of products of eigenvalue moduli.

Every question about dynamical degrees reduces to the sign of a linear form
sum_r n_r log|alpha_r| over the distinct eigenvalues alpha_r.  A sign is
decided in three stages:

1. Zero by certificate: the form lies in the rational span of known
   multiplicative relations.  Relations come from circle roots (|alpha| = 1),
   complex conjugation, reciprocal pairs, opposite pairs (alpha, -alpha),
   block products (prod |alpha| = |Q(0)/lc(Q)|, with log p for primes p as
   extra independent symbols), and pairwise modulus equalities certified by
   a Sturm count on the polynomial whose roots are the products alpha_i alpha_j.
2. Nonzero by enclosure: interval evaluation with certified root disks.
3. Escalation: precision doubles up to the configured maximum, then
   Indeterminate is raised.
"""
from __future__ import annotations

from fractions import Fraction
from functools import cmp_to_key

import mpmath
from mpmath import iv

from ..config import MAX_PRECISION_BITS, precision_bits
from ..errors import Indeterminate
from ..exact.integers import prime_divisors
from ..exact.linalg import solve_in_span
from ..exact.poly import (
    RatPolynomial,
    interpolate,
    make_poly,
    poly_resultant,
    squarefree_part,
    sturm_count,
)
from ..exact.roots import _to_fraction, certified_roots
from ..salem import classify_root_moduli


def products_polynomial(Q1: RatPolynomial, Q2: RatPolynomial) -> RatPolynomial:
    """Res_x(Q1(x), x^n2 Q2(u/x)): a polynomial in u whose roots are all products a*b."""
    n1, n2 = Q1.degree, Q2.degree
    xs = list(range(n1 * n2 + 1))
    ys = []
    for u in xs:
        # x^n2 Q2(u/x) = sum_k c_k u^k x^(n2-k)
        coeffs = [0] * (n2 + 1)
        for k, c in enumerate(Q2.coeffs):
            coeffs[n2 - k] = c * u**k
        ys.append(poly_resultant(Q1, make_poly(coeffs)))
    return interpolate(xs, ys)


def _sign_of_iv(x) -> int | None:
    if x.a > 0:
        return 1
    if x.b < 0:
        return -1
    if x.a == 0 and x.b == 0:
        return 0
    return None


class ModuliEngine:
    """Distinct eigenvalues of a spectrum with exact modulus comparisons."""

    def __init__(self, blocks):
        self.blocks = list(blocks)
        self.polys = [b.poly for b in self.blocks]
        self._disks = {}
        self.prec = precision_bits()
        self.roots = []  # (block, index in disks)
        for bi, P in enumerate(self.polys):
            for j in range(P.degree):
                self.roots.append((bi, j))
        self._offset = []
        off = 0
        for P in self.polys:
            self._offset.append(off)
            off += P.degree
        self.n = len(self.roots)
        self._circle = self._find_circle_roots()
        self._primes = sorted({p for P in self.polys for p in _const_primes(P)})
        self.relations = []
        self._pair_checked = set()
        self._sq_cache = {}
        self._collect_relations()

    # -- root data ---------------------------------------------------------------------
    def disks(self, bi: int, prec: int | None = None):
        prec = prec or self.prec
        d = self._disks.get(bi)
        if d is None or d.prec < prec:
            d = certified_roots(self.polys[bi], prec)
            self._disks[bi] = d
        return d

    def root_index(self, bi: int, j: int) -> int:
        return self._offset[bi] + j

    def center(self, r: int):
        bi, j = self.roots[r]
        return self.disks(bi).centers[j]

    def is_circle(self, r: int) -> bool:
        return r in self._circle

    def _find_circle_roots(self) -> set:
        out = set()
        for bi, P in enumerate(self.polys):
            if P.degree == 1:
                if abs(P(1)) == 0 or abs(P(-1)) == 0:
                    out.add(self._offset[bi])
                continue
            rev = P.reverse()
            if rev != P and rev != -P:
                continue  # irreducible and not reciprocal: no circle roots
            n_on = classify_root_moduli(P).n_on
            if n_on == 0:
                continue
            prec = self.prec
            while True:
                d = self.disks(bi, prec)
                meeting = []
                for j in range(P.degree):
                    lo, hi = d.modulus_interval(j)
                    if lo <= 1 <= hi:
                        meeting.append(j)
                if len(meeting) == n_on:
                    out.update(self._offset[bi] + j for j in meeting)
                    break
                prec *= 2
                if prec > MAX_PRECISION_BITS:
                    raise Indeterminate(f"could not separate circle roots of {P}")
        return out

    # -- relations ---------------------------------------------------------------------
    def _vec(self, entries: dict, primes: dict | None = None) -> list:
        v = [Fraction(0)] * (self.n + len(self._primes))
        for r, c in entries.items():
            v[r] += c
        for p, c in (primes or {}).items():
            v[self.n + self._primes.index(p)] += c
        return v

    def _add(self, entries: dict, primes: dict | None = None):
        self.relations.append(self._vec(entries, primes))

    def _collect_relations(self):
        for r in self._circle:
            self._add({r: 1})
        for bi, P in enumerate(self.polys):
            d = self.disks(bi)
            off = self._offset[bi]
            for j in range(P.degree):
                c = d.conjugate_index(j)
                if c is not None and c != j:
                    self._add({off + j: 1, off + c: -1})
            const = abs(Fraction(P(0)) / P.lc)
            entries = {off + j: 1 for j in range(P.degree)}
            self._add(entries, {p: -_valuation(const, p) for p in _const_primes(P)})
        # reciprocal and opposite pairs between blocks (including a block with itself)
        for b1, P1 in enumerate(self.polys):
            for b2, P2 in enumerate(self.polys):
                if b2 < b1:
                    continue
                if _proportional(P1.reverse(), P2):
                    self._pair_map(b1, b2, lambda z: 1 / z, sign=+1)
                if _proportional(P1.negate_variable(), P2):
                    self._pair_map(b1, b2, lambda z: -z, sign=-1)

    def _pair_map(self, b1: int, b2: int, fn, sign: int):
        d1, d2 = self.disks(b1), self.disks(b2)
        with mpmath.workprec(d1.prec):
            for j in range(self.polys[b1].degree):
                z = d1.centers[j]
                w = fn(z)
                # |fn(z) - fn(root)| is bounded by a small multiple of the radius
                rad = d1.radii[j] * (4 / abs(z) ** 2 + 4 if sign > 0 else 2)
                k = d2.locate(w, rad)
                if k is None:
                    continue
                r, s = self._offset[b1] + j, self._offset[b2] + k
                if r == s and sign < 0:
                    continue
                self._add({r: 1, s: sign} if r != s else {r: 1 + sign})

    def _try_equal_moduli(self, r: int, s: int, prec: int) -> bool:
        """Certify |alpha_r| = |alpha_s| via a single Sturm count, adding the relation on success."""
        key = (min(r, s), max(r, s), prec)
        if key in self._pair_checked:
            return False
        self._pair_checked.add(key)
        br, bs = self.roots[r][0], self.roots[s][0]
        W = self._square_moduli_poly(min(br, bs), max(br, bs))
        with mpmath.workprec(prec):
            lo_r, hi_r = self._mod_interval(r, prec)
            lo_s, hi_s = self._mod_interval(s, prec)
            lo = min(lo_r, lo_s) ** 2
            hi = max(hi_r, hi_s) ** 2
            slack = mpmath.mpf(2) ** (-prec // 2)
            flo = _to_fraction(lo * (1 - slack))
            fhi = _to_fraction(hi * (1 + slack))
        if W(flo) == 0 or W(fhi) == 0:
            return False
        if sturm_count(W, flo, fhi) == 1:
            self._add({r: 1, s: -1})
            return True
        return False

    def _square_moduli_poly(self, b1: int, b2: int) -> RatPolynomial:
        """Squarefree polynomial vanishing at |alpha|^2 for every root of blocks b1 and b2."""
        key = (b1, b2)
        W = self._sq_cache.get(key)
        if W is None:
            W = products_polynomial(self.polys[b1], self.polys[b1])
            if b2 != b1:
                W = W * products_polynomial(self.polys[b2], self.polys[b2])
            W = squarefree_part(W)
            self._sq_cache[key] = W
        return W

    # -- numerics ----------------------------------------------------------------------
    def _mod_interval(self, r: int, prec: int):
        bi, j = self.roots[r]
        return self.disks(bi, prec).modulus_interval(j)

    def log_interval(self, r: int, prec: int):
        if r in self._circle:
            return iv.mpf(0)
        lo, hi = self._mod_interval(r, prec)
        iv.prec = prec
        return iv.log(iv.mpf([lo, hi]))

    def modulus_decimal(self, r: int, digits: int = 30) -> str:
        if r in self._circle:
            return "1"
        prec = max(self.prec, int(digits * 3.4) + 40)
        lo, hi = self._mod_interval(r, prec)
        with mpmath.workprec(prec):
            return mpmath.nstr((lo + hi) / 2, digits)

    # -- queries -----------------------------------------------------------------------
    def in_span(self, entries: dict) -> bool:
        target = self._vec(entries)
        return solve_in_span(self.relations, target) is not None

    def sign(self, entries: dict) -> int:
        """Exact sign of sum n_r log|alpha_r| for entries {r: n_r}."""
        entries = {r: Fraction(c) for r, c in entries.items() if c != 0}
        if not entries:
            return 0
        if self.in_span(entries):
            return 0
        prec = self.prec
        while prec <= MAX_PRECISION_BITS:
            iv.prec = prec
            acc = iv.mpf(0)
            for r, c in entries.items():
                acc += iv.mpf(c.numerator) / c.denominator * self.log_interval(r, prec)
            s = _sign_of_iv(acc)
            if s is not None:
                return s
            if self._discover_pairs(entries, prec) and self.in_span(entries):
                return 0
            prec *= 2
        raise Indeterminate("could not decide the sign of a product of moduli")

    def _discover_pairs(self, entries: dict, prec: int) -> bool:
        """Try equality certificates for root pairs whose modulus enclosures overlap."""
        found = False
        rs = list(range(self.n))
        for i in rs:
            for k in rs:
                if k <= i:
                    continue
                if self.in_span({i: 1, k: -1}):
                    continue
                a, b = self.log_interval(i, prec), self.log_interval(k, prec)
                if a.b < b.a or b.b < a.a:
                    continue
                if self._try_equal_moduli(i, k, prec):
                    found = True
        return found

    def compare(self, r: int, s: int) -> int:
        """Sign of |alpha_r| - |alpha_s|."""
        if r == s:
            return 0
        return self.sign({r: 1, s: -1})

    def sorted_roots(self, multiplicities: dict | None = None) -> list:
        """Distinct root indices repeated by multiplicity, sorted by decreasing modulus."""
        entries = []
        for bi, b in enumerate(self.blocks):
            for j in range(b.poly.degree):
                entries.extend([self._offset[bi] + j] * b.multiplicity)
        return sorted(entries, key=cmp_to_key(lambda a, b: -self.compare(a, b)))

    def value_decimal(self, entries: dict, digits: int = 30) -> str:
        prec = max(self.prec, int(digits * 3.4) + 40)
        iv.prec = prec
        acc = iv.mpf(0)
        for r, c in entries.items():
            if c:
                acc += iv.mpf(c) * self.log_interval(r, prec)
        val = iv.exp(acc)
        with mpmath.workprec(prec):
            mid = (mpmath.mpf(val.a) + mpmath.mpf(val.b)) / 2
            return mpmath.nstr(mid, digits)

    def log_decimal(self, entries: dict, digits: int = 30) -> str:
        prec = max(self.prec, int(digits * 3.4) + 40)
        iv.prec = prec
        acc = iv.mpf(0)
        for r, c in entries.items():
            if c:
                acc += iv.mpf(c) * self.log_interval(r, prec)
        with mpmath.workprec(prec):
            return mpmath.nstr((mpmath.mpf(acc.a) + mpmath.mpf(acc.b)) / 2, digits)

    def value_interval(self, entries: dict, prec: int | None = None):
        prec = prec or self.prec
        iv.prec = prec
        acc = iv.mpf(0)
        for r, c in entries.items():
            if c:
                acc += iv.mpf(c) * self.log_interval(r, prec)
        return iv.exp(acc)


def _proportional(a: RatPolynomial, b: RatPolynomial) -> bool:
    if a.degree != b.degree or a.degree < 1:
        return False
    return a.scale(Fraction(1) / a.lc) == b.scale(Fraction(1) / b.lc)


def _const_primes(P: RatPolynomial) -> list:
    c = abs(Fraction(P(0)) / P.lc)
    return sorted(set(prime_divisors(c.numerator)) | set(prime_divisors(c.denominator)))


def _valuation(c: Fraction, p: int) -> int:
    v = 0
    n, d = c.numerator, c.denominator
    while n % p == 0:
        n //= p
        v += 1
    while d % p == 0:
        d //= p
        v -= 1
    return v
