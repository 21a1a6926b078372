"""Irreducibility certificates and factorization over Q.

Irreducibility is first attempted with cheap exact witnesses (rational-root
test for degree <= 3, modular degree patterns); full factorization is
delegated to sympy.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import islice

from .finite_field import distinct_degree_pattern
from .integers import odd_primes
from .poly import IntPolynomial, RatPolynomial, make_poly


def _divisors(n: int) -> list:
    n = abs(n)
    out = []
    d = 1
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            if d * d != n:
                out.append(n // d)
        d += 1
    return out


def rational_roots(p: RatPolynomial) -> list:
    """All rational roots of p (rational root theorem on the primitive part)."""
    q = p.primitive()
    if q.degree < 1:
        return []
    roots = set()
    k = 0
    while q.coeffs[k] == 0:
        k += 1
    if k:
        roots.add(Fraction(0))
    c0, lc = q.coeffs[k], q.lc
    for a in _divisors(c0):
        for b in _divisors(lc):
            for s in (1, -1):
                r = Fraction(s * a, b)
                if q(r) == 0:
                    roots.add(r)
    return sorted(roots)


def _possible_factor_degrees(pattern: list) -> set:
    sums = {0}
    for d in pattern:
        sums |= {s + d for s in sums}
    return sums


def modular_irreducibility_witness(p: RatPolynomial, primes: int = 12) -> int | None:
    """A prime (or product of evidence) proving irreducibility via degree patterns.

    Returns the last prime used when the intersection of achievable factor
    degrees across primes shrinks to {0, n}; otherwise None.
    """
    q = p.primitive()
    n = q.degree
    allowed = set(range(n + 1))
    for ell in islice(odd_primes(3), 60):
        if q.lc % ell == 0:
            continue
        pat = distinct_degree_pattern(q, ell)
        if pat is None:
            continue
        allowed &= _possible_factor_degrees(pat)
        if allowed <= {0, n}:
            return ell
        primes -= 1
        if primes <= 0:
            break
    return None


@lru_cache(maxsize=2048)
def _irreducible_cached(coeffs: tuple) -> bool:
    p = make_poly(coeffs)
    n = p.degree
    if n < 1:
        return False
    if n == 1:
        return True
    if rational_roots(p):
        return False
    if n <= 3:
        return True
    if modular_irreducibility_witness(p) is not None:
        return True
    return len(factor_over_Q(p)) == 1 and factor_over_Q(p)[0][1] == 1


def is_irreducible(p: RatPolynomial) -> bool:
    """Irreducibility over Q."""
    return _irreducible_cached(p.coeffs)


def factor_over_Q(p: RatPolynomial) -> list:
    """Primitive irreducible integer factors with multiplicities (positive leading coefficients)."""
    from sympy import Poly, symbols

    x = symbols("x")
    q = p.primitive()
    expr = sum(int(c) * x**k for k, c in enumerate(q.coeffs))
    _, facs = Poly(expr, x).factor_list()
    out = []
    for f, mult in facs:
        cs = [int(c) for c in reversed(f.all_coeffs())]
        out.append((IntPolynomial(cs).primitive(), mult))
    out.sort(key=lambda t: (t[0].degree, t[0].coeffs))
    return out
