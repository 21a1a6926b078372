"""Integer helpers: squarefree tests, primes, residues."""
from __future__ import annotations

from math import isqrt

from sympy import factorint as _factorint
from sympy import isprime as _isprime
from sympy import nextprime as _nextprime
from sympy.ntheory import sqrt_mod as _sqrt_mod

from ..errors import Indeterminate, InvalidInput

SQUAREFREE_TRIAL_BOUND = 10**6


def is_squarefree_integer(n: int, bound: int = SQUAREFREE_TRIAL_BOUND) -> bool:
    """True iff no prime square divides ``n``.

    Trial division runs up to ``bound``.  A remaining cofactor below
    ``bound**3`` has at most two prime factors, so a perfect-square check
    settles it; anything larger raises :class:`Indeterminate`.
    """
    n = int(n)
    if n == 0:
        raise InvalidInput("0 is divisible by every square")
    m = abs(n)
    d = 2
    while d * d <= m and d <= bound:
        if m % d == 0:
            m //= d
            if m % d == 0:
                return False
        d += 1 if d == 2 else 2
    if m == 1 or d * d > m:
        return True
    if m < bound**3:
        r = isqrt(m)
        return r * r != m
    raise Indeterminate(f"cofactor {m} exceeds the trial-division bound {bound}")


def is_prime(n: int) -> bool:
    return n >= 2 and bool(_isprime(n))


def odd_primes(start: int = 3, stop: int | None = None):
    """Odd primes p with start <= p <= stop (unbounded if stop is None)."""
    p = max(start, 3)
    if not is_prime(p):
        p = _nextprime(p)
    while stop is None or p <= stop:
        yield p
        p = _nextprime(p)


def legendre(a: int, p: int) -> int:
    """Legendre symbol via Euler's criterion (p an odd prime)."""
    a %= p
    if a == 0:
        return 0
    return 1 if pow(a, (p - 1) // 2, p) == 1 else -1


def least_nonresidue(p: int) -> int:
    """Least positive quadratic non-residue modulo the odd prime p."""
    if p == 2 or not is_prime(p):
        raise InvalidInput("need an odd prime")
    r = 2
    while legendre(r, p) != -1:
        r += 1
    return r


def sqrt_mod_prime(a: int, p: int) -> int:
    """Some square root of the residue a modulo the odd prime p."""
    a %= p
    if a == 0:
        return 0
    r = _sqrt_mod(a, p)
    if r is None:
        raise InvalidInput(f"{a} is not a square mod {p}")
    return int(r)


def squarefree_kernel(n: int) -> int:
    """The squarefree integer D with n = D * k^2 (sign kept)."""
    if n == 0:
        raise InvalidInput("0 has no squarefree kernel")
    d = -1 if n < 0 else 1
    for q, e in _factorint(abs(n)).items():
        if e % 2:
            d *= q
    return d


def prime_divisors(n: int) -> list:
    return sorted(_factorint(abs(int(n))).keys()) if n not in (0, 1, -1) else []
