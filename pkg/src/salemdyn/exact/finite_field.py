"""Finite fields GF(p^f) and polynomial arithmetic modulo p.

Polynomials mod p are plain lists of ints, constant term first, reduced to
``range(p)`` and without trailing zeros.
"""
from __future__ import annotations

from typing import Iterator, Sequence

from ..errors import InvalidInput, ZeroElement
from .integers import is_prime, least_nonresidue, legendre
from .poly import IntPolynomial, RatPolynomial


# -- polynomials over GF(p) ----------------------------------------------------
def fp_trim(a: Sequence[int], p: int) -> list:
    out = [c % p for c in a]
    while out and out[-1] == 0:
        out.pop()
    return out


def fp_from_poly(poly: RatPolynomial, p: int) -> list:
    out = []
    for c in poly.coeffs:
        if c.denominator % p == 0:
            raise InvalidInput(f"denominator divisible by {p}")
        out.append(c.numerator * pow(c.denominator, -1, p))
    return fp_trim(out, p)


def fp_add(a, b, p):
    n = max(len(a), len(b))
    return fp_trim([(a[k] if k < len(a) else 0) + (b[k] if k < len(b) else 0) for k in range(n)], p)


def fp_sub(a, b, p):
    n = max(len(a), len(b))
    return fp_trim([(a[k] if k < len(a) else 0) - (b[k] if k < len(b) else 0) for k in range(n)], p)


def fp_mul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return fp_trim(out, p)


def fp_divmod(a, b, p):
    if not b:
        raise ZeroDivisionError("division by zero polynomial mod p")
    rem = list(a)
    db = len(b) - 1
    inv = pow(b[-1], -1, p)
    if len(rem) - 1 < db:
        return [], fp_trim(rem, p)
    quot = [0] * (len(rem) - db)
    for k in range(len(rem) - 1, db - 1, -1):
        c = rem[k] % p
        if c == 0:
            continue
        q = c * inv % p
        quot[k - db] = q
        for j in range(db + 1):
            rem[k - db + j] -= q * b[j]
    return fp_trim(quot, p), fp_trim(rem[:db], p)


def fp_mod(a, b, p):
    return fp_divmod(a, b, p)[1]


def fp_monic(a, p):
    if not a:
        return []
    inv = pow(a[-1], -1, p)
    return [c * inv % p for c in a]


def fp_gcd(a, b, p):
    a, b = fp_trim(a, p), fp_trim(b, p)
    while b:
        a, b = b, fp_mod(a, b, p)
    return fp_monic(a, p)


def fp_powmod(base, e: int, mod, p):
    result = [1]
    base = fp_mod(base, mod, p)
    while e:
        if e & 1:
            result = fp_mod(fp_mul(result, base, p), mod, p)
        base = fp_mod(fp_mul(base, base, p), mod, p)
        e >>= 1
    return result


def fp_derivative(a, p):
    return fp_trim([k * a[k] for k in range(1, len(a))], p)


def _prime_factors(n: int) -> list:
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def is_irreducible_mod_p(poly: RatPolynomial, p: int) -> bool:
    """Rabin's irreducibility test for the reduction of ``poly`` modulo p.

    The degree must not drop under reduction.
    """
    f = fp_from_poly(poly, p)
    n = len(f) - 1
    if n != poly.degree:
        raise InvalidInput(f"leading coefficient vanishes mod {p}")
    if n <= 0:
        return False
    f = fp_monic(f, p)
    x = [0, 1]
    for q in _prime_factors(n):
        h = fp_sub(fp_powmod(x, p ** (n // q), f, p), x, p)
        if len(fp_gcd(f, h, p)) != 1:
            return False
    return not fp_sub(fp_powmod(x, p**n, f, p), x, p)


def distinct_degree_pattern(poly: RatPolynomial, p: int) -> list | None:
    """Degrees of the irreducible factors mod p, or None if not squarefree mod p."""
    f = fp_monic(fp_from_poly(poly, p), p)
    if len(f) - 1 != poly.degree:
        return None
    if len(fp_gcd(f, fp_derivative(f, p), p)) != 1:
        return None
    degrees = []
    x = [0, 1]
    h = x
    d = 0
    while len(f) - 1 >= 2 * (d + 1):
        d += 1
        h = fp_powmod(h, p, f, p)
        g = fp_gcd(f, fp_sub(h, x, p), p)
        k = len(g) - 1
        if k > 0:
            degrees += [d] * (k // d)
            f = fp_divmod(f, g, p)[0]
            h = fp_mod(h, f, p)
    if len(f) - 1 > 0:
        degrees.append(len(f) - 1)
    return sorted(degrees)


def factor_mod_p(poly: RatPolynomial, p: int) -> list:
    """Monic irreducible factors (with multiplicity) of ``poly`` mod p, as lists."""
    from sympy import Poly, symbols

    t = symbols("t")
    f = fp_from_poly(poly, p)
    expr = sum(c * t**k for k, c in enumerate(f))
    _, facs = Poly(expr, t, modulus=p).factor_list()
    out = []
    for fac, mult in facs:
        cs = [int(c) % p for c in reversed(fac.all_coeffs())]
        out.extend([fp_monic(fp_trim(cs, p), p)] * mult)
    out.sort(key=lambda c: (len(c), c))
    return out


# -- finite fields ---------------------------------------------------------------
class FiniteField:
    """GF(p^f) realised as GF(p)[t]/(modulus)."""

    __slots__ = ("p", "modulus", "degree", "order")

    def __init__(self, p: int, modulus: Sequence[int] | None = None):
        if not is_prime(p):
            raise InvalidInput(f"{p} is not prime")
        if modulus is None:
            modulus = [0, 1]
        m = fp_monic(fp_trim(list(modulus), p), p)
        if len(m) < 2:
            raise InvalidInput("modulus must have degree >= 1")
        if len(m) > 2 and not is_irreducible_mod_p(IntPolynomial(m), p):
            raise InvalidInput("modulus is reducible mod p")
        self.p = p
        self.modulus = tuple(m)
        self.degree = len(m) - 1
        self.order = p**self.degree

    @classmethod
    def prime(cls, p: int) -> "FiniteField":
        return cls(p)

    @classmethod
    def quadratic(cls, p: int, r: int | None = None) -> "FiniteField":
        """GF(p^2) = GF(p)[t]/(t^2 - r); r defaults to the least non-residue."""
        if p == 2:
            raise InvalidInput("quadratic representation needs odd p")
        if r is None:
            r = least_nonresidue(p)
        if legendre(r, p) != -1:
            raise InvalidInput(f"{r} is a square mod {p}")
        return cls(p, [-r % p, 0, 1])

    def __eq__(self, other):
        return isinstance(other, FiniteField) and (self.p, self.modulus) == (other.p, other.modulus)

    def __hash__(self):
        return hash((self.p, self.modulus))

    def __repr__(self):
        return f"FiniteField(p={self.p}, modulus={list(self.modulus)})"

    def __call__(self, value) -> "FiniteFieldElement":
        if isinstance(value, int):
            value = [value]
        return FiniteFieldElement(self, value)

    def zero(self):
        return self(0)

    def one(self):
        return self(1)

    def gen(self):
        return self([0, 1]) if self.degree > 1 else self(0)

    def elements(self) -> Iterator["FiniteFieldElement"]:
        p, f = self.p, self.degree
        for idx in range(self.order):
            cs = []
            for _ in range(f):
                cs.append(idx % p)
                idx //= p
            yield FiniteFieldElement(self, cs)


class FiniteFieldElement:
    __slots__ = ("field", "value")

    def __init__(self, field: FiniteField, value: Sequence[int]):
        v = fp_mod(fp_trim(list(value), field.p), list(field.modulus), field.p)
        self.field = field
        self.value = tuple(v + [0] * (field.degree - len(v)))

    def _wrap(self, v):
        return FiniteFieldElement(self.field, v)

    def _other(self, o):
        if isinstance(o, FiniteFieldElement):
            if o.field != self.field:
                raise InvalidInput("elements of different fields")
            return o
        if isinstance(o, int):
            return self.field(o)
        return None

    def __add__(self, o):
        o = self._other(o)
        if o is None:
            return NotImplemented
        return self._wrap([a + b for a, b in zip(self.value, o.value)])

    __radd__ = __add__

    def __neg__(self):
        return self._wrap([-a for a in self.value])

    def __sub__(self, o):
        o = self._other(o)
        if o is None:
            return NotImplemented
        return self._wrap([a - b for a, b in zip(self.value, o.value)])

    def __rsub__(self, o):
        return -(self - o)

    def __mul__(self, o):
        o = self._other(o)
        if o is None:
            return NotImplemented
        prod = fp_mul(list(self.value), list(o.value), self.field.p)
        return self._wrap(fp_mod(prod, list(self.field.modulus), self.field.p))

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        v = fp_powmod(fp_trim(list(self.value), self.field.p), e, list(self.field.modulus), self.field.p)
        return self._wrap(v)

    def is_zero(self) -> bool:
        return not any(self.value)

    def inverse(self):
        if self.is_zero():
            raise ZeroElement("zero has no inverse")
        return self ** (self.field.order - 2)

    def __truediv__(self, o):
        o = self._other(o)
        return self * o.inverse()

    def __eq__(self, o):
        o = self._other(o) if isinstance(o, (int, FiniteFieldElement)) else None
        return o is not None and self.value == o.value

    def __hash__(self):
        return hash((self.field, self.value))

    def to_str(self, var: str = "t") -> str:
        parts = []
        for k, c in enumerate(self.value):
            if c == 0:
                continue
            if k == 0:
                parts.append(str(c))
            elif k == 1:
                parts.append(var if c == 1 else f"{c}{var}")
            else:
                parts.append(f"{c}{var}^{k}" if c != 1 else f"{var}^{k}")
        return "+".join(parts) if parts else "0"

    def __repr__(self):
        return f"{self.to_str()} in GF({self.field.p}^{self.field.degree})"


def ff_is_square(x: FiniteFieldElement) -> bool:
    """Euler's criterion: x^((q-1)/2) == 1 for nonzero x in GF(q), q odd."""
    if x.is_zero():
        raise ZeroElement("zero is excluded from the square test")
    q = x.field.order
    if q % 2 == 0:
        return True
    return x ** ((q - 1) // 2) == 1


def euler_witness(x: FiniteFieldElement) -> FiniteFieldElement:
    """The value x^((q-1)/2), which is +1 or -1."""
    if x.is_zero():
        raise ZeroElement("zero is excluded from the square test")
    return x ** ((x.field.order - 1) // 2)
