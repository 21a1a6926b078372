"""Exact univariate polynomials over Z and Q.

Coefficients are stored constant-term-first, so ``coeffs[k]`` is the
coefficient of ``x**k``.  Arithmetic results are narrowed automatically: a
polynomial whose coefficients are all integers is returned as an
:class:`IntPolynomial`.
"""
from __future__ import annotations

import json
import re
from fractions import Fraction
from functools import lru_cache
from math import gcd, lcm
from typing import Iterable, Sequence

from ..errors import EndpointRoot, InvalidInput, NotSquarefree

Rational = Fraction


def _frac(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, bool):
        raise InvalidInput("boolean is not a coefficient")
    if isinstance(c, (int, str)):
        try:
            return Fraction(c)
        except (ValueError, ZeroDivisionError) as exc:
            raise InvalidInput(f"bad coefficient {c!r}") from exc
    if isinstance(c, float):
        return Fraction(c)
    raise InvalidInput(f"unsupported coefficient type {type(c).__name__}")


class RatPolynomial:
    """Polynomial with rational coefficients in lowest terms."""

    __slots__ = ("_c",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [_frac(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self._c = tuple(cs)

    # -- basic accessors -------------------------------------------------
    @property
    def coeffs(self) -> tuple:
        return self._c

    @property
    def degree(self) -> int:
        """Index of the last nonzero coefficient; -1 for the zero polynomial."""
        return len(self._c) - 1

    @property
    def lc(self):
        if not self._c:
            return Fraction(0)
        return self._c[-1]

    def is_zero(self) -> bool:
        return not self._c

    def is_monic(self) -> bool:
        return bool(self._c) and self._c[-1] == 1

    def is_integral(self) -> bool:
        return all(Fraction(c).denominator == 1 for c in self._c)

    def __len__(self):
        return len(self._c)

    def __getitem__(self, k):
        if 0 <= k < len(self._c):
            return self._c[k]
        return 0

    # -- comparison ------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, RatPolynomial):
            return self._c == other._c
        if isinstance(other, (int, Fraction)):
            return self._c == make_poly([other])._c
        return NotImplemented

    def __hash__(self):
        return hash(self._c)

    def __bool__(self):
        return bool(self._c)

    # -- arithmetic ------------------------------------------------------
    @staticmethod
    def _coerce(other) -> "RatPolynomial | None":
        if isinstance(other, RatPolynomial):
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return make_poly([other])
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        n = max(len(self._c), len(o._c))
        return make_poly([self[k] + o[k] for k in range(n)])

    __radd__ = __add__

    def __neg__(self):
        return make_poly([-c for c in self._c])

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        n = max(len(self._c), len(o._c))
        return make_poly([self[k] - o[k] for k in range(n)])

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if not self._c or not o._c:
            return make_poly([])
        out = [0] * (len(self._c) + len(o._c) - 1)
        for i, a in enumerate(self._c):
            if a == 0:
                continue
            for j, b in enumerate(o._c):
                out[i + j] += a * b
        return make_poly(out)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if not isinstance(e, int) or e < 0:
            raise InvalidInput("exponent must be a nonnegative integer")
        result = make_poly([1])
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __divmod__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if o.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = [Fraction(c) for c in self._c]
        dq = o.degree
        lc = Fraction(o.lc)
        oc = [Fraction(c) for c in o._c]
        if len(rem) - 1 < dq:
            return make_poly([]), make_poly(rem)
        quot = [Fraction(0)] * (len(rem) - dq)
        for k in range(len(rem) - 1, dq - 1, -1):
            c = rem[k]
            if c == 0:
                continue
            q = c / lc
            quot[k - dq] = q
            for j in range(dq + 1):
                rem[k - dq + j] -= q * oc[j]
        return make_poly(quot), make_poly(rem[:dq])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def exact_div(self, other) -> "RatPolynomial":
        q, r = divmod(self, other)
        if not r.is_zero():
            raise InvalidInput("division is not exact")
        return q

    def scale(self, c) -> "RatPolynomial":
        c = _frac(c)
        return make_poly([c * a for a in self._c])

    # -- evaluation and transforms ----------------------------------------
    def __call__(self, x):
        acc = 0
        for c in reversed(self._c):
            acc = acc * x + c
        return acc

    def eval_mp(self, x):
        """Horner evaluation with coefficients converted to mpmath numbers."""
        import mpmath

        acc = mpmath.mpf(0)
        for c in reversed(self._c):
            acc = acc * x + mpmath.mpf(c.numerator) / c.denominator
        return acc

    def derivative(self) -> "RatPolynomial":
        return make_poly([k * self._c[k] for k in range(1, len(self._c))])

    def compose(self, inner: "RatPolynomial") -> "RatPolynomial":
        acc = make_poly([])
        for c in reversed(self._c):
            acc = acc * inner + c
        return acc

    def reverse(self, n: int | None = None) -> "RatPolynomial":
        """``x**n * P(1/x)`` with ``n`` defaulting to the degree."""
        if n is None:
            n = self.degree
        if n < self.degree:
            raise InvalidInput("reversal length smaller than degree")
        cs = list(self._c) + [0] * (n + 1 - len(self._c))
        return make_poly(cs[::-1])

    def negate_variable(self) -> "RatPolynomial":
        """``P(-x)``."""
        return make_poly([c if k % 2 == 0 else -c for k, c in enumerate(self._c)])

    def scale_variable(self, s) -> "RatPolynomial":
        """``P(s*x)``."""
        s = _frac(s)
        return make_poly([c * s**k for k, c in enumerate(self._c)])

    def monic(self) -> "RatPolynomial":
        if self.is_zero():
            raise InvalidInput("zero polynomial has no monic normalization")
        lc = Fraction(self.lc)
        return make_poly([Fraction(c) / lc for c in self._c])

    def content(self) -> Fraction:
        """Positive rational c with self/c a primitive integer polynomial."""
        if self.is_zero():
            return Fraction(0)
        den = 1
        for c in self._c:
            den = lcm(den, Fraction(c).denominator)
        g = 0
        for c in self._c:
            g = gcd(g, int(Fraction(c) * den))
        return Fraction(g, den)

    def primitive(self) -> "IntPolynomial":
        """Primitive integer polynomial with positive leading coefficient."""
        if self.is_zero():
            return IntPolynomial([])
        c = self.content()
        if self.lc < 0:
            c = -c
        return IntPolynomial([int(Fraction(a) / c) for a in self._c])

    def positive_primitive(self) -> "IntPolynomial":
        """Primitive integer multiple keeping the sign of every value."""
        if self.is_zero():
            return IntPolynomial([])
        c = self.content()
        return IntPolynomial([int(Fraction(a) / c) for a in self._c])

    def is_self_reciprocal(self) -> bool:
        return not self.is_zero() and self._c[0] != 0 and self == self.reverse()

    def is_anti_reciprocal(self) -> bool:
        return not self.is_zero() and self._c[0] != 0 and self == -self.reverse()

    # -- text -----------------------------------------------------------
    def to_str(self, var: str = "x") -> str:
        if self.is_zero():
            return "0"
        parts = []
        for k in range(self.degree, -1, -1):
            c = self._c[k]
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            a = abs(c)
            if k == 0:
                body = str(a)
            else:
                mono = var if k == 1 else f"{var}^{k}"
                body = mono if a == 1 else f"{a}*{mono}"
            parts.append((sign, body))
        first_sign, first_body = parts[0]
        out = ("-" if first_sign == "-" else "") + first_body
        for s, b in parts[1:]:
            out += f" {s} {b}"
        return out

    def to_json(self) -> list:
        return [str(c) for c in self._c]

    def __repr__(self):
        return f"{type(self).__name__}({[str(c) for c in self._c]})"

    def __str__(self):
        return self.to_str()


class IntPolynomial(RatPolynomial):
    """Polynomial with integer coefficients."""

    __slots__ = ()

    def __init__(self, coeffs: Iterable = ()):
        cs = []
        for c in coeffs:
            f = _frac(c)
            if f.denominator != 1:
                raise InvalidInput(f"non-integral coefficient {c!r}")
            cs.append(int(f))
        while cs and cs[-1] == 0:
            cs.pop()
        self._c = tuple(cs)

    @property
    def lc(self):
        return self._c[-1] if self._c else 0


def make_poly(coeffs: Sequence) -> RatPolynomial:
    """Build the narrowest polynomial type holding ``coeffs``."""
    fs = [_frac(c) for c in coeffs]
    if all(f.denominator == 1 for f in fs):
        return IntPolynomial([int(f) for f in fs])
    return RatPolynomial(fs)


X = IntPolynomial([0, 1])


def cyclotomic(n: int) -> IntPolynomial:
    """The n-th cyclotomic polynomial."""
    return _cyclotomic_cached(n)


@lru_cache(maxsize=None)
def _cyclotomic_cached(n: int) -> IntPolynomial:
    if n < 1:
        raise InvalidInput("cyclotomic index must be positive")
    p = IntPolynomial([-1] + [0] * (n - 1) + [1])
    for d in range(1, n):
        if n % d == 0:
            p = p.exact_div(_cyclotomic_cached(d))
    return IntPolynomial(p.coeffs)


# -- gcd, squarefree --------------------------------------------------------
def poly_gcd(p: RatPolynomial, q: RatPolynomial) -> RatPolynomial:
    """Monic greatest common divisor over Q (zero if both are zero)."""
    a, b = p, q
    while not b.is_zero():
        a, b = b, (a % b)
        if not b.is_zero():
            b = b.monic()
    if a.is_zero():
        return a
    return a.monic()


def squarefree_part(p: RatPolynomial) -> RatPolynomial:
    """Monic product of the distinct irreducible factors of ``p``."""
    if p.degree <= 0:
        return make_poly([1])
    g = poly_gcd(p, p.derivative())
    return p.exact_div(g).monic()


def is_squarefree(p: RatPolynomial) -> bool:
    if p.degree <= 0:
        return True
    return poly_gcd(p, p.derivative()).degree == 0


# -- resultants -------------------------------------------------------------
def poly_resultant(p: RatPolynomial, q: RatPolynomial) -> Fraction:
    """Res(P, Q) = lc(P)^deg(Q) * prod Q(alpha) over the roots alpha of P."""
    if p.is_zero() or q.is_zero():
        raise InvalidInput("resultant of the zero polynomial")
    sign = 1
    acc = Fraction(1)
    a, b = p, q
    while True:
        m, n = a.degree, b.degree
        if m == 0:
            return sign * acc * Fraction(a.lc) ** n
        if n == 0:
            return sign * acc * Fraction(b.lc) ** m
        r = b % a
        if r.is_zero():
            return Fraction(0)
        acc *= Fraction(a.lc) ** (n - r.degree)
        # Res(a, r) = (-1)^(m deg r) Res(r, a)
        if (m * r.degree) % 2:
            sign = -sign
        a, b = r, a


def poly_discriminant(p: RatPolynomial) -> Fraction:
    """Classical discriminant (-1)^(n(n-1)/2) Res(P, P') / lc(P)."""
    n = p.degree
    if n < 1:
        raise InvalidInput("discriminant needs degree >= 1")
    sign = -1 if (n * (n - 1) // 2) % 2 else 1
    return sign * poly_resultant(p, p.derivative()) / Fraction(p.lc)


def interpolate(xs: Sequence, ys: Sequence) -> RatPolynomial:
    """Exact Newton interpolation through the points (xs[i], ys[i])."""
    xs = [_frac(x) for x in xs]
    coef = [_frac(y) for y in ys]
    n = len(xs)
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) / (xs[i] - xs[i - j])
    result = make_poly([coef[-1]])
    for i in range(n - 2, -1, -1):
        result = result * make_poly([-xs[i], 1]) + coef[i]
    return result


def graeffe(p: RatPolynomial) -> RatPolynomial:
    """The polynomial R with R(x^2) = (-1)^n P(x) P(-x); roots are squares of P's roots."""
    prod = p * p.negate_variable()
    if p.degree % 2:
        prod = -prod
    return make_poly(prod.coeffs[0::2])


# -- Sturm sequences ----------------------------------------------------------
@lru_cache(maxsize=4096)
def _sturm_cached(coeffs: tuple) -> tuple:
    p = make_poly(coeffs)
    seq = [p.positive_primitive(), p.derivative().positive_primitive()]
    while True:
        r = seq[-2] % seq[-1]
        if r.is_zero():
            break
        seq.append((-r).positive_primitive())
    if seq[-1].degree > 0:
        raise NotSquarefree(f"{p} is not squarefree")
    return tuple(seq)


def sturm_sequence(p: RatPolynomial) -> tuple:
    """Sturm sequence of a squarefree polynomial (positive rescalings only)."""
    if p.degree < 1:
        raise InvalidInput("Sturm sequence needs degree >= 1")
    return _sturm_cached(p.coeffs)


def _variations(values) -> int:
    count = 0
    last = 0
    for v in values:
        if v == 0:
            continue
        s = 1 if v > 0 else -1
        if last and s != last:
            count += 1
        last = s
    return count


def _var_at(seq, x) -> int:
    return _variations(q(x) for q in seq)


def _var_at_inf(seq, positive: bool) -> int:
    vals = []
    for q in seq:
        s = 1 if q.lc > 0 else -1
        if not positive and q.degree % 2:
            s = -s
        vals.append(s)
    return _variations(vals)


def sturm_count(p: RatPolynomial, lo, hi) -> int:
    """Exact number of real roots of the squarefree ``p`` in the open interval (lo, hi)."""
    lo, hi = _frac(lo), _frac(hi)
    if not lo < hi:
        raise InvalidInput("need lo < hi")
    if p.is_zero():
        raise InvalidInput("zero polynomial")
    if p.degree == 0:
        return 0
    if p(lo) == 0 or p(hi) == 0:
        raise EndpointRoot(f"endpoint is a root of {p}")
    seq = sturm_sequence(p)
    return _var_at(seq, lo) - _var_at(seq, hi)


def real_root_count(p: RatPolynomial) -> int:
    """Number of distinct real roots of a squarefree polynomial."""
    if p.degree < 1:
        return 0
    seq = sturm_sequence(p)
    return _var_at_inf(seq, False) - _var_at_inf(seq, True)


def cauchy_bound(p: RatPolynomial) -> Fraction:
    """All complex roots have modulus strictly below this bound."""
    lc = abs(Fraction(p.lc))
    return 1 + max((abs(Fraction(c)) / lc for c in p.coeffs[:-1]), default=Fraction(0))


def _nonroot_split(p, lo: Fraction, hi: Fraction) -> Fraction:
    mid = (lo + hi) / 2
    k = 3
    while p(mid) == 0:
        mid = lo + (hi - lo) * (Fraction(1, 2) + Fraction(1, 2**k))
        k += 1
    return mid


def isolate_real_roots(p: RatPolynomial) -> list:
    """Disjoint open rational intervals (lo, hi), each holding exactly one real root.

    Endpoints are never roots.  Intervals are sorted increasingly.
    """
    if p.degree < 1:
        return []
    seq = sturm_sequence(p)
    b = cauchy_bound(p)
    b = Fraction(int(b) + 1)
    out = []
    stack = [(-b, b, _var_at(seq, -b), _var_at(seq, b))]
    while stack:
        lo, hi, vlo, vhi = stack.pop()
        n = vlo - vhi
        if n == 0:
            continue
        if n == 1:
            out.append((lo, hi))
            continue
        mid = _nonroot_split(p, lo, hi)
        vm = _var_at(seq, mid)
        stack.append((lo, mid, vlo, vm))
        stack.append((mid, hi, vm, vhi))
    out.sort()
    return out


# -- parsing ------------------------------------------------------------------
_TERM = re.compile(r"([+-])?(\d+(?:/\d+)?)?(\*)?(?:([A-Za-z])(?:\^(\d+))?)?")


def parse_polynomial(text) -> RatPolynomial:
    """Parse ``"x^4-x^3-x^2-x+1"`` or a JSON array of decimal strings (constant first).

    Also accepts an already-decoded list of coefficients.
    """
    if isinstance(text, RatPolynomial):
        return text
    if isinstance(text, (list, tuple)):
        return _from_list(text)
    if not isinstance(text, str):
        raise InvalidInput("polynomial must be a string or a coefficient list")
    s = text.strip()
    if s.startswith("["):
        try:
            data = json.loads(s)
        except json.JSONDecodeError as exc:
            raise InvalidInput(f"bad JSON polynomial: {exc}") from exc
        return _from_list(data)
    s = s.replace(" ", "").replace("**", "^")
    if not s:
        raise InvalidInput("empty polynomial")
    terms: dict[int, Fraction] = {}
    var = None
    pos = 0
    while pos < len(s):
        m = _TERM.match(s, pos)
        if m is None or m.end() == pos:
            raise InvalidInput(f"cannot parse polynomial at {s[pos:]!r}")
        sign, num, star, letter, exp = m.groups()
        if pos > 0 and sign is None:
            raise InvalidInput(f"missing operator before {s[pos:]!r}")
        if num is None and letter is None:
            raise InvalidInput(f"dangling sign in {text!r}")
        if star and (num is None or letter is None):
            raise InvalidInput(f"misplaced '*' in {text!r}")
        if exp is not None and letter is None:
            raise InvalidInput(f"exponent without variable in {text!r}")
        if letter is not None:
            if var is None:
                var = letter
            elif letter != var:
                raise InvalidInput("polynomial must use a single variable")
        coef = Fraction(num) if num is not None else Fraction(1)
        if sign == "-":
            coef = -coef
        deg = 0 if letter is None else (int(exp) if exp is not None else 1)
        terms[deg] = terms.get(deg, Fraction(0)) + coef
        pos = m.end()
    n = max(terms) if terms else 0
    return make_poly([terms.get(k, 0) for k in range(n + 1)])


def _from_list(data) -> RatPolynomial:
    if not isinstance(data, (list, tuple)):
        raise InvalidInput("polynomial JSON must be an array")
    out = []
    for c in data:
        if isinstance(c, bool) or not isinstance(c, (str, int)):
            raise InvalidInput("coefficients must be decimal strings or integers")
        out.append(_frac(c))
    return make_poly(out)


def parse_int_polynomial(text) -> IntPolynomial:
    p = parse_polynomial(text)
    if not isinstance(p, IntPolynomial):
        raise InvalidInput("integer coefficients required")
    return p
