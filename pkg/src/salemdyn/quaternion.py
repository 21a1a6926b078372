"""Quaternion algebras (a, b / F), ramification certificates and construction certificates.

The construction follows the chain: Salem polynomial P -> trace polynomial
T -> trace field F = Q[y]/(T) -> generator a = (gamma - conj(gamma))^2 =
y^2 - 4 of K = F(sqrt a) = Q(gamma) -> smallest odd prime p at which a is a
non-square unit in some residue field of F (so B = (a, p / F) ramifies there
and is a division algebra) -> for the second-kind variant, the smallest d
with -d a square in that residue field and not a square in F.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .errors import (
    InvalidInput,
    NoPrimeFound,
    NotACircleRoot,
    NotAFieldGenerator,
    NotFound,
    NotSalem,
    NotTotallyReal,
    Unsupported,
    UnsupportedResidueChar,
)
from .exact.finite_field import (
    FiniteField,
    FiniteFieldElement,
    euler_witness,
    ff_is_square,
    fp_from_poly,
)
from .exact.integers import is_prime, odd_primes, sqrt_mod_prime
from .exact.poly import (
    IntPolynomial,
    RatPolynomial,
    graeffe,
    interpolate,
    make_poly,
    parse_polynomial,
    poly_discriminant,
    squarefree_part,
)
from .exact.roots import RealAlgebraic
from .number_field import (
    MAX_FIELD_DEGREE,
    FieldElement,
    NumberField,
    PrimeAbove,
    SplittingType,
    element_norm,
    is_square,
    prime_decomposition,
)
from .salem import classify_root_moduli, is_salem, salem_value, trace_polynomial


# -- quadratic extension of a number field (centers of second-kind algebras) ----
class QuadraticExtension:
    """L = F(sqrt D) for a non-square D in the number field F; elements u + v sqrt(D)."""

    def __init__(self, base: NumberField, D: FieldElement):
        if D.parent != base:
            raise InvalidInput("D must lie in the base field")
        self.base = base
        self.D = D

    @property
    def degree(self) -> int:
        return 2 * self.base.degree

    def __eq__(self, other):
        return isinstance(other, QuadraticExtension) and self.base == other.base and self.D == other.D

    def __hash__(self):
        return hash((self.base, self.D))

    def __call__(self, value) -> "ExtElement":
        if isinstance(value, ExtElement):
            return value
        if isinstance(value, tuple) and len(value) == 2:
            return ExtElement(self, self.base(value[0]), self.base(value[1]))
        return ExtElement(self, self.base(value), self.base.zero())

    def sqrt_D(self) -> "ExtElement":
        return ExtElement(self, self.base.zero(), self.base.one())

    def one(self):
        return self(1)

    def zero(self):
        return self(0)

    def __repr__(self):
        return f"QuadraticExtension({self.base!r}, sqrt({self.D.repr}))"


class ExtElement:
    __slots__ = ("parent", "u", "v")

    def __init__(self, parent: QuadraticExtension, u: FieldElement, v: FieldElement):
        self.parent, self.u, self.v = parent, u, v

    def _c(self, o):
        if isinstance(o, ExtElement):
            return o
        return self.parent(o)

    def __add__(self, o):
        o = self._c(o)
        return ExtElement(self.parent, self.u + o.u, self.v + o.v)

    __radd__ = __add__

    def __neg__(self):
        return ExtElement(self.parent, -self.u, -self.v)

    def __sub__(self, o):
        return self + (-self._c(o))

    def __rsub__(self, o):
        return self._c(o) - self

    def __mul__(self, o):
        o = self._c(o)
        D = self.parent.D
        return ExtElement(self.parent, self.u * o.u + D * self.v * o.v, self.u * o.v + self.v * o.u)

    __rmul__ = __mul__

    def __eq__(self, o):
        if not isinstance(o, ExtElement):
            try:
                o = self._c(o)
            except Exception:
                return NotImplemented
        return self.u == o.u and self.v == o.v

    def __hash__(self):
        return hash((self.u, self.v))

    def is_zero(self) -> bool:
        return self.u.is_zero() and self.v.is_zero()

    def relative_norm(self) -> FieldElement:
        return self.u * self.u - self.parent.D * self.v * self.v

    def to_json(self) -> dict:
        return {"u": self.u.to_json(), "v": self.v.to_json()}


def center_norm(x) -> Fraction:
    """Absolute norm to Q of an element of a NumberField or QuadraticExtension."""
    if isinstance(x, ExtElement):
        return element_norm(x.relative_norm())
    return element_norm(x)


# -- quaternion algebras -------------------------------------------------------------
class QuaternionAlgebra:
    """(a, b / center): basis 1, i, j, ij with i^2 = a, j^2 = b, ij = -ji."""

    def __init__(self, center, a, b):
        self.center = center
        self.a = center(a)
        self.b = center(b)
        if self.a.is_zero() or self.b.is_zero():
            raise InvalidInput("a and b must be nonzero")

    def __call__(self, w=0, x=0, y=0, z=0) -> "QuaternionElement":
        c = self.center
        return QuaternionElement(self, c(w), c(x), c(y), c(z))

    def __eq__(self, other):
        return (
            isinstance(other, QuaternionAlgebra)
            and self.center == other.center
            and self.a == other.a
            and self.b == other.b
        )

    def __hash__(self):
        return hash((self.center, self.a, self.b))

    @property
    def center_degree(self) -> int:
        return self.center.degree

    def i(self):
        return self(0, 1, 0, 0)

    def j(self):
        return self(0, 0, 1, 0)

    def k(self):
        return self(0, 0, 0, 1)

    def __repr__(self):
        return f"QuaternionAlgebra({self.a!r}, {self.b!r})"


class QuaternionElement:
    __slots__ = ("algebra", "w", "x", "y", "z")

    def __init__(self, algebra: QuaternionAlgebra, w, x, y, z):
        self.algebra = algebra
        self.w, self.x, self.y, self.z = w, x, y, z

    def _c(self, o):
        if isinstance(o, QuaternionElement):
            return o
        return self.algebra(o)

    def __add__(self, o):
        o = self._c(o)
        return QuaternionElement(self.algebra, self.w + o.w, self.x + o.x, self.y + o.y, self.z + o.z)

    __radd__ = __add__

    def __neg__(self):
        return QuaternionElement(self.algebra, -self.w, -self.x, -self.y, -self.z)

    def __sub__(self, o):
        return self + (-self._c(o))

    def __mul__(self, o):
        o = self._c(o)
        a, b = self.algebra.a, self.algebra.b
        w1, x1, y1, z1 = self.w, self.x, self.y, self.z
        w2, x2, y2, z2 = o.w, o.x, o.y, o.z
        w = w1 * w2 + a * x1 * x2 + b * y1 * y2 - a * b * z1 * z2
        x = w1 * x2 + x1 * w2 - b * y1 * z2 + b * z1 * y2
        y = w1 * y2 + y1 * w2 + a * x1 * z2 - a * z1 * x2
        z = w1 * z2 + z1 * w2 + x1 * y2 - y1 * x2
        return QuaternionElement(self.algebra, w, x, y, z)

    def __rmul__(self, o):
        return self._c(o) * self

    def __eq__(self, o):
        if not isinstance(o, QuaternionElement):
            o = self._c(o)
        return (self.w, self.x, self.y, self.z) == (o.w, o.x, o.y, o.z)

    def __hash__(self):
        return hash((self.w, self.x, self.y, self.z))

    def conjugate(self) -> "QuaternionElement":
        return QuaternionElement(self.algebra, self.w, -self.x, -self.y, -self.z)

    def coords(self) -> tuple:
        return (self.w, self.x, self.y, self.z)

    def __repr__(self):
        return f"QuaternionElement({self.w!r}, {self.x!r}, {self.y!r}, {self.z!r})"


def reduced_trace(q: QuaternionElement):
    return q.w + q.w


def reduced_norm(q: QuaternionElement):
    a, b = q.algebra.a, q.algebra.b
    return q.w * q.w - a * q.x * q.x - b * q.y * q.y + a * b * q.z * q.z


def reduced_charpoly(q: QuaternionElement) -> tuple:
    """Coefficients (constant, linear, quadratic) of X^2 - T X + N over the center."""
    T = reduced_trace(q)
    N = reduced_norm(q)
    c = q.algebra.center
    return (N, -T, c.one())


def absolute_reduced_charpoly(q: QuaternionElement) -> RatPolynomial:
    """N_{center/Q}(X^2 - T X + N), a rational polynomial of degree 2 [center:Q]."""
    N, negT, _ = reduced_charpoly(q)
    e = q.algebra.center.degree
    xs = list(range(2 * e + 1))
    ys = [center_norm(negT * X0 + N + X0 * X0) for X0 in xs]
    return interpolate(xs, ys)


def definiteness(B: QuaternionAlgebra) -> str:
    """'totally_definite', 'totally_indefinite' or 'mixed' from signs at the real embeddings."""
    F = B.center
    if not isinstance(F, NumberField) or not F.is_totally_real():
        raise NotTotallyReal("definiteness needs a totally real center")
    definite_at = []
    for r in F.real_roots:
        sa, sb = B.a.sign_at(r), B.b.sign_at(r)
        definite_at.append(sa < 0 and sb < 0)
    if all(definite_at):
        return "totally_definite"
    if not any(definite_at):
        return "totally_indefinite"
    return "mixed"


# -- ramification ----------------------------------------------------------------------
@dataclass(frozen=True)
class ResidueImage:
    """A residue field GF(p)[t]/(modulus) together with an element of it."""

    p: int
    modulus: tuple
    value: tuple

    def field(self) -> FiniteField:
        return FiniteField(self.p, list(self.modulus))

    def element(self) -> FiniteFieldElement:
        return self.field()(list(self.value))

    def to_json(self) -> dict:
        return {"p": self.p, "modulus": list(self.modulus), "value": list(self.value)}

    @classmethod
    def from_json(cls, d) -> "ResidueImage":
        return cls(d["p"], tuple(d["modulus"]), tuple(d["value"]))


@dataclass(frozen=True)
class RamificationCertificate:
    p: int
    splitting: SplittingType
    prime_factor: tuple  # the factor of the center's defining polynomial mod p selecting the prime
    residue_degree: int
    residue_order: int
    a_image: ResidueImage
    witness: int  # a^((q-1)/2) as an integer mod p; p - 1 encodes -1
    norm_a: Fraction
    disc_center: int
    disc_extension: int

    def verify(self) -> bool:
        """Recompute every condition from scratch."""
        p = self.p
        if p == 2 or not is_prime(p):
            return False
        if self.norm_a.numerator % p == 0 or self.norm_a.denominator % p == 0:
            return False
        if self.disc_center % p == 0 or self.disc_extension % p == 0:
            return False
        x = self.a_image.element()
        if x.is_zero():
            return False
        w = euler_witness(x)
        return w == -1 and (p - 1) == self.witness

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "splitting": self.splitting.to_json(),
            "prime_factor": list(self.prime_factor),
            "residue_degree": self.residue_degree,
            "residue_order": self.residue_order,
            "a_image": self.a_image.to_json(),
            "euler_witness": -1 if self.witness == self.p - 1 else self.witness,
            "norm_a": str(self.norm_a),
            "disc_center": str(self.disc_center),
            "disc_extension": str(self.disc_extension),
        }

    @classmethod
    def from_json(cls, d) -> "RamificationCertificate":
        sp = SplittingType(d["splitting"]["kind"], tuple((q["e"], q["f"]) for q in d["splitting"]["primes"]))
        p = d["p"]
        w = d["euler_witness"]
        return cls(
            p=p,
            splitting=sp,
            prime_factor=tuple(d["prime_factor"]),
            residue_degree=d["residue_degree"],
            residue_order=d["residue_order"],
            a_image=ResidueImage.from_json(d["a_image"]),
            witness=p - 1 if w == -1 else w,
            norm_a=Fraction(d["norm_a"]),
            disc_center=int(d["disc_center"]),
            disc_extension=int(d["disc_extension"]),
        )


@dataclass(frozen=True)
class Split:
    p: int
    reason: str = "every residue image of a is a square"


@dataclass(frozen=True)
class Rejected:
    p: int
    reason: str


def sqrt_minpoly(a: FieldElement) -> RatPolynomial:
    """N_{F/Q}(x^2 - a): the characteristic polynomial of sqrt(a) over Q."""
    e = a.parent.degree
    xs = list(range(2 * e + 1))
    ys = [element_norm(a.parent(X0 * X0) - a) for X0 in xs]
    return interpolate(xs, ys)


def extension_discriminant(a: FieldElement) -> int:
    """Polynomial discriminant of the minimal polynomial of sqrt(a) over Q (a made integral)."""
    M = sqrt_minpoly(a)
    sq = squarefree_part(M).primitive()
    return int(poly_discriminant(sq))


def residue_image(x: FieldElement, prime: PrimeAbove, r: int | None = None) -> ResidueImage:
    """Image of x in the residue field of ``prime``.

    Degree-2 residue fields use the canonical representation GF(p)[t]/(t^2 - r)
    (r the least non-residue unless given).  Other degrees use the factor of
    the defining polynomial as modulus.
    """
    p = prime.p
    phi = list(prime.factor)
    if prime.f == 1:
        root = (-phi[0]) % p
        val = 0
        for c in reversed(fp_from_poly(x.repr, p) or [0]):
            val = (val * root + c) % p
        return ResidueImage(p, FiniteField(p).modulus, (val,))
    if prime.f == 2:
        Fq = FiniteField.quadratic(p, r)
        rr = (-Fq.modulus[0]) % p
        c0, c1 = phi[0], phi[1]
        delta = (c1 * c1 - 4 * c0) % p
        k = sqrt_mod_prime(delta * pow(rr, -1, p) % p, p)
        inv2 = pow(2, -1, p)
        y0 = Fq([(-c1) * inv2, k * inv2])
        acc = Fq(0)
        for c in reversed(fp_from_poly(x.repr, p) or [0]):
            acc = acc * y0 + c
        return ResidueImage(p, Fq.modulus, acc.value)
    Fq = FiniteField(p, phi)
    return ResidueImage(p, Fq.modulus, Fq(fp_from_poly(x.repr, p)).value)


def local_ramification_test(center: NumberField, a: FieldElement, p: int, r: int | None = None):
    """RamificationCertificate, Split or Rejected for the odd prime p."""
    if p == 2:
        raise UnsupportedResidueChar("residue characteristic 2 is not supported")
    if not is_prime(p):
        raise InvalidInput(f"{p} is not prime")
    a = center(a)
    if a.is_zero():
        raise InvalidInput("a must be nonzero")
    Na = element_norm(a)
    dF = center.polynomial_discriminant
    dK = extension_discriminant(a)
    if Na.numerator % p == 0 or Na.denominator % p == 0:
        return Rejected(p, f"p divides N(a) = {Na}")
    if dF % p == 0:
        return Rejected(p, f"p divides the discriminant {dF} of the center")
    if dK % p == 0:
        return Rejected(p, f"p divides the discriminant {dK} of center(sqrt a)")
    primes, splitting = prime_decomposition(center, p)
    for q in primes:
        img = residue_image(a, q, r)
        el = img.element()
        w = euler_witness(el)
        if w == -1:
            return RamificationCertificate(
                p=p,
                splitting=splitting,
                prime_factor=q.factor,
                residue_degree=q.f,
                residue_order=p**q.f,
                a_image=img,
                witness=p - 1,
                norm_a=Na,
                disc_center=dF,
                disc_extension=dK,
            )
    return Split(p)


def search_prime(center: NumberField, a: FieldElement, bound: int = 1000) -> tuple:
    """Smallest odd prime p <= bound with a ramification certificate for (a, p / center)."""
    a = center(a)
    if is_square(a):
        raise NotAFieldGenerator("a is a square in the center")
    for p in odd_primes(3, bound):
        res = local_ramification_test(center, a, p)
        if isinstance(res, RamificationCertificate):
            return p, res
    raise NoPrimeFound(f"no ramifying prime up to {bound}")


# -- generator from gamma -------------------------------------------------------------
@dataclass(frozen=True)
class GeneratorData:
    K: NumberField
    F: NumberField
    a: FieldElement  # in F
    y_in_K: FieldElement  # gamma + 1/gamma
    sqrt_a_in_K: FieldElement  # gamma - 1/gamma


def trace_field(P) -> NumberField:
    return NumberField(trace_polynomial(parse_polynomial(P)), var="y")


def generator_from_gamma(K: NumberField) -> GeneratorData:
    """a = (gamma - conj(gamma))^2 = y^2 - 4 in F = Q(gamma + 1/gamma)."""
    P = K.defining
    if not P.is_self_reciprocal() or P.degree % 2:
        raise NotACircleRoot("defining polynomial is not self-reciprocal of even degree")
    pat = classify_root_moduli(P)
    circle_nonreal = pat.n_on - (1 if P(1) == 0 else 0) - (1 if P(-1) == 0 else 0)
    if circle_nonreal < 2:
        raise NotACircleRoot("no non-real root on the unit circle")
    T = trace_polynomial(P)
    F = NumberField(T, var="y", check=P.degree > 2)
    y = F.gen()
    a = y * y - 4
    g = K.gen()
    y_K = g + g.inverse()
    s_K = g - g.inverse()
    # a(y) evaluated in K equals (gamma - 1/gamma)^2
    a_in_K = K(a.repr.compose(y_K.repr) % K.defining)
    if s_K * s_K != a_in_K:
        raise InvalidInput("internal check failed: (gamma - 1/gamma)^2 != a")
    for r in F.real_roots:
        if r.compare_rational(-2) > 0 and r.compare_rational(2) < 0 and a.sign_at(r) >= 0:
            raise InvalidInput("internal check failed: a not negative at a circle embedding")
    return GeneratorData(K, F, a, y_K, s_K)


def same_extension(a1: FieldElement, a2: FieldElement) -> bool:
    """True iff F(sqrt a1) = F(sqrt a2), i.e. a1/a2 is a square in F."""
    return is_square(a1 / a2)


def second_kind_d(cert: RamificationCertificate, center: NumberField, limit: int = 10**4) -> int:
    """Smallest d > 0 coprime to p with -d a residue square and not a square in the center."""
    Fq = cert.a_image.field()
    p = cert.p
    for d in range(1, limit + 1):
        if d % p == 0:
            continue
        if not ff_is_square(Fq(-d)):
            continue
        if is_square(center(-d)):
            continue
        return d
    raise NotFound(f"no suitable d up to {limit}")


# -- construction certificates ----------------------------------------------------------
VARIANTS = ("indefinite", "second_kind")


def predicted_exponents(g: int, variant: str, v: int = 1) -> list:
    """Exponents e_k with lambda_k = lambda^(e_k), k = 0..dim."""
    if variant == "indefinite":
        dim = v * g
        out = []
        for k in range(dim + 1):
            kk = min(k, dim - k)
            out.append(2 * kk if kk <= v else 2 * v)
        return out
    if variant == "second_kind":
        dim = 2 * v * g
        out = []
        for k in range(dim + 1):
            kk = min(k, dim - k)
            out.append(2 * kk if kk <= 2 * v else 4 * v)
        return out
    raise InvalidInput(f"unknown variant {variant!r}")


@dataclass
class ConstructionCertificate:
    polynomial: IntPolynomial
    degree: int
    variant: str
    v: int
    dimension: int
    abstract: bool
    salem_number: RealAlgebraic
    trace_polynomial: IntPolynomial
    generator_a: list | None  # coordinates of a in F = Q[y]/(T)
    p: int | None
    ramification: RamificationCertificate | None
    d: int | None
    exponents: list
    endomorphism_algebra: str
    order_description: str
    warnings: list = field(default_factory=list)

    def lambda_values(self, digits: int = 30) -> list:
        """Predicted dynamical degrees as algebraic numbers lambda^e (minimal data + decimals)."""
        cache = {}
        out = []
        for e in self.exponents:
            if e not in cache:
                cache[e] = power_of_salem(self.polynomial, self.salem_number, e)
            out.append(cache[e])
        return out

    def verify(self) -> bool:
        seq = self.exponents
        if seq != seq[::-1]:
            return False
        if any(2 * seq[k] < seq[k - 1] + seq[k + 1] for k in range(1, len(seq) - 1)):
            return False
        if self.dimension % self.degree:
            return False
        if self.ramification is not None and not self.ramification.verify():
            return False
        return True

    def to_json(self) -> dict:
        lam = [r.to_json() for r in self.lambda_values()]
        return {
            "polynomial": self.polynomial.to_json(),
            "degree": self.degree,
            "variant": self.variant,
            "v": self.v,
            "dimension": self.dimension,
            "abstract": self.abstract,
            "salem_number": self.salem_number.to_json(),
            "trace_polynomial": self.trace_polynomial.to_json(),
            "generator_a": self.generator_a,
            "p": self.p,
            "ramification": self.ramification.to_json() if self.ramification else None,
            "d": self.d,
            "lambda_exponents": list(self.exponents),
            "lambdas": lam,
            "endomorphism_algebra": self.endomorphism_algebra,
            "order": self.order_description,
            "warnings": list(self.warnings),
        }

    @classmethod
    def from_json(cls, d: dict) -> "ConstructionCertificate":
        return cls(
            polynomial=parse_polynomial(d["polynomial"]),
            degree=d["degree"],
            variant=d["variant"],
            v=d["v"],
            dimension=d["dimension"],
            abstract=d["abstract"],
            salem_number=RealAlgebraic.from_json(d["salem_number"]),
            trace_polynomial=parse_polynomial(d["trace_polynomial"]),
            generator_a=d["generator_a"],
            p=d["p"],
            ramification=RamificationCertificate.from_json(d["ramification"]) if d["ramification"] else None,
            d=d["d"],
            exponents=list(d["lambda_exponents"]),
            endomorphism_algebra=d["endomorphism_algebra"],
            order_description=d["order"],
            warnings=list(d.get("warnings", [])),
        )


def power_of_salem(P: RatPolynomial, lam: RealAlgebraic, e: int) -> RealAlgebraic:
    """lambda^e as a real algebraic number with its minimal polynomial."""
    import mpmath

    from .exact.factor import factor_over_Q
    from .exact.roots import real_algebraic_near

    if e == 0:
        return RealAlgebraic(make_poly([-1, 1]), 1, 1)
    Q = power_polynomial(P, e)
    with mpmath.workprec(260):
        value = lam.to_mpf(260) ** e
        for f, _ in factor_over_Q(Q):
            if f.degree == 1:
                r = -Fraction(f.coeffs[0]) / Fraction(f.coeffs[1])
                if abs(value - mpmath.mpf(r.numerator) / r.denominator) < mpmath.mpf(2) ** -200:
                    return RealAlgebraic(f, r, r)
                continue
            try:
                return real_algebraic_near(f, value, mpmath.mpf(2) ** -200)
            except Exception:
                continue
    raise InvalidInput("could not isolate the power of lambda")


def power_polynomial(P: RatPolynomial, e: int) -> RatPolynomial:
    """Monic polynomial whose roots are the e-th powers of the roots of P.

    Res_x(P(x), t - x^e) as a polynomial in t, recovered by interpolation.
    """
    from .exact.poly import poly_resultant

    if e == 1:
        return P.monic()
    n = P.degree
    xs = list(range(n + 1))
    ys = [poly_resultant(P, make_poly([t] + [0] * (e - 1) + [-1])) for t in xs]
    return interpolate(xs, ys).monic()


def build_construction_certificate(P, variant: str = "indefinite", v: int = 1, bound: int = 1000):
    """Chain trace polynomial, generator, prime search (and d) into a certificate."""
    P = parse_polynomial(P)
    variant = variant.replace("-", "_")
    if variant not in VARIANTS:
        raise InvalidInput(f"variant must be one of {VARIANTS}")
    if not isinstance(v, int) or v < 1:
        raise InvalidInput("v must be a positive integer")
    if not is_salem(P):
        raise NotSalem(f"{P} is not a Salem polynomial")
    g = P.degree
    if g > MAX_FIELD_DEGREE:
        raise Unsupported(f"Salem degree {g} exceeds the field degree cap {MAX_FIELD_DEGREE}")
    lam = salem_value(P).value
    T = trace_polynomial(P)
    exps = predicted_exponents(g, variant, v)
    dim = len(exps) - 1
    h = g
    if v > 1:
        alg = (
            f"totally indefinite quaternion algebra over a totally real field of degree {v * h // 2}"
            if variant == "indefinite"
            else f"quaternion algebra over a CM field of degree {v * h} (second kind)"
        )
        return ConstructionCertificate(
            polynomial=P, degree=g, variant=variant, v=v, dimension=dim, abstract=True,
            salem_number=lam, trace_polynomial=T, generator_a=None, p=None, ramification=None,
            d=None, exponents=exps, endomorphism_algebra=alg,
            order_description="not constructed (prediction only)",
            warnings=["abstract: number-field realization not constructed for v > 1"],
        )
    K = NumberField(P)
    gen = generator_from_gamma(K)
    p, cert = search_prime(gen.F, gen.a, bound)
    d = None
    if variant == "indefinite":
        alg = f"B = (a, {p} / F), F = Q[y]/({T.to_str('y')}), a = {gen.a.repr.to_str('y')}; totally indefinite, division"
        order = "O_K + O_K j with K = F(sqrt a) = Q(gamma)"
    else:
        d = second_kind_d(cert, gen.F)
        alg = (
            f"B2 = (a, {p} / F(sqrt(-{d}))), F = Q[y]/({T.to_str('y')}), a = {gen.a.repr.to_str('y')}; "
            "division algebra with CM center"
        )
        order = f"O_K' + O_K' j with K' = F(sqrt(-{d}), sqrt a)"
    return ConstructionCertificate(
        polynomial=P, degree=g, variant=variant, v=v, dimension=dim, abstract=False,
        salem_number=lam, trace_polynomial=T, generator_a=gen.a.to_json(), p=p, ramification=cert,
        d=d, exponents=exps, endomorphism_algebra=alg, order_description=order,
    )


def gamma_in_algebra(P) -> tuple:
    """(B, gamma) with B = (a, p / F) and gamma = y/2 + i/2, the embedded circle root.

    With sqrt(a) = gamma - 1/gamma and y = gamma + 1/gamma one has
    gamma = y/2 + sqrt(a)/2, so gamma corresponds to w = y/2, x = 1/2.
    """
    cert = build_construction_certificate(P, "indefinite")
    K = NumberField(cert.polynomial)
    gen = generator_from_gamma(K)
    B = QuaternionAlgebra(gen.F, gen.a, cert.p)
    gamma = B(gen.F.gen() * Fraction(1, 2), Fraction(1, 2), 0, 0)
    return B, gamma


def gamma_in_second_kind_algebra(P) -> tuple:
    """(B2, gamma) with B2 = (a, p / F(sqrt -d)) for the second-kind construction."""
    cert = build_construction_certificate(P, "second_kind")
    K = NumberField(cert.polynomial)
    gen = generator_from_gamma(K)
    L = QuadraticExtension(gen.F, gen.F(-cert.d))
    B2 = QuaternionAlgebra(L, L(gen.a), L(cert.p))
    gamma = B2(L(gen.F.gen() * Fraction(1, 2)), L(Fraction(1, 2)), 0, 0)
    return B2, gamma
