"""Eigenvalue spectra of endomorphisms of simple abelian varieties.

A spectrum is the multiset of the 2g eigenvalues rho_1..rho_g, conj(rho_1)..
conj(rho_g) of the rational representation.  It is stored as irreducible
rational blocks (polynomial, multiplicity) with sum of deg * mult = 2g, which
makes closure under complex conjugation automatic.

Field endomorphisms (End_Q(X) a field of degree e, f of degree l, m = e/l):
every root of the minimal polynomial of f has multiplicity m * 2g / e.

Quaternion endomorphisms (center of degree e): with t1, t2 the roots of the
reduced characteristic polynomial X^2 - T X + N, each root of the minimal
polynomial of t1 and of t2 has multiplicity m * g / (2e), where l * m = 2e.
Given a concrete element this is N_{center/Q}(X^2 - T X + N)^(g/e).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from ..errors import InvalidDescriptor, InvalidInput
from ..exact.factor import factor_over_Q, is_irreducible
from ..exact.poly import IntPolynomial, RatPolynomial, parse_polynomial

MULTIPLICATION_TYPES = (
    "trivial",
    "real",
    "complex",
    "tot. def. quaternion",
    "tot. indef. quaternion",
    "second kind",
)


@dataclass(frozen=True)
class Block:
    poly: IntPolynomial  # irreducible, primitive, positive leading coefficient
    multiplicity: int

    def to_json(self) -> dict:
        return {"poly": self.poly.to_json(), "multiplicity": self.multiplicity}


def _normalize(poly: RatPolynomial) -> IntPolynomial:
    return poly.positive_primitive()


def merge_blocks(pairs) -> tuple:
    """Factor each (poly, mult) over Q and merge equal irreducible factors."""
    acc: dict = {}
    for poly, mult in pairs:
        poly = parse_polynomial(poly)
        if poly.degree < 1:
            if poly.is_zero():
                raise InvalidInput("zero polynomial in a spectrum")
            continue
        for f, e in factor_over_Q(poly):
            f = _normalize(f)
            acc[f.coeffs] = acc.get(f.coeffs, 0) + e * mult
    return tuple(Block(IntPolynomial(list(c)), m) for c, m in sorted(acc.items(), key=lambda t: (len(t[0]), t[0])))


@dataclass(frozen=True)
class Spectrum:
    """2g eigenvalues of the rational representation as irreducible blocks."""

    g: int
    blocks: tuple
    source: str = ""
    notes: tuple = ()

    def __post_init__(self):
        if self.g < 1:
            raise InvalidInput("dimension g must be positive")
        total = sum(b.poly.degree * b.multiplicity for b in self.blocks)
        if total != 2 * self.g:
            raise InvalidDescriptor(f"spectrum has {total} eigenvalues, expected 2g = {2 * self.g}")
        for b in self.blocks:
            if b.multiplicity < 1:
                raise InvalidInput("block multiplicities must be positive")
            if b.poly(0) == 0:
                raise InvalidInput("zero is not allowed as an eigenvalue")

    @classmethod
    def from_polynomials(cls, g: int, pairs, source: str = "", notes=()) -> "Spectrum":
        return cls(g, merge_blocks(pairs), source, tuple(notes))

    @classmethod
    def from_charpoly(cls, poly, source: str = "charpoly") -> "Spectrum":
        """Spectrum whose 2g eigenvalues are the roots of a degree-2g polynomial."""
        poly = parse_polynomial(poly)
        if poly.degree % 2:
            raise InvalidDescriptor("a rational representation has even degree")
        return cls.from_polynomials(poly.degree // 2, [(poly, 1)], source)

    def charpoly(self) -> RatPolynomial:
        out = IntPolynomial([1])
        for b in self.blocks:
            out = out * b.poly**b.multiplicity
        return out

    def is_exact_integral(self) -> bool:
        return all(b.poly.lc == 1 for b in self.blocks)

    def inverse(self) -> "Spectrum":
        """Spectrum of the inverse map: every eigenvalue replaced by its reciprocal."""
        return Spectrum.from_polynomials(
            self.g, [(b.poly.reverse(), b.multiplicity) for b in self.blocks], self.source + " (inverse)"
        )

    def to_json(self) -> dict:
        return {
            "g": self.g,
            "blocks": [b.to_json() for b in self.blocks],
            "source": self.source,
            "notes": list(self.notes),
        }

    @classmethod
    def from_json(cls, d: dict) -> "Spectrum":
        if "blocks" not in d or "g" not in d:
            raise InvalidInput("spectrum JSON needs 'g' and 'blocks'")
        pairs = [(parse_polynomial(b["poly"]), int(b.get("multiplicity", 1))) for b in d["blocks"]]
        return cls.from_polynomials(int(d["g"]), pairs, d.get("source", ""), d.get("notes", ()))


# -- descriptors ----------------------------------------------------------------------
@dataclass
class EndoDescriptor:
    """Endomorphism data: a field element or a quaternion element.

    Field kind: ``minpoly`` of f and parameters l, m, e, g.
    Quaternion kind, concrete: ``algebra`` and ``element`` with g.
    Quaternion kind, parametric: ``minpoly`` of t1 (and optionally
    ``minpoly2`` of t2) with l, m, e, g.
    """

    kind: str
    g: int
    minpoly: RatPolynomial | None = None
    minpoly2: RatPolynomial | None = None
    l: int | None = None
    m: int | None = None
    e: int | None = None
    algebra: object = None
    element: object = None
    multiplication: str | None = None
    field_type: str | None = None
    notes: list = field(default_factory=list)

    def to_json(self) -> dict:
        d = {"kind": self.kind, "g": self.g}
        if self.minpoly is not None:
            d["minpoly"] = self.minpoly.to_json()
        if self.minpoly2 is not None:
            d["minpoly2"] = self.minpoly2.to_json()
        for k in ("l", "m", "e", "multiplication", "field_type"):
            v = getattr(self, k)
            if v is not None:
                d[k] = v
        if self.algebra is not None:
            d["algebra"] = algebra_to_json(self.algebra)
            d["element"] = [c.to_json() for c in self.element.coords()]
        return d

    @classmethod
    def from_json(cls, d: dict) -> "EndoDescriptor":
        kind = d.get("kind")
        if kind not in ("field", "quaternion"):
            raise InvalidDescriptor("descriptor kind must be 'field' or 'quaternion'")
        g = d.get("g")
        if not isinstance(g, int) or g < 1:
            raise InvalidDescriptor("descriptor needs a positive integer g")
        desc = cls(kind=kind, g=g)
        if "minpoly" in d:
            desc.minpoly = parse_polynomial(d["minpoly"])
        if "minpoly2" in d:
            desc.minpoly2 = parse_polynomial(d["minpoly2"])
        for k in ("l", "m", "e"):
            if k in d:
                desc.__setattr__(k, int(d[k]))
        desc.multiplication = d.get("multiplication")
        desc.field_type = d.get("field_type")
        if "algebra" in d:
            desc.algebra = algebra_from_json(d["algebra"])
            desc.element = desc.algebra(*[desc.algebra.center(_coerce_coord(c)) for c in d["element"]])
        return desc


def _coerce_coord(c):
    if isinstance(c, dict):
        return (c["u"], c["v"])
    return c


def algebra_to_json(B) -> dict:
    from ..quaternion import QuadraticExtension

    C = B.center
    if isinstance(C, QuadraticExtension):
        return {
            "center": C.base.defining.to_json(),
            "center_var": C.base.var,
            "extension_D": C.D.to_json(),
            "a": B.a.to_json(),
            "b": B.b.to_json(),
        }
    return {"center": C.defining.to_json(), "center_var": C.var, "a": B.a.to_json(), "b": B.b.to_json()}


def algebra_from_json(d: dict):
    from ..number_field import NumberField
    from ..quaternion import QuadraticExtension, QuaternionAlgebra

    F = NumberField(parse_polynomial(d["center"]), var=d.get("center_var", "y"))
    if "extension_D" in d:
        L = QuadraticExtension(F, F(d["extension_D"]))
        return QuaternionAlgebra(L, L(_coerce_coord(d["a"])), L(_coerce_coord(d["b"])))
    return QuaternionAlgebra(F, F(d["a"]), F(d["b"]))


def field_descriptor(minpoly, g: int, m: int = 1, e: int | None = None, multiplication=None, field_type=None):
    P = parse_polynomial(minpoly)
    l = P.degree
    return EndoDescriptor(
        kind="field", g=g, minpoly=P, l=l, m=m, e=e if e is not None else l * m,
        multiplication=multiplication, field_type=field_type,
    )


def quaternion_descriptor(algebra, element, g: int, multiplication=None) -> EndoDescriptor:
    return EndoDescriptor(
        kind="quaternion", g=g, algebra=algebra, element=element, e=algebra.center.degree,
        multiplication=multiplication,
    )


def _check_positive(name, v):
    if not isinstance(v, int) or v < 1:
        raise InvalidDescriptor(f"parameter {name} must be a positive integer, got {v!r}")


def spectrum_from_field_endo(d: EndoDescriptor) -> Spectrum:
    """Each root of the minimal polynomial of f with multiplicity m * 2g / e."""
    if d.kind != "field":
        raise InvalidDescriptor("expected a field descriptor")
    if d.minpoly is None:
        raise InvalidDescriptor("field descriptor needs the minimal polynomial")
    P = d.minpoly
    l = d.l if d.l is not None else P.degree
    m = d.m if d.m is not None else 1
    e = d.e if d.e is not None else l * m
    for name, v in (("l", l), ("m", m), ("e", e), ("g", d.g)):
        _check_positive(name, v)
    if l != P.degree:
        raise InvalidDescriptor(f"l = {l} differs from the degree {P.degree} of the minimal polynomial")
    if not is_irreducible(P):
        raise InvalidDescriptor("minimal polynomial is reducible")
    if l * m != e:
        raise InvalidDescriptor(f"l * m = {l * m} but e = {e}")
    if (2 * d.g) % e:
        raise InvalidDescriptor(f"e = {e} does not divide 2g = {2 * d.g}")
    mult = m * 2 * d.g // e
    return Spectrum.from_polynomials(d.g, [(P, mult)], source=f"field endomorphism (l={l}, m={m}, e={e})")


def spectrum_from_quaternion_endo(d: EndoDescriptor) -> Spectrum:
    """Spectrum of a quaternion endomorphism; see the module docstring for the multiplicity rule."""
    if d.kind != "quaternion":
        raise InvalidDescriptor("expected a quaternion descriptor")
    _check_positive("g", d.g)
    if d.element is not None:
        from ..quaternion import absolute_reduced_charpoly

        e = d.algebra.center.degree
        if d.e is not None and d.e != e:
            raise InvalidDescriptor(f"e = {d.e} differs from the center degree {e}")
        if d.g % e:
            raise InvalidDescriptor(f"center degree e = {e} does not divide g = {d.g}")
        R = absolute_reduced_charpoly(d.element)
        return Spectrum.from_polynomials(d.g, [(R, d.g // e)], source=f"quaternion element (e={e})")
    if d.minpoly is None:
        raise InvalidDescriptor("quaternion descriptor needs an element or the minimal polynomial of t1")
    Q1 = d.minpoly
    Q2 = d.minpoly2 if d.minpoly2 is not None else Q1
    l = d.l if d.l is not None else Q1.degree
    m, e = d.m, d.e
    for name, v in (("l", l), ("m", m), ("e", e)):
        _check_positive(name, v)
    if Q1.degree != l or Q2.degree != l:
        raise InvalidDescriptor("l must equal the degree of the minimal polynomials of t1 and t2")
    if l * m != 2 * e:
        raise InvalidDescriptor(f"l * m = {l * m} but 2e = {2 * e}")
    if (m * d.g) % (2 * e):
        raise InvalidDescriptor(f"multiplicity m*g/(2e) = {Fraction(m * d.g, 2 * e)} is not an integer")
    mult = m * d.g // (2 * e)
    notes = []
    if _normalize(Q1) != _normalize(Q2):
        notes.append("t1 and t2 have different minimal polynomials over Q")
    return Spectrum.from_polynomials(
        d.g, [(Q1, mult), (Q2, mult)], source=f"quaternion endomorphism (l={l}, m={m}, e={e})", notes=notes
    )


def spectrum_from_descriptor(d: EndoDescriptor) -> Spectrum:
    if d.kind == "field":
        return spectrum_from_field_endo(d)
    if d.kind == "quaternion":
        return spectrum_from_quaternion_endo(d)
    raise InvalidDescriptor(f"unknown descriptor kind {d.kind!r}")
