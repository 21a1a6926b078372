from fractions import Fraction

import mpmath
import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from salemdyn.errors import EndpointRoot, Indeterminate, InvalidInput, NotSquarefree, ZeroElement
from salemdyn.exact import (
    FiniteField,
    IntPolynomial,
    RatPolynomial,
    certified_roots,
    ff_is_square,
    is_squarefree_integer,
    parse_polynomial,
    poly_resultant,
    real_root_count,
    sturm_count,
)
from salemdyn.exact.linalg import det_fraction, exterior_power, sylvester_matrix
from salemdyn.exact.roots import RealAlgebraic

x = sympy.Symbol("x")


def to_sympy(P: RatPolynomial):
    return sum(sympy.Rational(c.numerator, c.denominator) * x**k for k, c in enumerate(P.coeffs))


int_polys = st.lists(st.integers(-6, 6), min_size=2, max_size=7).filter(lambda c: c[-1] != 0).map(IntPolynomial)


# -- parsing and representation --------------------------------------------------------
def test_parse_human_and_json_agree():
    a = parse_polynomial("x^4-x^3-x^2-x+1")
    b = parse_polynomial('["1","-1","-1","-1","1"]')
    assert a == b
    assert a.coeffs == (1, -1, -1, -1, 1)
    assert a.degree == 4
    assert isinstance(a, IntPolynomial)


def test_parse_rational_coefficients():
    P = parse_polynomial("1/2x^2-3")
    assert not isinstance(P, IntPolynomial)
    assert P.coeffs == (Fraction(-3), 0, Fraction(1, 2))


@pytest.mark.parametrize("bad", ["", "x^2+y", "x^^2", "2**", "+"])
def test_parse_rejects_garbage(bad):
    with pytest.raises(InvalidInput):
        parse_polynomial(bad)


def test_zero_polynomial_has_no_leading_coefficient_issue():
    Z = IntPolynomial([0, 0])
    assert Z.is_zero()
    assert Z.coeffs == ()


# -- resultants ------------------------------------------------------------------------------
def test_resultant_examples():
    assert poly_resultant(parse_polynomial("x-2"), parse_polynomial("x-3")) == -1
    assert poly_resultant(parse_polynomial("x^2-2"), parse_polynomial("x^2-3")) == 1
    P = parse_polynomial("x^3-5x+1")
    assert poly_resultant(P, P) == 0


def test_resultant_rejects_zero():
    with pytest.raises(InvalidInput):
        poly_resultant(IntPolynomial([]), parse_polynomial("x"))


@given(int_polys, int_polys)
@settings(max_examples=100)
def test_resultant_matches_sylvester_determinant(P, Q):
    assert poly_resultant(P, Q) == det_fraction(sylvester_matrix(P, Q))


def test_resultant_with_vanishing_constant_term():
    # Res(x+1, x^3) = (-1)^3; sympy 1.14 returns +1 here, so it is not used as an oracle
    P, Q = IntPolynomial([1, 1]), IntPolynomial([0, 0, 0, 1])
    assert poly_resultant(P, Q) == -1
    assert det_fraction(sylvester_matrix(P, Q)) == -1


@given(int_polys, int_polys)
@settings(max_examples=100)
def test_resultant_sign_law_against_root_products(P, Q):
    """Res(P,Q) = lc(P)^deg Q prod Q(alpha), and Res(Q,P) = (-1)^(mn) Res(P,Q)."""
    r = poly_resultant(P, Q)
    assert poly_resultant(Q, P) == (-1) ** (P.degree * Q.degree) * r
    with mpmath.workprec(200):
        roots = mpmath.polyroots([int(c) for c in reversed(P.coeffs)], maxsteps=400, extraprec=400)
        val = mpmath.mpf(P.lc) ** Q.degree
        for a in roots:
            val *= mpmath.polyval([int(c) for c in reversed(Q.coeffs)], a)
        assert abs(val - r) <= mpmath.mpf(10) ** -30 * max(1, abs(r))


# -- Sturm ----------------------------------------------------------------------------------
def test_sturm_examples():
    assert sturm_count(parse_polynomial("x^2-2"), 0, 2) == 1
    assert sturm_count(parse_polynomial("y^2-y-3"), -2, 2) == 1
    assert sturm_count(parse_polynomial("x^2+1"), -2, 2) == 0


def test_sturm_errors():
    with pytest.raises(EndpointRoot):
        sturm_count(parse_polynomial("x^2-4"), 0, 2)
    with pytest.raises(NotSquarefree):
        sturm_count(parse_polynomial("x^2-2x+1"), 0, 2)


@given(int_polys)
@settings(max_examples=100)
def test_real_root_count_matches_sympy(P):
    sp = sympy.Poly(to_sympy(P), x)
    if sp.is_sqf:
        assert real_root_count(P) == sp.count_roots()


# -- squarefree integers ------------------------------------------------------------------
@pytest.mark.parametrize("n,expected", [(523, True), (12, False), (1, True), (-507, False), (-48, False), (13, True)])
def test_squarefree_integer(n, expected):
    assert is_squarefree_integer(n) is expected


def test_squarefree_integer_refuses_beyond_bound():
    big = (10**9 + 7) * (10**9 + 9) * (10**9 + 21)
    with pytest.raises(Indeterminate):
        is_squarefree_integer(big, bound=1000)


@given(st.integers(1, 10**6))
def test_squarefree_integer_matches_sympy(n):
    assert is_squarefree_integer(n) == all(e == 1 for e in sympy.factorint(n).values())


# -- finite fields -------------------------------------------------------------------------
def test_ff_square_examples():
    F5 = FiniteField(5)
    assert ff_is_square(F5(4))
    assert not ff_is_square(F5(3))
    F25 = FiniteField(5, [2, 0, 1])  # t^2 - 3
    assert ff_is_square(F25(-1))
    with pytest.raises(ZeroElement):
        ff_is_square(F5(0))


@pytest.mark.parametrize("p", [3, 5, 7, 11, 13])
def test_ff_square_exhaustive(p):
    for F in (FiniteField(p), FiniteField.quadratic(p)):
        squares = {(a * a).value for a in F.elements() if not a.is_zero()}
        for a in F.elements():
            if not a.is_zero():
                assert ff_is_square(a) == (a.value in squares)


def test_quadratic_field_uses_least_nonresidue():
    assert FiniteField.quadratic(5).modulus == (3, 0, 1)  # t^2 - 2
    assert FiniteField.quadratic(7).modulus == (4, 0, 1)  # t^2 - 3
    with pytest.raises(InvalidInput):
        FiniteField.quadratic(5, 4)


def test_field_arithmetic_inverse():
    F = FiniteField.quadratic(7)
    for a in F.elements():
        if not a.is_zero():
            assert a * a.inverse() == 1


# -- certified roots and real algebraic numbers ------------------------------------------------
def test_certified_roots_contain_true_roots():
    P = parse_polynomial("x^4-x^3-x^2-x+1")
    disks = certified_roots(P, 200)
    with mpmath.workprec(200):
        for c, r in zip(disks.centers, disks.radii):
            assert abs(mpmath.polyval([1, -1, -1, -1, 1], c)) < mpmath.mpf(10) ** -40
            assert r < mpmath.mpf(10) ** -40


def test_real_algebraic_ordering_and_json():
    roots = RealAlgebraic.all_roots(parse_polynomial("x^2-2"))
    assert len(roots) == 2
    assert roots[0].compare_rational(0) < 0 < roots[1].compare_rational(0)
    back = RealAlgebraic.from_json(roots[1].to_json())
    assert back.poly == roots[1].poly
    assert back.decimal(20).startswith("1.4142135623730950488")


def test_exterior_power_of_identity_and_det():
    A = [[2, 1, 0], [0, 1, 3], [1, 0, 1]]
    top = exterior_power(A, 3)
    assert top == [[int(det_fraction(A))]]
    assert exterior_power(A, 1) == A
