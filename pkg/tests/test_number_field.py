import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from conftest import LEHMER, SALEM4
from salemdyn.errors import NotIrreducible, Unsupported, UnsupportedResidueChar, WorkBoundExceeded
from salemdyn.exact import IntPolynomial, parse_polynomial
from salemdyn.exact.factor import is_irreducible
from salemdyn.exact.finite_field import is_irreducible_mod_p
from salemdyn.exact.integers import is_squarefree_integer
from salemdyn.number_field import (
    NumberField,
    PowerOrder,
    element_norm,
    element_trace,
    embedding_signature,
    field_kind,
    inert_by_factorization,
    is_prime_ideal_pO,
    min_poly_over_Q,
    power_basis_discriminant,
    prime_decomposition,
    quadratic_splitting,
    zero_divisor_witness,
)


def test_norm_of_fundamental_unit():
    F = NumberField("y^2-13", var="y")
    assert element_norm(F("3/2+1/2y")) == -1


def test_norm_of_generator_over_center_and_over_K():
    F = NumberField("y^2-13", var="y")
    a = F("-2-2y")
    assert element_norm(a) == -48
    # the same number inside the quartic field, where sqrt13 = 2(g + 1/g) - 1
    K = NumberField(SALEM4)
    g = K.gen()
    assert g.inverse() == K("-x^3+x^2+x+1")
    s13 = 2 * (g + g.inverse()) - 1
    assert s13 * s13 == K(13)
    aK = K(-2) - 2 * s13
    assert element_norm(aK) == 2304 == element_norm(a) ** 2


def test_norm_of_one_and_rationals():
    K = NumberField(SALEM4)
    assert element_norm(K(1)) == 1
    assert element_norm(K(Fraction(3, 2))) == Fraction(81, 16)


def test_min_poly_examples():
    K = NumberField(SALEM4)
    g = K.gen()
    assert min_poly_over_Q(g) == K.defining
    assert min_poly_over_Q(g + g.inverse()) == parse_polynomial("y^2-y-3")
    assert min_poly_over_Q(K(2)) == parse_polynomial("x-2")


@pytest.mark.parametrize("poly,disc", [(SALEM4, -507), ("x^2-x-1", 5), ("x^2-13", 52)])
def test_power_basis_discriminant(poly, disc):
    assert power_basis_discriminant(poly) == disc


def test_discriminant_matches_sympy():
    x = sympy.Symbol("x")
    for poly in (SALEM4, LEHMER, "x^3-5x+1", "x^6+x^4+x^3+2x^2+1"):
        P = parse_polynomial(poly)
        expr = sum(int(c) * x**k for k, c in enumerate(P.coeffs))
        assert power_basis_discriminant(P) == sympy.discriminant(expr, x)


def test_salem_quartic_discriminant_is_not_squarefree():
    assert -507 == -3 * 13**2
    assert not is_squarefree_integer(power_basis_discriminant(SALEM4))
    assert PowerOrder(NumberField(SALEM4)).warnings() == ["MaybeNonMaximal"]


@pytest.mark.parametrize(
    "poly,sig", [(SALEM4, (2, 1)), ("x^2-13", (2, 0)), ("x^2+1", (0, 1)), (LEHMER, (2, 4))]
)
def test_embedding_signature(poly, sig):
    r1, r2 = embedding_signature(poly)
    assert (r1, r2) == sig
    assert r1 + 2 * r2 == parse_polynomial(poly).degree


@pytest.mark.parametrize(
    "poly,kind",
    [
        ("y^2-y-3", "totally_real"),
        ("x^2+1", "cm"),
        (SALEM4, "mixed"),
        ("x^4+1", "cm"),
        ("x^4-2x^2+9", "cm"),
        ("x^3-2", "mixed"),
    ],
)
def test_field_kind(poly, kind):
    assert field_kind(poly) == kind


def test_field_kind_totally_imaginary_non_cm():
    # x^4 + x + 1 has no real roots; its field has no totally real quadratic subfield
    assert embedding_signature("x^4+x+1") == (0, 2)
    assert field_kind("x^4+x+1") == "other"


@pytest.mark.parametrize("D,p,kind", [(13, 5, "inert"), (13, 13, "ramified"), (13, 3, "split")])
def test_quadratic_splitting(D, p, kind):
    s = quadratic_splitting(D, p)
    assert s.kind == kind
    assert sum(e * f for e, f in s.primes) == 2
    if kind == "inert":
        assert s.primes == ((1, 2),)


def test_quadratic_splitting_rejects_two():
    with pytest.raises(UnsupportedResidueChar):
        quadratic_splitting(13, 2)


@given(st.sampled_from([2, 3, 5, 6, 7, 10, 13, -1, -2, -3, -5, -7, -13]), st.sampled_from([3, 5, 7, 11, 13, 17, 19]))
def test_quadratic_splitting_degree_sum(D, p):
    s = quadratic_splitting(D, p)
    assert sum(e * f for e, f in s.primes) == 2
    K = NumberField(IntPolynomial([-D, 0, 1]))
    if (4 * D) % p:
        _, st_ = prime_decomposition(K, p)
        assert st_.kind == s.kind


def test_salem_order_prime_at_5_and_oracle():
    order = PowerOrder(NumberField(SALEM4))
    assert is_prime_ideal_pO(order, 5)
    assert inert_by_factorization(SALEM4, 5)


def test_gaussian_primes():
    order = PowerOrder(NumberField("x^2+1"))
    assert not is_prime_ideal_pO(order, 5)
    u, v = zero_divisor_witness(order, 5)
    assert order.multiply(u, v) == [0, 0] or all(c % 5 == 0 for c in order.multiply(u, v))
    assert is_prime_ideal_pO(order, 3)


def test_work_bound():
    order = PowerOrder(NumberField(SALEM4))
    with pytest.raises(WorkBoundExceeded):
        is_prime_ideal_pO(order, 11)


def test_structure_constants_follow_defining_relation():
    order = PowerOrder(NumberField(SALEM4))
    L = order.structure_constants
    # g * g^3 = g^4 = g^3 + g^2 + g - 1
    assert L[1][3] == [-1, 1, 1, 1]
    assert L[3][3] == order.multiply([0, 0, 0, 1], [0, 0, 0, 1])


def test_primality_cross_oracle_on_random_pairs():
    rng = random.Random(0)
    checked = 0
    while checked < 20:
        deg = rng.choice([2, 3, 4])
        coeffs = [rng.randint(-4, 4) for _ in range(deg)] + [1]
        if coeffs[0] == 0:
            continue
        P = IntPolynomial(coeffs)
        if not is_irreducible(P) or not is_squarefree_integer(power_basis_discriminant(P)):
            continue
        p = rng.choice([3, 5, 7] if deg < 4 else [3, 5])
        order = PowerOrder(NumberField(P))
        assert is_prime_ideal_pO(order, p) == is_irreducible_mod_p(P, p), (P, p)
        checked += 1


def test_field_construction_checks():
    with pytest.raises(NotIrreducible):
        NumberField("x^2-4")
    with pytest.raises(Unsupported):
        NumberField(LEHMER)
    assert NumberField(LEHMER, max_degree=10).degree == 10


fields = st.sampled_from(["y^2-13", SALEM4, "x^3-5x+1", "x^4+1"])
coords = st.lists(st.fractions(min_value=-5, max_value=5, max_denominator=4), min_size=4, max_size=4)


@given(fields, coords, coords)
def test_norm_multiplicative_and_trace_additive(poly, a, b):
    K = NumberField(poly)
    x, y = K(a[: K.degree]), K(b[: K.degree])
    assert element_norm(x * y) == element_norm(x) * element_norm(y)
    assert element_trace(x + y) == element_trace(x) + element_trace(y)


def test_structure_constants_match_reference_product_forms():
    """The four coordinate forms of u*v used by the published brute-force search."""
    u = sympy.symbols("u1:5")
    v = sympy.symbols("v1:5")
    u1, u2, u3, u4 = u
    v1, v2, v3, v4 = v
    reference = [
        u1 * v1 - u4 * v2 - u3 * v3 - u4 * v3 - u2 * v4 - u3 * v4 - 2 * u4 * v4,
        u2 * v1 + u1 * v2 + u4 * v2 + u3 * v3 + u2 * v4 + u4 * v4,
        u3 * v1 + u2 * v2 + u4 * v2 + u1 * v3 + u3 * v3 + 2 * u4 * v3 + u2 * v4 + 2 * u3 * v4 + 2 * u4 * v4,
        u4 * v1 + u3 * v2 + u4 * v2 + u2 * v3 + u3 * v3 + 2 * u4 * v3 + u1 * v4 + u2 * v4 + 2 * u3 * v4 + 4 * u4 * v4,
    ]
    L = PowerOrder(NumberField(SALEM4)).structure_constants
    for k in range(4):
        ours = sum(u[i] * v[j] * L[i][j][k] for i in range(4) for j in range(4))
        assert sympy.expand(ours - reference[k]) == 0
