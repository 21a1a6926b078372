from fractions import Fraction

import mpmath
import pytest

from conftest import SALEM4
from salemdyn.dynamics import (
    EndoDescriptor,
    ModuliEngine,
    Spectrum,
    count_fixed_points,
    dynamical_degrees,
    field_descriptor,
    hyperbolicity,
    products_polynomial,
    quaternion_descriptor,
    reducibility_criterion,
    spectrum_from_descriptor,
    spectrum_from_field_endo,
    spectrum_from_quaternion_endo,
)
from salemdyn.errors import InfiniteFixedLocus, InvalidDescriptor, InvalidInput
from salemdyn.exact import parse_polynomial
from salemdyn.number_field import NumberField
from salemdyn.quaternion import QuaternionAlgebra, gamma_in_algebra

with mpmath.workdps(50):
    MU = (3 + mpmath.sqrt(5)) / 2


@pytest.fixture(autouse=True)
def high_precision():
    with mpmath.workdps(50):
        yield


def decimals(prof):
    return [mpmath.mpf(lam.decimal) for lam in prof.lambdas]


def block_map(s: Spectrum) -> dict:
    return {b.poly.coeffs: b.multiplicity for b in s.blocks}


# -- spectra from descriptors ---------------------------------------------------------------
def test_field_spectrum_real_quadratic():
    s = spectrum_from_field_endo(field_descriptor("x^2-3x+1", g=2, m=1, e=2))
    assert block_map(s) == {(1, -3, 1): 2}
    prof = dynamical_degrees(s)
    lam = decimals(prof)
    assert abs(lam[1] - MU**2) < 1e-25 and lam[2] == 1
    assert prof.compare(2, 0) == 0


def test_field_spectrum_identity_and_imaginary_quadratic():
    s = spectrum_from_field_endo(field_descriptor("x-1", g=3, m=2, e=2))
    assert block_map(s) == {(-1, 1): 6}
    s = spectrum_from_field_endo(field_descriptor("x^2+x+1", g=3, m=3, e=6))
    assert block_map(s) == {(1, 1, 1): 3}
    assert all(lam.decimal == "1.0" for lam in dynamical_degrees(s).lambdas)


@pytest.mark.parametrize(
    "kw",
    [dict(m=1, e=3), dict(m=1, e=4), dict(m=0, e=2)],
)
def test_field_spectrum_parameter_errors(kw):
    with pytest.raises(InvalidDescriptor):
        spectrum_from_field_endo(field_descriptor("x^2-3x+1", g=3, **kw))


def test_reducible_minimal_polynomial_rejected():
    with pytest.raises(InvalidDescriptor):
        spectrum_from_field_endo(field_descriptor("x^2-1", g=1, m=1, e=2))


def test_spectrum_count_checked():
    with pytest.raises(InvalidDescriptor):
        Spectrum.from_polynomials(3, [("x^2-3x+1", 2)])
    with pytest.raises(InvalidInput):
        Spectrum.from_polynomials(1, [("x^2", 1)])


def test_quaternion_gamma_spectrum():
    B, gamma = gamma_in_algebra(SALEM4)
    s = spectrum_from_descriptor(quaternion_descriptor(B, gamma, g=4))
    assert block_map(s) == {parse_polynomial(SALEM4).coeffs: 2}
    prof = dynamical_degrees(s)
    assert prof.pattern_string() == "λ0 < λ1 = λ2 = λ3 > λ4"
    assert prof.diagram == "(12)"
    assert not prof.hyperbolic


def test_quaternion_identity_is_all_ones():
    B = QuaternionAlgebra(NumberField("y^2-13", var="y"), 3, 5)
    s = spectrum_from_descriptor(quaternion_descriptor(B, B(1), g=2))
    assert block_map(s) == {(-1, 1): 4}
    assert all(lam.decimal == "1.0" for lam in dynamical_degrees(s).lambdas)


def test_quaternion_j_over_rationals():
    """q = j in (a, 5 / Q): reduced charpoly X^2 - 5, spectrum (X^2 - 5)^2 for g = 2."""
    Q = NumberField("y", var="y", check=False)
    B = QuaternionAlgebra(Q, 2, 5)
    s = spectrum_from_descriptor(quaternion_descriptor(B, B.j(), g=2))
    assert block_map(s) == {(-5, 0, 1): 2}
    lam = decimals(dynamical_degrees(s))
    assert abs(lam[1] - 5) < 1e-25 and abs(lam[2] - 25) < 1e-25


def test_parametric_quaternion_totally_definite_instance():
    """g = 4, e = 1, l = 2, m = 1: every root of t's minimal polynomial appears four times."""
    d = EndoDescriptor(kind="quaternion", g=4, minpoly=parse_polynomial("x^2-3x+1"), l=2, m=1, e=1)
    s = spectrum_from_quaternion_endo(d)
    assert block_map(s) == {(1, -3, 1): 4}
    lam = decimals(dynamical_degrees(s))
    assert abs(lam[1] - MU**2) < 1e-25
    assert abs(lam[2] - MU**4) < 1e-25  # squared products
    assert abs(lam[3] - MU**2) < 1e-25


def test_parametric_quaternion_bookkeeping():
    # l m = 2e fails
    with pytest.raises(InvalidDescriptor):
        spectrum_from_quaternion_endo(
            EndoDescriptor(kind="quaternion", g=4, minpoly=parse_polynomial("x^2-3x+1"), l=2, m=2, e=1)
        )
    # different minimal polynomials of t1 and t2 are kept apart and noted
    d = EndoDescriptor(
        kind="quaternion", g=2, minpoly=parse_polynomial("x^2-3x+1"), minpoly2=parse_polynomial("x^2+x+1"),
        l=2, m=2, e=2,
    )
    s = spectrum_from_quaternion_endo(d)
    assert block_map(s) == {(1, -3, 1): 1, (1, 1, 1): 1}
    assert s.notes


def test_descriptor_json_round_trip():
    B, gamma = gamma_in_algebra(SALEM4)
    d = quaternion_descriptor(B, gamma, g=4, multiplication="tot. indef. quaternion")
    back = EndoDescriptor.from_json(d.to_json())
    assert spectrum_from_descriptor(back) == spectrum_from_descriptor(d)
    f = field_descriptor("x^2-3x+1", g=2)
    assert spectrum_from_descriptor(EndoDescriptor.from_json(f.to_json())) == spectrum_from_descriptor(f)
    with pytest.raises(InvalidDescriptor):
        EndoDescriptor.from_json({"kind": "other", "g": 2})


def test_spectrum_json_round_trip():
    s = Spectrum.from_polynomials(4, [(SALEM4, 2)], source="salem")
    assert Spectrum.from_json(s.to_json()) == s


# -- dynamical degrees --------------------------------------------------------------------
def test_salem_degrees_match_closed_form():
    prof = dynamical_degrees(Spectrum.from_polynomials(4, [(SALEM4, 2)]))
    closed = ((1 + mpmath.sqrt(13) + mpmath.sqrt(2 * mpmath.sqrt(13) - 2)) / 4) ** 2
    lam = decimals(prof)
    assert lam[0] == 1 and lam[4] == 1
    for k in (1, 2, 3):
        assert abs(lam[k] - closed) < 1e-20
    assert prof.compare(1, 2) == 0 and prof.compare(2, 3) == 0
    assert abs(mpmath.mpf(prof.entropy) - mpmath.log(closed)) < 1e-20


def test_all_ones_spectrum():
    prof = dynamical_degrees(Spectrum.from_polynomials(2, [("x-1", 4)]))
    assert [lam.decimal for lam in prof.lambdas] == ["1.0", "1.0", "1.0"]
    assert prof.entropy == "0"


def test_inverse_duality():
    for s in (
        Spectrum.from_polynomials(4, [("x^4-x^3-139x^2+139x+1", 2)]),
        Spectrum.from_polynomials(3, [("x^6+x^4+x^3+1", 1)]),
    ):
        a = dynamical_degrees(s, classify=False)
        b = dynamical_degrees(s.inverse(), classify=False)
        # for an automorphism lambda_k(f^-1) = lambda_{g-k}(f)
        for k in range(s.g + 1):
            va, vb = mpmath.mpf(a.lambdas[s.g - k].decimal), mpmath.mpf(b.lambdas[k].decimal)
            assert abs(va - vb) <= 1e-20 * va


def test_cohomological_hyperbolicity():
    assert dynamical_degrees(Spectrum.from_polynomials(3, [("x^3-5x+1", 2)])).cohomologically_hyperbolic
    assert not dynamical_degrees(Spectrum.from_polynomials(4, [(SALEM4, 2)])).cohomologically_hyperbolic


def test_products_polynomial_roots():
    P = parse_polynomial("x^2-2")
    Q = parse_polynomial("x^2-3")
    R = products_polynomial(P, Q)
    # products are +-sqrt6, each twice
    assert R.monic() == parse_polynomial("x^4-12x^2+36")


def test_moduli_engine_detects_equal_moduli():
    s = Spectrum.from_polynomials(2, [("x^4-x^3+3x^2+7x+1", 1)])
    eng = ModuliEngine(s.blocks)
    order = eng.sorted_roots()
    assert eng.compare(order[0], order[1]) == 0  # complex conjugate pair
    assert eng.compare(order[1], order[2]) == 1


# -- fixed points, hyperbolicity, reducibility ----------------------------------------------
@pytest.mark.parametrize(
    "g,pairs,expected",
    [
        (1, [("x+1", 2)], 4),
        (4, [(SALEM4, 2)], 1),
        (1, [("x-2", 2)], 1),
        (2, [("x^2-3x+1", 2)], 1),
        (1, [("x^2+1", 1)], 2),
    ],
)
def test_count_fixed_points(g, pairs, expected):
    assert count_fixed_points(Spectrum.from_polynomials(g, pairs)) == expected


def test_fixed_points_infinite():
    with pytest.raises(InfiniteFixedLocus):
        count_fixed_points(Spectrum.from_polynomials(2, [("x-1", 1), ("x^3-5x+1", 1)]))


def test_fixed_points_rational_eigenvalues():
    assert count_fixed_points(Spectrum.from_polynomials(1, [("2x-1", 1), ("x-2", 1)])) == Fraction(1, 2)


@pytest.mark.parametrize(
    "g,pairs,expected",
    [
        (2, [("x-2", 2), ("2x-1", 2)], True),
        (4, [(SALEM4, 2)], False),
        (2, [("x-1", 4)], False),
        (2, [("x^2-3x+1", 2)], True),
    ],
)
def test_hyperbolicity(g, pairs, expected):
    assert hyperbolicity(Spectrum.from_polynomials(g, pairs)) is expected


@pytest.mark.parametrize(
    "g,pairs,expected",
    [
        (4, [(SALEM4, 2)], "none"),
        (2, [("x^2-x+1", 1), ("x^2-3x+1", 1)], "root_of_unity(6)"),
        (2, [("x-1", 1), ("x^3-5x+1", 1)], "eigenvalue_one"),
        (4, [("x^4+1", 2)], "root_of_unity(8)"),
    ],
)
def test_reducibility_criterion(g, pairs, expected):
    assert str(reducibility_criterion(Spectrum.from_polynomials(g, pairs))) == expected


def test_salem_not_cyclotomic():
    from salemdyn.exact.poly import cyclotomic

    for n in (5, 8, 10, 12):
        assert cyclotomic(n).degree == 4
        assert cyclotomic(n) != parse_polynomial(SALEM4)
