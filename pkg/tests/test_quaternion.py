import json
import random
from fractions import Fraction

import pytest

from conftest import LEHMER, SALEM4
from salemdyn.dynamics import dynamical_degrees, quaternion_descriptor, spectrum_from_descriptor
from salemdyn.errors import (
    InvalidInput,
    NotACircleRoot,
    NotAFieldGenerator,
    NotSalem,
    NotTotallyReal,
    UnsupportedResidueChar,
)
from salemdyn.exact import parse_polynomial
from salemdyn.exact.finite_field import FiniteField, ff_is_square
from salemdyn.number_field import NumberField, element_norm, prime_decomposition
from salemdyn.quaternion import (
    ConstructionCertificate,
    QuaternionAlgebra,
    RamificationCertificate,
    Rejected,
    Split,
    absolute_reduced_charpoly,
    build_construction_certificate,
    definiteness,
    gamma_in_algebra,
    gamma_in_second_kind_algebra,
    generator_from_gamma,
    local_ramification_test,
    predicted_exponents,
    reduced_norm,
    reduced_trace,
    residue_image,
    search_prime,
    second_kind_d,
    same_extension,
    sqrt_minpoly,
)

Q13 = NumberField("y^2-13", var="y")
A13 = Q13("-2-2y")


# -- algebra arithmetic ------------------------------------------------------------------
def test_reduced_norm_is_multiplicative():
    F = NumberField("y^2-y-3", var="y")
    B = QuaternionAlgebra(F, F("y-1"), 5)
    rng = random.Random(0)

    def rand():
        return B(*[F([Fraction(rng.randint(-5, 5), rng.randint(1, 3)) for _ in range(2)]) for _ in range(4)])

    for _ in range(100):
        p, q = rand(), rand()
        assert reduced_norm(p * q) == reduced_norm(p) * reduced_norm(q)
        assert reduced_trace(p + q) == reduced_trace(p) + reduced_trace(q)
        assert p * p.conjugate() == B(reduced_norm(p))


def test_basis_relations():
    B = QuaternionAlgebra(Q13, 3, 5)
    i, j, k = B.i(), B.j(), B.k()
    assert i * i == B(3) and j * j == B(5)
    assert i * j == k == -(j * i)
    assert k * k == B(-15)


def test_identity_has_trace_two_norm_one():
    B = QuaternionAlgebra(Q13, 3, 5)
    assert reduced_trace(B(1)) == Q13(2)
    assert reduced_norm(B(1)) == Q13(1)


def test_zero_parameters_rejected():
    with pytest.raises(InvalidInput):
        QuaternionAlgebra(Q13, 0, 5)


def test_embedded_gamma_has_norm_one_and_salem_charpoly():
    B, gamma = gamma_in_algebra(SALEM4)
    assert reduced_norm(gamma) == B.center(1)
    assert reduced_trace(gamma) == B.center.gen()
    assert absolute_reduced_charpoly(gamma) == parse_polynomial(SALEM4)


def test_embedded_gamma_second_kind():
    B2, gamma = gamma_in_second_kind_algebra(SALEM4)
    assert reduced_norm(gamma) == B2.center(1)
    assert B2.center.D == B2.center.base(-1)


def test_definiteness():
    B, _ = gamma_in_algebra(SALEM4)
    assert definiteness(B) == "totally_indefinite"
    Qf = NumberField("y^2-2", var="y")
    assert definiteness(QuaternionAlgebra(Qf, -1, -1)) == "totally_definite"
    assert definiteness(QuaternionAlgebra(Qf, Qf("y"), -1)) == "mixed"
    with pytest.raises(NotTotallyReal):
        definiteness(QuaternionAlgebra(NumberField("x^2+1"), -1, -1))


# -- local ramification -------------------------------------------------------------------
def test_local_test_rejects_primes_dividing_norm():
    assert element_norm(A13) == -48
    res = local_ramification_test(Q13, A13, 3)
    assert isinstance(res, Rejected)


def test_local_test_certificate_at_five():
    cert = local_ramification_test(Q13, A13, 5)
    assert isinstance(cert, RamificationCertificate)
    assert cert.residue_order == 25 and cert.splitting.kind == "inert"
    assert cert.a_image.modulus == (3, 0, 1)  # t^2 - 2, least non-residue
    assert cert.witness == 4
    assert cert.verify()


def test_residue_image_in_alternative_representation():
    cert = local_ramification_test(Q13, A13, 5, r=3)
    assert cert.a_image.modulus == (2, 0, 1)  # t^2 - 3
    assert cert.a_image.value == (3, 3)  # 3 + 3t
    assert not ff_is_square(cert.a_image.element())


def test_residue_images_agree_up_to_isomorphism():
    primes, _ = prime_decomposition(Q13, 5)
    for r in (2, 3):
        img = residue_image(A13, primes[0], r)
        x = img.element()
        # the image satisfies the same minimal relation as a over F_5: a^2 + 4a - 48 = 0
        assert x * x + 4 * x - 48 == img.field()(0)


def test_local_test_split_and_characteristic_two():
    assert isinstance(local_ramification_test(Q13, Q13(4), 7), Split)
    assert isinstance(local_ramification_test(Q13, A13, 7), Split)
    with pytest.raises(UnsupportedResidueChar):
        local_ramification_test(Q13, A13, 2)
    with pytest.raises(InvalidInput):
        local_ramification_test(Q13, A13, 9)


def test_search_prime_examples():
    p, cert = search_prime(Q13, A13)
    assert p == 5 and cert.verify()
    with pytest.raises(NotAFieldGenerator):
        search_prime(Q13, Q13(4))


def test_search_prime_quartic_over_sqrt5_matches_brute_force():
    K = NumberField("x^4-3x^3+3x^2-3x+1")
    gen = generator_from_gamma(K)
    assert gen.F.defining == parse_polynomial("y^2-3y+1")
    assert gen.a == gen.F("3y-5")
    p, cert = search_prime(gen.F, gen.a)
    assert p == 7
    # brute force: at p = 7 some residue image of a is a non-square
    for q in (3, 5):
        assert not isinstance(local_ramification_test(gen.F, gen.a, q), RamificationCertificate)
    primes, _ = prime_decomposition(gen.F, 7)
    nonsquare = False
    for q in primes:
        Fq = residue_image(gen.a, q).field()
        img = residue_image(gen.a, q).element()
        squares = {(s * s).value for s in Fq.elements() if not s.is_zero()}
        nonsquare |= img.value not in squares
    assert nonsquare


def test_certificate_json_round_trip():
    _, cert = search_prime(Q13, A13)
    d = json.loads(json.dumps(cert.to_json()))
    assert d["euler_witness"] == -1
    back = RamificationCertificate.from_json(d)
    assert back == cert and back.verify()


def test_tampered_certificate_fails_verification():
    _, cert = search_prime(Q13, A13)
    d = cert.to_json()
    d["a_image"]["value"] = [1, 0]  # 1 is a square
    assert not RamificationCertificate.from_json(d).verify()
    d = cert.to_json()
    d["p"] = 3
    assert not RamificationCertificate.from_json(d).verify()


# -- generators ------------------------------------------------------------------------------
def test_generator_for_salem_quartic():
    gen = generator_from_gamma(NumberField(SALEM4))
    assert gen.a == gen.F("y-1")  # y^2 - 4 with y^2 = y + 3
    assert gen.sqrt_a_in_K * gen.sqrt_a_in_K == gen.K(gen.a.repr.compose(gen.y_in_K.repr) % gen.K.defining)
    assert sqrt_minpoly(gen.a) == parse_polynomial("x^4+x^2-3")
    assert search_prime(gen.F, gen.a)[0] == 5
    # with sqrt13 = 1 - 2y (the root making a negative), -2 - 2 sqrt13 = 4a: the same extension
    s13 = 1 - 2 * gen.F.gen()
    assert s13 * s13 == gen.F(13)
    assert -2 - 2 * s13 == 4 * gen.a
    assert same_extension(gen.a, -2 - 2 * s13)
    # the other choice of sqrt13 gives a genuinely different extension
    assert not same_extension(gen.a, -2 + 2 * s13)


def test_generator_for_lehmer():
    gen = generator_from_gamma(NumberField(LEHMER, max_degree=10))
    assert gen.F.degree == 5
    assert sqrt_minpoly(gen.a).degree == 10


def test_generator_for_gaussian_field():
    gen = generator_from_gamma(NumberField("x^2+1"))
    assert gen.a == gen.F(-4)


def test_generator_requires_circle_root():
    with pytest.raises(NotACircleRoot):
        generator_from_gamma(NumberField("x^2-3x+1"))
    with pytest.raises(NotACircleRoot):
        generator_from_gamma(NumberField("x^3-5x+1"))


def test_second_kind_d():
    _, cert = search_prime(Q13, A13)
    assert second_kind_d(cert, Q13) == 1
    assert ff_is_square(FiniteField.quadratic(5)(-1))


# -- construction certificates ---------------------------------------------------------------
def test_predicted_exponents():
    assert predicted_exponents(4, "indefinite", 1) == [0, 2, 2, 2, 0]
    assert predicted_exponents(4, "second_kind", 1) == [0, 2, 4, 4, 4, 4, 4, 2, 0]
    assert predicted_exponents(4, "indefinite", 2) == [0, 2, 4, 4, 4, 4, 4, 2, 0]
    with pytest.raises(InvalidInput):
        predicted_exponents(4, "bogus", 1)


@pytest.mark.parametrize("variant", ["indefinite", "second_kind"])
def test_construction_certificate_round_trip(variant):
    cert = build_construction_certificate(SALEM4, variant)
    assert cert.p == 5 and cert.verify() and not cert.abstract
    if variant == "second_kind":
        assert cert.d == 1
    back = ConstructionCertificate.from_json(json.loads(json.dumps(cert.to_json())))
    assert back.verify()
    assert back.exponents == cert.exponents and back.p == cert.p
    assert back.to_json() == cert.to_json()


def test_construction_lambda_values():
    cert = build_construction_certificate(SALEM4, "indefinite")
    lams = cert.lambda_values()
    assert lams[0].decimal(5).startswith("1.0000")
    assert lams[1].decimal(10).startswith("2.965572634")
    assert lams[1].poly.degree == 4


def test_construction_rejects_non_salem_and_bad_v():
    with pytest.raises(NotSalem):
        build_construction_certificate("x^2-3x+1")
    with pytest.raises(InvalidInput):
        build_construction_certificate(SALEM4, v=0)
    with pytest.raises(InvalidInput):
        build_construction_certificate(SALEM4, variant="nope")


def test_abstract_certificate_for_larger_v():
    cert = build_construction_certificate(SALEM4, "indefinite", v=2)
    assert cert.abstract and cert.p is None
    assert cert.dimension == 8
    assert cert.verify()
    assert cert.warnings


@pytest.mark.parametrize("g,variant,v", [(4, "indefinite", 1), (4, "indefinite", 3), (6, "second_kind", 2), (10, "indefinite", 1)])
def test_exponents_palindromic_and_log_concave(g, variant, v):
    e = predicted_exponents(g, variant, v)
    assert e == e[::-1]
    assert all(2 * e[k] >= e[k - 1] + e[k + 1] for k in range(1, len(e) - 1))


@pytest.mark.parametrize("variant", ["indefinite", "second_kind"])
def test_certificate_agrees_with_spectrum_route(variant):
    """Exponents from the certificate match the degrees of the embedded gamma, exactly."""
    cert = build_construction_certificate(SALEM4, variant)
    if variant == "indefinite":
        B, gamma = gamma_in_algebra(SALEM4)
    else:
        B, gamma = gamma_in_second_kind_algebra(SALEM4)
    prof = dynamical_degrees(spectrum_from_descriptor(quaternion_descriptor(B, gamma, cert.dimension)))
    top = prof.engine.sorted_roots()[0]  # the Salem number itself
    assert prof.equal_sequence([{top: e} if e else {} for e in cert.exponents])
