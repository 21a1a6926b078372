import csv
import json
import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import SALEM4
from salemdyn.errors import HypothesisNotMet, InvalidInput, ModeBudgetExceeded, NotAnAutomorphism
from salemdyn.ergodic import (
    FourierForm,
    TorusAutomorphism,
    cesaro_average,
    collinearity_error,
    companion_matrix,
    eigenframe_growth,
    fourier_escape_check,
    hyperbolic_limit,
    lambda_k_of,
    log_checkpoints,
    predicted_limit,
    pullback_form,
    quadrature_coefficient,
    random_constant_form,
    standard_frame_growth,
)
from salemdyn.exact import parse_polynomial

T4 = TorusAutomorphism.from_reciprocal_polynomial(SALEM4)
G = 4
ZERO = (0,) * (2 * G)
E1 = (1,) + (0,) * (2 * G - 1)


def oscillating_pair(l, I, J, c):
    """A mode together with its conjugate partner, so the form is real."""
    return FourierForm(G, len(I), {(l, I, J): c, (tuple(-x for x in l), J, I): complex(c).conjugate()})


def mixed_form():
    return FourierForm.constant(G, (0,), (0,)) + FourierForm.constant(G, (1,), (1,)) + oscillating_pair(
        E1, (0,), (0,), 0.5 + 0.25j
    )


# -- construction ---------------------------------------------------------------------------
def test_companion_matrix_has_polynomial_as_charpoly():
    C = companion_matrix(parse_polynomial(SALEM4))
    coeffs = np.poly(np.array(C, dtype=float))
    assert np.allclose(coeffs, [1, -1, -1, -1, 1])


def test_salem_torus():
    assert T4.g == 4 and len(T4.A) == 8
    assert T4.residual < mpmath.mpf(10) ** -20
    mods = [abs(complex(r)) for r in T4.rho]
    assert mods[0] > 1.7 and abs(mods[1] - 1) < 1e-15 and abs(mods[2] - 1) < 1e-15 and mods[3] < 0.6
    assert T4.has_salem_pattern() and not T4.is_hyperbolic()
    assert round(abs(np.linalg.det(np.array(T4.A, dtype=float)))) == 1
    # eigenvalues of A are the analytic ones together with their conjugates
    ev = np.sort_complex(np.linalg.eigvals(np.array(T4.A, dtype=float)))
    expected = np.sort_complex(np.array(T4.rho_complex() + [z.conjugate() for z in T4.rho_complex()]))
    assert np.allclose(ev, expected)


def test_hyperbolic_and_finite_order_tori():
    H = TorusAutomorphism.from_reciprocal_polynomial("x^2-3x+1")
    assert H.is_hyperbolic() and not H.zero_entropy
    R = TorusAutomorphism.from_reciprocal_polynomial("x^2+1")
    assert R.zero_entropy and R.finite_order


def test_construction_errors():
    with pytest.raises(NotAnAutomorphism):
        TorusAutomorphism.from_reciprocal_polynomial("x^2-3x+2")
    with pytest.raises(InvalidInput):
        TorusAutomorphism.from_reciprocal_polynomial("2x^2-3x+1")


# -- pullback -------------------------------------------------------------------------------
def test_pullback_of_top_eigenform():
    f = pullback_form(T4, FourierForm.constant(G, (0,), (0,)))
    assert f.coeffs == {(ZERO, (0,), (0,)): complex(abs(complex(T4.rho[0])) ** 2, 0.0)}
    assert pullback_form(T4, FourierForm(G, 1)).is_zero()


def test_pullback_relocates_modes():
    f = pullback_form(T4, FourierForm.mode(G, E1, (0,), (0,), 2.0))
    ((l, I, J), c), = f.coeffs.items()
    assert l == T4.transport(E1) and (I, J) == ((0,), (0,))
    assert abs(c - 2 * T4.frame_factor((0,), (0,))) < 1e-15


@pytest.mark.parametrize("k", [1, 2])
def test_pullback_matches_point_evaluation(k):
    """(f^* omega)(x; v) = omega(A x; C v) at 10 random points."""
    rng = np.random.default_rng(7)
    I = tuple(range(k))
    J = tuple(range(1, k + 1))
    omega = FourierForm.mode(G, (1, 0, -1, 0, 0, 2, 0, 0), I, J, 0.7 - 0.2j) + FourierForm.constant(G, J, I, 1.3)
    pulled = pullback_form(T4, omega)
    C = np.array(T4.C, dtype=float)
    for _ in range(10):
        x = rng.random(2 * G)
        vs = [rng.normal(size=G) + 1j * rng.normal(size=G) for _ in range(2 * k)]
        lhs = pulled.evaluate(T4, x, vs)
        rhs = omega.evaluate(T4, T4.apply_point(x), [C @ v for v in vs])
        assert abs(lhs - rhs) <= 1e-12 * max(1.0, abs(rhs))


def _random_form(data, k):
    sets = [(0,), (1,), (2,), (3,)] if k == 1 else [(0, 1), (0, 2), (1, 3), (2, 3)]
    n = data.draw(st.integers(1, 3))
    f = FourierForm(G, k)
    for _ in range(n):
        l = tuple(data.draw(st.lists(st.integers(-2, 2), min_size=2 * G, max_size=2 * G)))
        I = data.draw(st.sampled_from(sets))
        J = data.draw(st.sampled_from(sets))
        c = complex(data.draw(st.integers(-3, 3)), data.draw(st.integers(-3, 3)))
        if c:
            f = f + FourierForm.mode(G, l, I, J, c)
    return f


@settings(max_examples=50)
@given(st.data())
def test_pullback_is_multiplicative(data):
    a = _random_form(data, 1)
    b = _random_form(data, data.draw(st.sampled_from([1, 2])))
    lhs = pullback_form(T4, a.wedge(b))
    rhs = pullback_form(T4, a).wedge(pullback_form(T4, b))
    scale = max([1.0] + [abs(c) for c in lhs.coeffs.values()])
    assert lhs.sup_distance(rhs) <= 1e-12 * scale


def test_wedge_signs():
    a = FourierForm.constant(G, (0,), (0,))
    b = FourierForm.constant(G, (1,), (1,))
    assert a.wedge(b).coeffs == b.wedge(a).coeffs  # (1,1)-forms commute
    assert a.wedge(a).is_zero()
    c = FourierForm.constant(G, (1,), (0,))
    d = FourierForm.constant(G, (0,), (1,))
    # i dw1 ^ dwb0 ^ i dw0 ^ dwb1 = -(dw0 ^ dw1 ^ dwb0 ^ dwb1): sorting the holomorphic indices flips the sign
    assert c.wedge(d).coeffs == {(ZERO, (0, 1), (0, 1)): -1.0}


def test_real_forms_stay_real():
    omega = mixed_form() + random_constant_form(G, 1, seed=3)
    assert omega.is_real()
    f = omega
    for _ in range(20):
        f = pullback_form(T4, f, 0.5)
        assert f.is_real()
    avg, _ = cesaro_average(T4, omega, 1, 50)
    assert avg.is_real()
    assert not FourierForm.mode(G, E1, (0,), (0,), 1.0).is_real()


def test_form_json_round_trip():
    omega = mixed_form()
    data = json.loads(json.dumps(omega.to_json()))
    assert data[0]["I"][0] >= 1  # indices are 1-based on the wire
    assert FourierForm.from_json(G, data).coeffs == omega.coeffs
    with pytest.raises(InvalidInput):
        FourierForm.from_json(G, [])


def test_form_validation():
    with pytest.raises(InvalidInput):
        FourierForm.mode(G, (1, 0), (0,), (0,))
    with pytest.raises(InvalidInput):
        FourierForm(G, 2, {(ZERO, (1, 0), (0, 1)): 1})
    with pytest.raises(InvalidInput):
        FourierForm.constant(G, (4,), (4,))


# -- predicted limit ---------------------------------------------------------------------------
def test_predicted_limit_examples():
    top = FourierForm.constant(G, (0,), (0,))
    assert predicted_limit(T4, top).coeffs == top.coeffs
    assert predicted_limit(T4, FourierForm.constant(G, (1,), (1,))).is_zero()
    assert predicted_limit(T4, oscillating_pair(E1, (0,), (0,), 1.0)).is_zero()
    assert predicted_limit(T4, mixed_form()).coeffs == top.coeffs


def test_predicted_limit_k2_uses_circle_indices():
    omega = random_constant_form(G, 2, seed=1)
    lim = predicted_limit(T4, omega)
    assert {I for _, I, _ in lim.coeffs} == {(0, 1), (0, 2)}
    assert all(I == J for _, I, J in lim.coeffs)


def test_predicted_limit_hypothesis():
    # two eigenvalues outside the unit circle
    H = TorusAutomorphism.from_reciprocal_polynomial("x^4-5x^2+1")
    with pytest.raises(HypothesisNotMet):
        predicted_limit(H, FourierForm.constant(4, (0,), (0,)))
    with pytest.raises(HypothesisNotMet):
        hyperbolic_limit(T4, FourierForm.constant(G, (0,), (0,)))


@pytest.mark.parametrize("I", [(0,), (1,), (2,), (3,)])
def test_quadrature_reproduces_zero_mode_coefficient(I):
    omega = random_constant_form(G, 1, seed=5) + oscillating_pair((1, 0, 0, 0, 0, -1, 0, 0), I, I, 0.3)
    zero_mode = omega.coeffs[(ZERO, I, I)]
    q = quadrature_coefficient(T4, omega, I)
    # normalization constant 1
    assert abs(q - zero_mode) < 1e-12


def test_quadrature_for_k2():
    omega = random_constant_form(G, 2, seed=2)
    for I in [(0, 1), (0, 2)]:
        assert abs(quadrature_coefficient(T4, omega, I) - omega.coeffs[(ZERO, I, I)]) < 1e-12


# -- Cesaro averages ---------------------------------------------------------------------------
def test_eigenform_average_is_exact():
    top = FourierForm.constant(G, (0,), (0,))
    avg, rep = cesaro_average(T4, top, 1, 100)
    assert max(rep.errors) < 1e-12
    assert avg.sup_distance(top) < 1e-12


def test_geometric_series_bound():
    omega = FourierForm.constant(G, (0,), (0,)) + FourierForm.constant(G, (1,), (1,))
    lam = lambda_k_of(T4, 1)
    _, rep = cesaro_average(T4, omega, 1, 500)
    for N, err in zip(rep.checkpoints, rep.errors):
        bound = sum(lam**-j for j in range(1, N + 1)) / N
        assert err <= bound * (1 + 1e-9) + 1e-12


def test_oscillating_mode_decays():
    omega = oscillating_pair(E1, (0,), (0,), 1.0)
    _, rep = cesaro_average(T4, omega, 1, 1000)
    assert rep.errors[-1] < 1e-2
    assert rep.medians_nonincreasing()


def test_mixed_form_converges():
    avg, rep = cesaro_average(T4, mixed_form(), 1, 2000)
    assert rep.errors[-1] < 5e-3
    assert rep.medians_nonincreasing()
    assert rep.mode_counts[-1] == avg.mode_count()
    assert rep.collinearity[-1] < 1e-3


def test_report_csv_and_json(tmp_path):
    _, rep = cesaro_average(T4, mixed_form(), 1, 100)
    path = tmp_path / "trace.csv"
    rep.write_csv(path)
    rows = list(csv.reader(open(path)))
    assert rows[0] == ["N", "sup_error", "mode_count", "collinearity"]
    assert len(rows) == len(rep.checkpoints) + 1
    d = json.loads(json.dumps(rep.to_json()))
    assert d["normalization_constant"] == 1.0 and d["complete"]


def test_mode_budget():
    with pytest.raises(ModeBudgetExceeded) as exc:
        cesaro_average(T4, mixed_form(), 1, 1000, mode_cap=50)
    avg, rep = exc.value.partial
    assert not rep.complete and len(avg) > 0


def test_hyperbolic_average_is_collinear_with_top_eigenform():
    H = TorusAutomorphism.from_reciprocal_polynomial("x^2-3x+1")
    omega = random_constant_form(2, 1, seed=0)
    avg, rep = cesaro_average(H, omega, 1, 1000)
    assert rep.collinearity[-1] <= 1e-6
    assert collinearity_error(avg, hyperbolic_limit(H, omega)) <= 1e-6


def test_log_checkpoints():
    cps = log_checkpoints(1000)
    assert cps[0] == 1 and cps[-1] == 1000
    assert cps == sorted(set(cps))
    assert 10 in cps and 100 in cps


# -- Fourier escape ------------------------------------------------------------------------------
def test_escape_of_first_basis_vector():
    res = fourier_escape_check(T4, E1)
    assert res.diverges and res.first_exceed <= 200
    assert res.norms_squared[-1] > 10**12
    assert all(isinstance(v, int) for v in res.norms_squared)


def test_zero_vector_does_not_escape():
    res = fourier_escape_check(T4, ZERO)
    assert not res.diverges and set(res.norms_squared) == {0}


def test_rotation_orbit_is_bounded():
    R = TorusAutomorphism.from_reciprocal_polynomial("x^2+1")
    res = fourier_escape_check(R, (3, -1, 2, 5))
    assert not res.diverges
    assert len(set(res.norms_squared)) == 1


def test_random_vectors_escape():
    rng = np.random.default_rng(0)
    for _ in range(100):
        l = tuple(int(v) for v in rng.integers(-5, 6, size=2 * G))
        if not any(l):
            continue
        assert fourier_escape_check(T4, l).diverges


# -- spectral growth ------------------------------------------------------------------------------
@pytest.mark.parametrize("k", [1, 2, 3])
def test_growth_matches_dynamical_degree(k):
    target = math.log(lambda_k_of(T4, k))
    a = eigenframe_growth(T4, k, n=60, seed=k)
    b = standard_frame_growth(T4, k, n=60, seed=k)
    assert abs(a - target) <= 0.01 * target
    assert abs(b - target) <= 0.01 * target
