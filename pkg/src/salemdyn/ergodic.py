"""Sparse Fourier (k,k)-forms on complex tori and Cesaro averages of pullbacks.

The torus is X = C^g / Z[i]^g with real coordinates x in [0,1)^{2g},
z_j = x_j + i x_{g+j}.  A monic integer polynomial P with unit constant term
gives the automorphism z -> C z with C the companion matrix of P; on real
coordinates this is A = diag(C, C) and Fourier modes transport as
e_l o f = e_{A^T l}.

Forms are written in the eigenframe w_i = u_i . z, where u_i are left
eigenvectors of C (u_i C = rho_i u_i), using the basis
beta_{I,J} = i^{k^2} dw_I ^ dw_bar_J.  In this basis complex conjugation maps
beta_{I,J} to beta_{J,I}, so a real form has c_{-l,J,I} = conj(c_{l,I,J}),
wedge products need only permutation signs, and pullback multiplies
beta_{I,J} by rho_I conj(rho_J).  Volume convention: beta over all indices
integrates to 1 over the fundamental domain.
"""
from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field
from itertools import combinations
from statistics import median

import mpmath
import numpy as np

from .config import precision_bits
from .errors import HypothesisNotMet, InvalidInput, ModeBudgetExceeded, NotAnAutomorphism
from .exact.linalg import exterior_power
from .exact.poly import IntPolynomial, parse_polynomial
from .exact.roots import certified_roots
from .salem import classify_root_moduli

DEFAULT_MODE_CAP = 200_000
RESIDUAL_BOUND = mpmath.mpf(10) ** -20


def companion_matrix(P: IntPolynomial) -> list:
    """C with ones on the subdiagonal and last column -c_0..-c_{n-1} (P monic)."""
    n = P.degree
    c = [int(x) for x in P.coeffs]
    C = [[0] * n for _ in range(n)]
    for i in range(1, n):
        C[i][i - 1] = 1
    for i in range(n):
        C[i][n - 1] = -c[i]
    return C


def _matvec_int(M, v):
    return tuple(sum(M[i][j] * v[j] for j in range(len(v)) if M[i][j]) for i in range(len(M)))


@dataclass
class TorusAutomorphism:
    poly: IntPolynomial
    g: int
    C: list
    A: list
    dual: list  # A^T, acting on Fourier modes
    rho: list  # analytic eigenvalues (mpc), by decreasing modulus
    frame: list  # left eigenvectors u_i (mpc rows)
    residual: object
    zero_entropy: bool
    finite_order: bool
    _factor_cache: dict = field(default_factory=dict, repr=False)

    @classmethod
    def from_reciprocal_polynomial(cls, P) -> "TorusAutomorphism":
        P = parse_polynomial(P)
        if not isinstance(P, IntPolynomial) or not P.is_monic() or P.degree < 1:
            raise InvalidInput("need a monic integer polynomial")
        if abs(P.coeffs[0]) != 1:
            raise NotAnAutomorphism(f"constant term {P.coeffs[0]} is not a unit")
        g = P.degree
        C = companion_matrix(P)
        A = [[0] * (2 * g) for _ in range(2 * g)]
        for i in range(g):
            for j in range(g):
                A[i][j] = C[i][j]
                A[g + i][g + j] = C[i][j]
        dual = [[A[j][i] for j in range(2 * g)] for i in range(2 * g)]
        disks = certified_roots(P, precision_bits())
        with mpmath.workprec(disks.prec):
            rho = sorted(disks.centers, key=lambda z: (-abs(z), -mpmath.im(z)))
            frame = [[r**j for j in range(g)] for r in rho]
            res = mpmath.mpf(0)
            for r, u in zip(rho, frame):
                uC = [sum(u[i] * C[i][j] for i in range(g)) for j in range(g)]
                res = max(res, max(abs(uC[j] - r * u[j]) for j in range(g)))
        if res > RESIDUAL_BOUND:
            raise InvalidInput(f"eigenframe residual {mpmath.nstr(res, 5)} exceeds 1e-20")
        pat = classify_root_moduli(P)
        from .dynamics.degrees import _cyclotomic_index
        from .exact.factor import factor_over_Q

        finite = all(_cyclotomic_index(f) is not None for f, _ in factor_over_Q(P))
        T = cls(P, g, C, A, dual, rho, frame, res, pat.n_on == g, finite)
        T._check_transport()
        return T

    # -- lattice action --------------------------------------------------------------
    def transport(self, l: tuple) -> tuple:
        """Mode l of a pulled-back function: e_l o f = e_{A^T l}."""
        return _matvec_int(self.dual, l)

    def apply_point(self, x):
        y = np.array(self.A, dtype=float) @ np.asarray(x, dtype=float)
        return y - np.floor(y)

    def _check_transport(self, trials: int = 8):
        """Point-evaluation oracle: e_l(A x) == e_{A^T l}(x) at random points."""
        rng = np.random.default_rng(12345)
        for _ in range(trials):
            l = tuple(int(v) for v in rng.integers(-3, 4, size=2 * self.g))
            x = rng.random(2 * self.g)
            lhs = np.exp(2j * np.pi * np.dot(l, np.array(self.A, dtype=float) @ x))
            rhs = np.exp(2j * np.pi * np.dot(self.transport(l), x))
            if abs(lhs - rhs) > 1e-9:
                raise InvalidInput("mode transport direction failed the point-evaluation oracle")

    # -- frame -----------------------------------------------------------------------------
    def rho_complex(self) -> list:
        return [complex(r) for r in self.rho]

    def frame_factor(self, I: tuple, J: tuple) -> complex:
        """rho_I * conj(rho_J); factor(J, I) is the exact conjugate of factor(I, J)."""
        key = (I, J)
        f = self._factor_cache.get(key)
        if f is not None:
            return f
        if (J, I) in self._factor_cache:
            f = self._factor_cache[(J, I)].conjugate()
        else:
            with mpmath.workprec(precision_bits()):
                val = mpmath.mpc(1)
                for i in I:
                    val *= self.rho[i]
                for j in J:
                    val *= mpmath.conj(self.rho[j])
            f = complex(val)
            if I == J:
                f = complex(f.real, 0.0)
        self._factor_cache[key] = f
        return f

    def modulus_pattern(self):
        return classify_root_moduli(self.poly)

    def has_salem_pattern(self) -> bool:
        """|rho_1| > |rho_2| = ... = |rho_{g-1}| = 1 > |rho_g|."""
        pat = self.modulus_pattern()
        return self.g >= 2 and pat.n_outside == 1 and pat.n_inside == 1 and pat.n_on == self.g - 2

    def is_hyperbolic(self) -> bool:
        return self.modulus_pattern().n_on == 0


# -- forms ------------------------------------------------------------------------------
def _merge_sign(a: tuple, b: tuple) -> int:
    """Sign of the permutation sorting the concatenation a + b (0 if they overlap)."""
    if set(a) & set(b):
        return 0
    inv = 0
    for x in a:
        for y in b:
            if x > y:
                inv += 1
    return -1 if inv % 2 else 1


class FourierForm:
    """Sparse (k,k)-form: {(l, I, J): coefficient} in the eigenframe basis beta_{I,J}."""

    __slots__ = ("g", "k", "coeffs")

    def __init__(self, g: int, k: int, coeffs: dict | None = None):
        self.g, self.k = g, k
        self.coeffs = {}
        for (l, I, J), c in (coeffs or {}).items():
            self._add(tuple(l), tuple(I), tuple(J), complex(c))

    def _add(self, l, I, J, c):
        if len(l) != 2 * self.g:
            raise InvalidInput("mode vectors have length 2g")
        if len(I) != self.k or len(J) != self.k or list(I) != sorted(set(I)) or list(J) != sorted(set(J)):
            raise InvalidInput("multi-indices must be increasing of length k")
        if any(not 0 <= i < self.g for i in I + J):
            raise InvalidInput("index out of range")
        key = (l, I, J)
        v = self.coeffs.get(key, 0) + c
        if v == 0:
            self.coeffs.pop(key, None)
        else:
            self.coeffs[key] = v

    @classmethod
    def constant(cls, g: int, I, J, c=1.0) -> "FourierForm":
        I = tuple(I)
        return cls(g, len(I), {((0,) * (2 * g), I, tuple(J)): c})

    @classmethod
    def mode(cls, g: int, l, I, J, c=1.0) -> "FourierForm":
        I = tuple(I)
        return cls(g, len(I), {(tuple(l), I, tuple(J)): c})

    def copy(self) -> "FourierForm":
        f = FourierForm(self.g, self.k)
        f.coeffs = dict(self.coeffs)
        return f

    def __add__(self, other: "FourierForm") -> "FourierForm":
        if (self.g, self.k) != (other.g, other.k):
            raise InvalidInput("forms of different bidegree")
        out = self.copy()
        for (l, I, J), c in other.coeffs.items():
            out._add(l, I, J, c)
        return out

    def scale(self, s) -> "FourierForm":
        out = FourierForm(self.g, self.k)
        out.coeffs = {key: c * s for key, c in self.coeffs.items() if c * s != 0}
        return out

    def __len__(self):
        return len(self.coeffs)

    def mode_count(self) -> int:
        return len({l for l, _, _ in self.coeffs})

    def is_zero(self) -> bool:
        return not self.coeffs

    def conjugate(self) -> "FourierForm":
        out = FourierForm(self.g, self.k)
        out.coeffs = {(tuple(-x for x in l), J, I): c.conjugate() for (l, I, J), c in self.coeffs.items()}
        return out

    def is_real(self) -> bool:
        """Exact conjugate symmetry c_{-l,J,I} == conj(c_{l,I,J})."""
        for (l, I, J), c in self.coeffs.items():
            partner = self.coeffs.get((tuple(-x for x in l), J, I))
            if partner is None or partner != c.conjugate():
                return False
        return True

    def wedge(self, other: "FourierForm") -> "FourierForm":
        out = FourierForm(self.g, self.k + other.k)
        for (l1, I1, J1), c1 in self.coeffs.items():
            for (l2, I2, J2), c2 in other.coeffs.items():
                s = _merge_sign(I1, I2) * _merge_sign(J1, J2)
                if s == 0:
                    continue
                l = tuple(a + b for a, b in zip(l1, l2))
                out._add(l, tuple(sorted(I1 + I2)), tuple(sorted(J1 + J2)), s * c1 * c2)
        return out

    def sup_distance(self, other: "FourierForm") -> float:
        keys = set(self.coeffs) | set(other.coeffs)
        return max((abs(self.coeffs.get(k, 0) - other.coeffs.get(k, 0)) for k in keys), default=0.0)

    def evaluate(self, T: TorusAutomorphism, x, vectors) -> complex:
        """Value at the point x (real coordinates) on 2k complex tangent vectors."""
        k = self.k
        if len(vectors) != 2 * k:
            raise InvalidInput("need 2k tangent vectors")
        U = np.array([[complex(c) for c in row] for row in T.frame])
        W = np.array([U @ np.asarray(v, dtype=complex) for v in vectors]).T  # W[i, b] = dw_i(v_b)
        x = np.asarray(x, dtype=float)
        total = 0j
        ik2 = 1j ** (k * k)
        for (l, I, J), c in self.coeffs.items():
            rows = [W[i] for i in I] + [np.conj(W[j]) for j in J]
            det = np.linalg.det(np.array(rows)) if rows else 1.0
            total += c * np.exp(2j * np.pi * np.dot(np.array(l, dtype=float), x)) * ik2 * det
        return complex(total)

    def to_json(self) -> list:
        out = []
        for (l, I, J), c in sorted(self.coeffs.items(), key=lambda t: (t[0][1], t[0][2], t[0][0])):
            out.append(
                {"l": [int(v) for v in l], "I": [i + 1 for i in I], "J": [j + 1 for j in J], "re": c.real, "im": c.imag}
            )
        return out

    @classmethod
    def from_json(cls, g: int, data: list) -> "FourierForm":
        if not data:
            raise InvalidInput("empty form")
        k = len(data[0]["I"])
        f = cls(g, k)
        for t in data:
            l = tuple(int(v) for v in t.get("l", [0] * (2 * g)))
            I = tuple(int(i) - 1 for i in t["I"])
            J = tuple(int(j) - 1 for j in t["J"])
            f._add(l, I, J, complex(float(t.get("re", 0.0)), float(t.get("im", 0.0))))
        return f


def pullback_form(T: TorusAutomorphism, omega: FourierForm, scale: complex | float = 1.0) -> FourierForm:
    """f^* omega (times ``scale``): modes transported by A^T, frame factor rho_I conj(rho_J)."""
    if omega.g != T.g:
        raise InvalidInput("form and torus have different dimensions")
    out = FourierForm(T.g, omega.k)
    zero = (0,) * (2 * T.g)
    for (l, I, J), c in omega.coeffs.items():
        lt = zero if l == zero else T.transport(l)
        out.coeffs[(lt, I, J)] = out.coeffs.get((lt, I, J), 0) + c * T.frame_factor(I, J) * scale
    return out


def _limit_indices(T: TorusAutomorphism, k: int) -> list:
    """I = {first index} u I' with I' inside the circle indices 2..g-1 (0-based 1..g-2)."""
    return [(0,) + rest for rest in combinations(range(1, T.g - 1), k - 1)]


def predicted_limit(T: TorusAutomorphism, omega: FourierForm, k: int | None = None) -> FourierForm:
    """Constant form sum a_I beta_{I,I}, a_I the zero-mode coefficient of omega_{I,I}."""
    k = omega.k if k is None else k
    if k != omega.k:
        raise InvalidInput("k must match the bidegree of the form")
    if not T.has_salem_pattern():
        raise HypothesisNotMet("modulus pattern |rho_1| > |rho_2| = ... = 1 > |rho_g| is required")
    if not 1 <= k <= T.g - 1:
        raise InvalidInput("need 1 <= k <= g - 1")
    zero = (0,) * (2 * T.g)
    out = FourierForm(T.g, k)
    for I in _limit_indices(T, k):
        c = omega.coeffs.get((zero, I, I))
        if c:
            out._add(zero, I, I, c)
    return out


def hyperbolic_limit(T: TorusAutomorphism, omega: FourierForm, k: int | None = None) -> FourierForm:
    """Limit for hyperbolic maps: zero-mode coefficient on the top eigenform beta_{I*,I*}."""
    k = omega.k if k is None else k
    if not T.is_hyperbolic():
        raise HypothesisNotMet("the map is not hyperbolic")
    mods = [abs(complex(r)) for r in T.rho]
    if k < T.g and not mods[k - 1] > mods[k] * (1 + 1e-12):
        raise HypothesisNotMet("the top (k,k) eigenform is not unique")
    I = tuple(range(k))
    zero = (0,) * (2 * T.g)
    out = FourierForm(T.g, k)
    c = omega.coeffs.get((zero, I, I))
    if c:
        out._add(zero, I, I, c)
    return out


def quadrature_coefficient(T: TorusAutomorphism, omega: FourierForm, I: tuple, nodes: int | None = None) -> complex:
    """a_I from integrating omega ^ beta_{I^c,I^c} numerically (Gauss-Legendre per coordinate)."""
    Ic = tuple(i for i in range(T.g) if i not in I)
    top = omega.wedge(FourierForm.constant(T.g, Ic, Ic)) if Ic else omega
    full = tuple(range(T.g))
    total = 0j
    for (l, I2, J2), c in top.coeffs.items():
        if I2 != full or J2 != full:
            continue
        n = nodes or (max((abs(v) for v in l), default=0) + 16)
        xs, ws = np.polynomial.legendre.leggauss(n)
        xs, ws = (xs + 1) / 2, ws / 2
        val = c
        for m in l:
            val *= complex(np.sum(ws * np.exp(2j * np.pi * m * xs)))
        total += val
    return total


# -- Cesaro averages --------------------------------------------------------------------
@dataclass
class ConvergenceReport:
    checkpoints: list
    errors: list
    mode_counts: list
    collinearity: list
    predicted: FourierForm
    lambda_k: float
    normalization_constant: float = 1.0
    volume_convention: str = "integral of beta over all indices = 1 on [0,1)^{2g}"
    complete: bool = True

    def decade_medians(self) -> list:
        groups: dict = {}
        for N, e in zip(self.checkpoints, self.errors):
            groups.setdefault(int(math.floor(math.log10(N) + 1e-12)), []).append(e)
        return [median(groups[d]) for d in sorted(groups)]

    def medians_nonincreasing(self) -> bool:
        m = self.decade_medians()
        return all(b <= a for a, b in zip(m, m[1:]))

    def write_csv(self, path) -> None:
        with open(path, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["N", "sup_error", "mode_count", "collinearity"])
            for row in zip(self.checkpoints, self.errors, self.mode_counts, self.collinearity):
                w.writerow([row[0], repr(row[1]), row[2], repr(row[3])])

    def to_json(self) -> dict:
        return {
            "checkpoints": self.checkpoints,
            "errors": self.errors,
            "mode_counts": self.mode_counts,
            "collinearity": self.collinearity,
            "predicted": self.predicted.to_json(),
            "lambda_k": self.lambda_k,
            "normalization_constant": self.normalization_constant,
            "volume_convention": self.volume_convention,
            "decade_medians": self.decade_medians(),
            "medians_nonincreasing": self.medians_nonincreasing(),
            "complete": self.complete,
        }


def log_checkpoints(N: int, per_decade: int = 10) -> list:
    pts = set()
    t = 0
    while True:
        n = int(round(10 ** (t / per_decade)))
        if n > N:
            break
        pts.add(n)
        t += 1
    pts.add(N)
    return sorted(pts)


def collinearity_error(a: FourierForm, b: FourierForm) -> float:
    """1 - |cos angle| between the coefficient vectors (nan if either vanishes)."""
    keys = set(a.coeffs) | set(b.coeffs)
    dot = sum(a.coeffs.get(k, 0) * b.coeffs.get(k, 0).conjugate() for k in keys)
    na = math.sqrt(sum(abs(c) ** 2 for c in a.coeffs.values()))
    nb = math.sqrt(sum(abs(c) ** 2 for c in b.coeffs.values()))
    if na == 0 or nb == 0:
        return float("nan")
    return max(0.0, 1.0 - abs(dot) / (na * nb))


def lambda_k_of(T: TorusAutomorphism, k: int) -> float:
    """lambda_k from the dynamics module for the spectrum P^2 of the torus."""
    from .dynamics.degrees import dynamical_degrees
    from .dynamics.spectrum import Spectrum

    prof = dynamical_degrees(Spectrum.from_polynomials(T.g, [(T.poly, 2)]), classify=False)
    return float(mpmath.mpf(prof.lambdas[k].decimal))


def cesaro_average(
    T: TorusAutomorphism,
    omega: FourierForm,
    k: int,
    N: int,
    checkpoints: list | None = None,
    mode_cap: int = DEFAULT_MODE_CAP,
) -> tuple:
    """(1/N) sum_{j=1..N} (f^j)^* omega / lambda_k^j, with a convergence report."""
    if N < 1:
        raise InvalidInput("N must be >= 1")
    if omega.k != k:
        raise InvalidInput("k must match the bidegree of the form")
    if T.has_salem_pattern():
        limit = predicted_limit(T, omega, k)
    else:
        limit = hyperbolic_limit(T, omega, k)
    lam = lambda_k_of(T, k)
    cps = sorted(set(checkpoints)) if checkpoints else log_checkpoints(N)
    cps = [c for c in cps if 1 <= c <= N]
    total: dict = {}
    current = omega
    report = ConvergenceReport([], [], [], [], limit, lam)
    inv = 1.0 / lam
    nxt = 0
    for j in range(1, N + 1):
        current = pullback_form(T, current, inv)
        for key, c in current.coeffs.items():
            total[key] = total.get(key, 0) + c
        if len(total) > mode_cap:
            report.complete = False
            avg = FourierForm(T.g, k)
            avg.coeffs = {kk: v / j for kk, v in total.items()}
            raise ModeBudgetExceeded(f"mode budget {mode_cap} exceeded at step {j}", partial=(avg, report))
        if nxt < len(cps) and j == cps[nxt]:
            avg = FourierForm(T.g, k)
            avg.coeffs = {kk: v / j for kk, v in total.items()}
            report.checkpoints.append(j)
            report.errors.append(avg.sup_distance(limit))
            report.mode_counts.append(avg.mode_count())
            report.collinearity.append(collinearity_error(avg, limit))
            nxt += 1
    avg = FourierForm(T.g, k)
    avg.coeffs = {kk: v / N for kk, v in total.items()}
    return avg, report


# -- Fourier escape ------------------------------------------------------------------------
@dataclass
class EscapeResult:
    norms_squared: list  # exact integers ||A^n l||^2, n = 0..last
    diverges: bool
    first_exceed: int | None
    threshold: float

    def norms(self) -> list:
        return [math.sqrt(float(v)) if v < 10**300 else float("inf") for v in self.norms_squared]

    def to_json(self) -> dict:
        return {
            "norms": [str(mpmath.nstr(mpmath.sqrt(v), 15)) for v in self.norms_squared],
            "diverges": self.diverges,
            "first_exceed": self.first_exceed,
            "threshold": self.threshold,
        }


def fourier_escape_check(T: TorusAutomorphism, l, n_max: int = 200, threshold: float = 1e6) -> EscapeResult:
    """Exact orbit of l under the dual transport; verdict true iff the norm exceeds the threshold."""
    v = tuple(int(x) for x in l)
    if len(v) != 2 * T.g:
        raise InvalidInput("lattice vector must have length 2g")
    t2 = int(threshold) ** 2
    norms = [sum(x * x for x in v)]
    first = None
    for n in range(1, n_max + 1):
        v = T.transport(v)
        s = sum(x * x for x in v)
        norms.append(s)
        if s > t2:
            first = n
            break
    return EscapeResult(norms, first is not None, first, threshold)


# -- spectral growth ------------------------------------------------------------------------
def _index_sets(g: int, k: int) -> list:
    return list(combinations(range(g), k))


def eigenframe_growth(T: TorusAutomorphism, k: int, n: int = 60, seed: int = 0) -> float:
    """Log-slope of ||(f^n)^* omega|| for a random constant (k,k)-form, eigenframe route."""
    rng = np.random.default_rng(seed)
    sets = _index_sets(T.g, k)
    with mpmath.workprec(precision_bits()):
        coeffs = {}
        for I in sets:
            for J in sets:
                coeffs[(I, J)] = mpmath.mpc(rng.normal(), rng.normal())

        def norm_at(m):
            s = mpmath.mpf(0)
            for (I, J), c in coeffs.items():
                f = mpmath.mpc(1)
                for i in I:
                    f *= T.rho[i]
                for j in J:
                    f *= mpmath.conj(T.rho[j])
                s += abs(c * f**m) ** 2
            return mpmath.sqrt(s)

        return float(mpmath.log(norm_at(n) / norm_at(n - 1)))


def standard_frame_growth(T: TorusAutomorphism, k: int, n: int = 60, seed: int = 0, window: int = 20) -> float:
    """Log-slope in the standard frame dz_I ^ dz_bar_J with exact integer compound matrices.

    f^* acts on coefficient matrices by W -> M^T W M with M the k-th
    compound of C.  The slope is averaged over the last ``window`` steps.
    """
    rng = np.random.default_rng(seed)
    M = exterior_power(T.C, k)
    size = len(M)
    Mt = [[M[j][i] for j in range(size)] for i in range(size)]
    Wr = [[int(rng.integers(-9, 10)) for _ in range(size)] for _ in range(size)]
    Wi = [[int(rng.integers(-9, 10)) for _ in range(size)] for _ in range(size)]

    def step(W):
        return _imul(_imul(Mt, W), M)

    def norm2(a, b):
        return sum(x * x for row in a for x in row) + sum(x * x for row in b for x in row)

    logs = []
    for m in range(n + 1):
        if m >= n - window:
            logs.append(float(mpmath.log(norm2(Wr, Wi)) / 2))
        if m < n:
            Wr, Wi = step(Wr), step(Wi)
    return (logs[-1] - logs[0]) / window


def _imul(a, b):
    n, m, p = len(a), len(b), len(b[0])
    return [[sum(a[i][t] * b[t][j] for t in range(m) if a[i][t]) for j in range(p)] for i in range(n)]


def random_constant_form(g: int, k: int, seed: int = 0) -> FourierForm:
    """Random real constant (k,k)-form: Hermitian coefficient matrix over the index sets."""
    rng = np.random.default_rng(seed)
    sets = _index_sets(g, k)
    zero = (0,) * (2 * g)
    coeffs = {}
    for a, I in enumerate(sets):
        coeffs[(zero, I, I)] = complex(rng.normal(), 0.0)
        for J in sets[a + 1:]:
            c = complex(rng.normal(), rng.normal())
            coeffs[(zero, I, J)] = c
            coeffs[(zero, J, I)] = c.conjugate()
    return FourierForm(g, k, coeffs)
