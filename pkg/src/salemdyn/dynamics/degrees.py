"""Dynamical degrees, entropy, fixed points, hyperbolicity and reducibility from a spectrum.

lambda_k is the largest product of 2k eigenvalue moduli with pairwise
distinct indices, i.e. the product of the 2k largest moduli.  Each lambda_k
is kept as an exponent vector over the distinct eigenvalues, so every
comparison between dynamical degrees is an exact question for the moduli
engine.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from ..errors import InfiniteFixedLocus
from ..exact.poly import cyclotomic
from .moduli import ModuliEngine
from .spectrum import Spectrum


@dataclass(frozen=True)
class LambdaValue:
    k: int
    exponents: tuple  # ((root index, count), ...)
    decimal: str

    def entries(self) -> dict:
        return dict(self.exponents)

    def to_json(self) -> dict:
        return {"k": self.k, "decimal": self.decimal, "exponents": [list(t) for t in self.exponents]}


@dataclass
class DynamicalProfile:
    spectrum: Spectrum
    engine: ModuliEngine
    lambdas: list
    entropy: str
    hyperbolic: bool
    cohomologically_hyperbolic: bool
    diagram: str | None = None
    notes: list = field(default_factory=list)

    @property
    def g(self) -> int:
        return self.spectrum.g

    def compare(self, i: int, j: int, a: int = 1, b: int = 1) -> int:
        """Exact sign of lambda_i^a - lambda_j^b."""
        return self.engine.sign(_combine(self.lambdas[i].entries(), a, self.lambdas[j].entries(), -b))

    def compare_power_of(self, k: int, root: int, exponent: int) -> int:
        """Exact sign of lambda_k - |alpha_root|^exponent."""
        return self.engine.sign(_combine(self.lambdas[k].entries(), 1, {root: 1}, -exponent))

    def equal_sequence(self, other_exponents: list) -> bool:
        """True iff lambda_k = prod |alpha_r|^n_r for each given vector, exactly."""
        if len(other_exponents) != len(self.lambdas):
            return False
        return all(
            self.engine.sign(_combine(lam.entries(), 1, dict(vec), -1)) == 0
            for lam, vec in zip(self.lambdas, other_exponents)
        )

    def pattern_string(self) -> str:
        """Relations between consecutive lambdas, e.g. '1 < λ1 = λ2 > λ3'."""
        parts = ["λ0"]
        for k in range(1, len(self.lambdas)):
            s = self.compare(k - 1, k)
            parts.append({-1: "<", 0: "=", 1: ">"}[s])
            parts.append(f"λ{k}")
        return " ".join(parts)

    def to_json(self) -> dict:
        return {
            "g": self.g,
            "lambdas": [lam.to_json() for lam in self.lambdas],
            "entropy": self.entropy,
            "hyperbolic": self.hyperbolic,
            "cohomologically_hyperbolic": self.cohomologically_hyperbolic,
            "pattern": self.pattern_string(),
            "diagram": self.diagram,
            "notes": list(self.notes),
        }


def _combine(a: dict, ca: int, b: dict, cb: int) -> dict:
    out: dict = {}
    for r, n in a.items():
        out[r] = out.get(r, 0) + ca * n
    for r, n in b.items():
        out[r] = out.get(r, 0) + cb * n
    return {r: n for r, n in out.items() if n}


def engine_for(spectrum: Spectrum) -> ModuliEngine:
    return ModuliEngine(spectrum.blocks)


def lambda_vectors(spectrum: Spectrum, engine: ModuliEngine | None = None) -> list:
    """Exponent vectors of lambda_0..lambda_g (dicts root index -> count)."""
    engine = engine or engine_for(spectrum)
    order = engine.sorted_roots()
    out = []
    for k in range(spectrum.g + 1):
        vec: dict = {}
        for r in order[: 2 * k]:
            vec[r] = vec.get(r, 0) + 1
        out.append(vec)
    return out


def dynamical_degrees(spectrum: Spectrum, classify: bool = True) -> DynamicalProfile:
    engine = engine_for(spectrum)
    vecs = lambda_vectors(spectrum, engine)
    lambdas = [
        LambdaValue(k, tuple(sorted(v.items())), engine.value_decimal(v)) for k, v in enumerate(vecs)
    ]
    best = 0
    for k in range(1, len(vecs)):
        if engine.sign(_combine(vecs[k], 1, vecs[best], -1)) > 0:
            best = k
    entropy = engine.log_decimal(vecs[best]) if best else "0"
    prof = DynamicalProfile(
        spectrum=spectrum,
        engine=engine,
        lambdas=lambdas,
        entropy=entropy,
        hyperbolic=hyperbolicity(spectrum, engine),
        cohomologically_hyperbolic=False,
    )
    prof.cohomologically_hyperbolic = _strict_unimodal(prof)
    if classify and 1 <= spectrum.g <= 4:
        from .diagrams import classify_profile
        from ..errors import Unclassified

        try:
            prof.diagram = classify_profile(prof).label
        except Unclassified as exc:
            prof.notes.append(str(exc))
    return prof


def _strict_unimodal(prof: DynamicalProfile) -> bool:
    """lambda_0 < ... < lambda_k > ... > lambda_g for some k."""
    g = prof.g
    signs = [prof.compare(k, k + 1) for k in range(g)]
    if 0 in signs:
        return False
    k = 0
    while k < g and signs[k] < 0:
        k += 1
    return all(s > 0 for s in signs[k:]) and 0 < k < g


def hyperbolicity(spectrum: Spectrum, engine: ModuliEngine | None = None) -> bool:
    """True iff no eigenvalue lies on the unit circle."""
    engine = engine or engine_for(spectrum)
    return not any(engine.is_circle(r) for r in range(engine.n))


def count_fixed_points(spectrum: Spectrum):
    """|prod (1 - rho_i)| over all 2g eigenvalues, exactly."""
    total = Fraction(1)
    for b in spectrum.blocks:
        v = Fraction(b.poly(1)) / b.poly.lc
        if v == 0:
            raise InfiniteFixedLocus("1 is an eigenvalue: the fixed locus is positive dimensional")
        total *= abs(v) ** b.multiplicity
    return int(total) if total.denominator == 1 else total


@dataclass(frozen=True)
class Reducibility:
    kind: str  # none | eigenvalue_one | root_of_unity
    n: int | None = None

    def __str__(self):
        return f"root_of_unity({self.n})" if self.kind == "root_of_unity" else self.kind

    def to_json(self) -> dict:
        return {"kind": self.kind, "n": self.n, "label": str(self)}


def _cyclotomic_index(P) -> int | None:
    """n with P proportional to Phi_n, else None (n ranges over phi(n) = deg P)."""
    from sympy import totient

    d = P.degree
    monic = P.monic()
    # phi(n) >= sqrt(n / 2), so n <= 2 d^2 covers all candidates
    for n in range(1, 2 * d * d + 3):
        if totient(n) == d and cyclotomic(n) == monic:
            return n
    return None


def reducibility_criterion(spectrum: Spectrum) -> Reducibility:
    """Detect the eigenvalue 1, or a root of unity (Kronecker: cyclotomic blocks)."""
    found = []
    for b in spectrum.blocks:
        n = _cyclotomic_index(b.poly)
        if n == 1:
            return Reducibility("eigenvalue_one", 1)
        if n is not None:
            found.append(n)
    if found:
        return Reducibility("root_of_unity", min(found))
    return Reducibility("none")
