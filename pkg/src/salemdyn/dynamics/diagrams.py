"""Diagram classification of dynamical-degree patterns in dimensions 1 to 4.

Dimension 4 has twelve diagrams, each defined by exact (in)equalities among
lambda_1, lambda_2, lambda_3 and their squares.  Dimensions 1 to 3 use the
patterns that are stated in words; any other pattern is labelled only by its
inequality string.  The tables of possible diagrams per multiplication type
are stored verbatim as data.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from ..errors import InvalidInput, Unclassified
from .degrees import DynamicalProfile, dynamical_degrees
from .spectrum import EndoDescriptor, Spectrum

# (multiplication, Q(f), [Q(f):Q], diagrams, properties of the lambdas)
TABLES = {
    1: [
        ("trivial", "Q", 1, "(1)", "1 ∈ Z"),
        ("complex", "CM-field", 2, "(1)", "1 ∈ Z"),
    ],
    2: [
        ("trivial", "Q", 1, "(1)", "1 ∈ Z"),
        ("real", "totally real", 2, "(2)", "constructible, Pisot deg. 2, tot. real"),
        ("tot. indef. quaternion", "totally real", 2, "(2)", "constructible, Pisot deg. 2, tot. real"),
        ("tot. indef. quaternion", "CM-field", 2, "(1)", "1 ∈ Z"),
        ("complex", "totally real", 2, "(2)", "constructible, Pisot, deg. 2, tot. real"),
        ("complex", "CM-field", 2, "(1)", "1 ∈ Z"),
        ("complex", "CM-field", 4, "(1), (2)", "1 ∈ Z or constructible, Pisot, deg. 2., tot. real"),
    ],
    3: [
        ("trivial", "Q", 1, "(1)", "1 ∈ Z"),
        ("real", "totally real", 3, "(2), (3)", "deg. 3, tot. real"),
        ("complex", "totally real", 3, "(2), (3)", "deg. 3, tot. real"),
        ("complex", "CM-field", 2, "(1)", "1 ∈ Z"),
        ("complex", "CM-field", 6, "(1), (2), (3)", "1 ∈ Z or deg. 3, tot. real"),
    ],
    4: [
        ("trivial", "Q", 1, "(1)", "λ1(f) = 1"),
        ("real", "totally real", 2, "(2)", "Constructible"),
        ("real", "totally real", 4, "(2) - (7)", "deg. ≤ 4"),
        ("tot. def. quaternion", "totally real", 2, "(2)", "Constructible"),
        ("tot. def. quaternion", "CM-field", 2, "(1)", "λ1(f) = 1"),
        ("tot. def. quaternion", "CM-field", 4, "(1), (2)", "Constructible"),
        ("tot. indef. quaternion", "totally real", 2, "(2)", "Constructible"),
        ("tot. indef. quaternion", "totally real", 4, "(2) - (7)", "deg. ≤ 4"),
        ("tot. indef. quaternion", "CM-field", 2, "(1)", "Constructible"),
        ("tot. indef. quaternion", "CM-field", 4, "(1), (2)", "Constructible"),
        ("tot. indef. quaternion", "real and complex embeddings", 4, "(6) - (12),", "deg. ≤ 4"),
        ("second kind", "totally real", 2, "(2)", "Constructible"),
        ("second kind", "CM-field", 2, "(1)", "λ1(f) = 1"),
        ("second kind", "CM-field", 4, "(1), (2)", "Constructible"),
        ("second kind", "totally real", 4, "(2) - (7)", "deg. ≤ 4"),
        ("second kind", "CM-field", 8, "at most (2) - (7)", "deg. ≤ 8"),
        ("second kind", "quad. ext. of CM-field of deg. 2", 4, "(1), (2)", "Constructible"),
    ],
}


def parse_diagram_set(text: str) -> set:
    """Labels named by a table cell such as '(2) - (7)' or '(1), (2)'."""
    import re

    out = set()
    t = text.replace("at most", "")
    for a, b in re.findall(r"\((\d+)\)\s*-\s*\((\d+)\)", t):
        out.update(range(int(a), int(b) + 1))
    t = re.sub(r"\((\d+)\)\s*-\s*\((\d+)\)", "", t)
    out.update(int(x) for x in re.findall(r"\((\d+)\)", t))
    return {f"({n})" for n in out}


@dataclass(frozen=True)
class TableRow:
    dimension: int
    multiplication: str
    field_type: str
    degree: int
    diagrams: str
    properties: str

    def to_json(self) -> dict:
        return {
            "dimension": self.dimension,
            "multiplication": self.multiplication,
            "Q(f)": self.field_type,
            "degree": self.degree,
            "diagram": self.diagrams,
            "properties": self.properties,
        }


def table_rows(dimension: int | None = None) -> list:
    dims = [dimension] if dimension is not None else sorted(TABLES)
    out = []
    for d in dims:
        if d not in TABLES:
            raise InvalidInput("tables exist for dimensions 1 to 4")
        out.extend(TableRow(d, *row) for row in TABLES[d])
    return out


# A condition is (i, a, j, b, s): sign(lambda_i^a - lambda_j^b) == s, lambda_0 = 1.
def _lt(i, j, a=1, b=1):
    return (i, a, j, b, -1)


def _gt(i, j, a=1, b=1):
    return (i, a, j, b, 1)


def _eq(i, j, a=1, b=1):
    return (i, a, j, b, 0)


_PEAK = [_lt(1, 2), _gt(2, 3), _gt(1, 2, 2, 1), _lt(2, 3, 1, 2)]

DIAGRAMS_G4 = [
    ("(1)", "λj = 1 for j = 0, ..., 4", [_eq(1, 0), _eq(2, 0), _eq(3, 0)]),
    ("(2)", "1 < λ1² = λ2 = λ3²", [_gt(1, 0), _eq(1, 2, 2, 1), _eq(3, 2, 2, 1)]),
    ("(3)", "λ1 < λ2 > λ3, λ1² > λ2 < λ3², λ1 < λ3", _PEAK + [_lt(1, 3)]),
    ("(4)", "λ1 < λ2 > λ3, λ1² > λ2 < λ3², λ1 = λ3", _PEAK + [_eq(1, 3)]),
    ("(5)", "λ1 < λ2 > λ3, λ1² > λ2 < λ3², λ1 > λ3", _PEAK + [_gt(1, 3)]),
    ("(6)", "λ1 < λ2 < λ3, λ1² > λ2, λ2² > λ3", [_lt(1, 2), _lt(2, 3), _gt(1, 2, 2, 1), _gt(2, 3, 2, 1)]),
    ("(7)", "λ1 > λ2 > λ3, λ1 < λ2², λ2 < λ3²", [_gt(1, 2), _gt(2, 3), _lt(1, 2, 1, 2), _lt(2, 3, 1, 2)]),
    ("(8)", "λ1 < λ2 < λ3, λ1² = λ2, λ2² > λ3", [_lt(1, 2), _lt(2, 3), _eq(1, 2, 2, 1), _gt(2, 3, 2, 1)]),
    ("(9)", "λ1 > λ2 > λ3, λ1 < λ2², λ2 = λ3²", [_gt(1, 2), _gt(2, 3), _lt(1, 2, 1, 2), _eq(2, 3, 1, 2)]),
    (
        "(10)",
        "λ1 < λ2 > λ3, λ1² = λ2 < λ3², λ1 < λ3",
        [_lt(1, 2), _gt(2, 3), _eq(1, 2, 2, 1), _lt(2, 3, 1, 2), _lt(1, 3)],
    ),
    (
        "(11)",
        "λ1 < λ2 > λ3, λ1² > λ2 = λ3², λ1 > λ3",
        [_lt(1, 2), _gt(2, 3), _gt(1, 2, 2, 1), _eq(2, 3, 1, 2), _gt(1, 3)],
    ),
    ("(12)", "λ1 = λ2 = λ3 > 1", [_eq(1, 2), _eq(2, 3), _gt(1, 0)]),
]

DIAGRAMS_G3 = [
    ("(1)", "λj = 1 for j = 0, ..., 3", [_eq(1, 0), _eq(2, 0)]),
    ("(2)", "1 < λ1 < λ2", [_gt(1, 0), _lt(1, 2)]),
    ("(3)", "λ1 > λ2 > 1", [_gt(1, 2), _gt(2, 0)]),
]

DIAGRAMS_G2 = [
    ("(1)", "λ1 = 1", [_eq(1, 0)]),
    ("(2)", "λ1 > 1", [_gt(1, 0)]),
]

DIAGRAMS_G1 = [("(1)", "λ0 = λ1 = 1", [_eq(1, 0)])]

DIAGRAMS = {1: DIAGRAMS_G1, 2: DIAGRAMS_G2, 3: DIAGRAMS_G3, 4: DIAGRAMS_G4}


@dataclass
class DiagramResult:
    g: int
    label: str | None
    condition: str
    pattern: str
    table_rows: list = field(default_factory=list)
    notes: list = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "g": self.g,
            "diagram": self.label,
            "condition": self.condition,
            "pattern": self.pattern,
            "table_rows": [r.to_json() for r in self.table_rows],
            "notes": list(self.notes),
        }


def _holds(prof: DynamicalProfile, cond, cache: dict) -> bool:
    i, a, j, b, s = cond
    key = (i, a, j, b)
    if key not in cache:
        cache[key] = prof.compare(i, j, a, b)
    return cache[key] == s


def inequality_string(prof: DynamicalProfile) -> str:
    """All pairwise relations among lambda_1..lambda_{g-1} and their squares."""
    g = prof.g
    sym = {-1: "<", 0: "=", 1: ">"}
    parts = []
    for i in range(1, g):
        parts.append(f"λ{i} {sym[prof.compare(i, 0)]} 1")
    for i in range(1, g):
        for j in range(i + 1, g):
            parts.append(f"λ{i} {sym[prof.compare(i, j)]} λ{j}")
            parts.append(f"λ{i}² {sym[prof.compare(i, j, 2, 1)]} λ{j}")
            parts.append(f"λ{i} {sym[prof.compare(i, j, 1, 2)]} λ{j}²")
    return ", ".join(parts)


def classify_profile(prof: DynamicalProfile, descriptor: EndoDescriptor | None = None) -> DiagramResult:
    g = prof.g
    if g not in DIAGRAMS:
        raise InvalidInput("diagram classification covers dimensions 1 to 4")
    cache: dict = {}
    matches = [(lab, cond) for lab, cond, cs in DIAGRAMS[g] if all(_holds(prof, c, cache) for c in cs)]
    pattern = inequality_string(prof)
    if len(matches) > 1:
        raise Unclassified(f"pattern matches several diagrams: {[m[0] for m in matches]}")
    if not matches:
        if g == 4:
            raise Unclassified(f"dimension-4 pattern matches no diagram: {pattern}")
        res = DiagramResult(g, None, pattern, pattern, notes=["no diagram stated for this pattern"])
    else:
        res = DiagramResult(g, matches[0][0], matches[0][1], pattern)
    if descriptor is not None:
        _attach_table_rows(res, descriptor)
    return res


def _attach_table_rows(res: DiagramResult, d: EndoDescriptor) -> None:
    if d.multiplication is None:
        return
    deg = d.l if d.l is not None else (d.minpoly.degree if d.minpoly is not None else None)
    rows = [
        r for r in table_rows(res.g)
        if r.multiplication == d.multiplication
        and (deg is None or r.degree == deg)
        and (d.field_type is None or r.field_type == d.field_type)
    ]
    res.table_rows = rows
    if not rows:
        res.notes.append("no table row matches the descriptor")
        return
    allowed = set().union(*(parse_diagram_set(r.diagrams) for r in rows))
    if res.label is not None and res.label not in allowed:
        res.notes.append(f"diagram {res.label} is not listed for this table row ({', '.join(sorted(allowed))})")


def classify_diagram(g: int, spectrum: Spectrum, descriptor: EndoDescriptor | None = None) -> DiagramResult:
    if not 1 <= g <= 4:
        raise InvalidInput("diagram classification covers dimensions 1 to 4")
    if spectrum.g != g:
        raise InvalidInput(f"spectrum has dimension {spectrum.g}, not {g}")
    prof = dynamical_degrees(spectrum, classify=False)
    res = classify_profile(prof, descriptor)
    res.notes.extend(spectrum.notes)
    return res


def real_multiplication_lambda1_is_pisot(P) -> tuple:
    """For a totally real cubic P in dimension 3: (diagram, is lambda_1 = rho_1^2 a Pisot number).

    lambda_1 is a root of the Graeffe transform of P, whose roots are the squares of the roots of P.
    """
    from ..exact.poly import graeffe, parse_polynomial
    from ..salem import is_pisot
    from .spectrum import field_descriptor, spectrum_from_field_endo

    P = parse_polynomial(P)
    spec = spectrum_from_field_endo(field_descriptor(P, g=3, m=1, multiplication="real"))
    res = classify_diagram(3, spec)
    G = graeffe(P)
    G = G if G.lc > 0 else -G
    return res.label, is_pisot(G)
