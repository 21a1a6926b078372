"""Small exact linear algebra over Z and Q (lists of lists)."""
from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from ..errors import InvalidInput
from .poly import RatPolynomial, make_poly


def identity(n: int) -> list:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def mat_mul(a, b) -> list:
    m, k, n = len(a), len(b), len(b[0]) if b else 0
    return [[sum(a[i][t] * b[t][j] for t in range(k)) for j in range(n)] for i in range(m)]


def mat_vec(a, v) -> list:
    return [sum(row[j] * v[j] for j in range(len(v))) for row in a]


def transpose(a) -> list:
    return [list(r) for r in zip(*a)] if a else []


def det_bareiss(a: Sequence[Sequence[int]]) -> int:
    """Fraction-free determinant of an integer matrix."""
    m = [list(map(int, r)) for r in a]
    n = len(m)
    if n == 0:
        return 1
    if any(len(r) != n for r in m):
        raise InvalidInput("determinant needs a square matrix")
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def det_fraction(a) -> Fraction:
    """Determinant over Q by Gaussian elimination."""
    m = [[Fraction(x) for x in r] for r in a]
    n = len(m)
    d = Fraction(1)
    for k in range(n):
        piv = next((i for i in range(k, n) if m[i][k] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != k:
            m[k], m[piv] = m[piv], m[k]
            d = -d
        d *= m[k][k]
        for i in range(k + 1, n):
            f = m[i][k] / m[k][k]
            if f:
                for j in range(k, n):
                    m[i][j] -= f * m[k][j]
    return d


def charpoly(a) -> RatPolynomial:
    """det(x I - A) by the Faddeev-LeVerrier recursion (exact over Q)."""
    n = len(a)
    A = [[Fraction(x) for x in r] for r in a]
    coeffs = [Fraction(0)] * (n + 1)
    coeffs[n] = Fraction(1)
    M = [[Fraction(0)] * n for _ in range(n)]
    c = Fraction(1)
    for k in range(1, n + 1):
        # M_k = A M_{k-1} + c_{n-k+1} I
        AM = [[sum(A[i][t] * M[t][j] for t in range(n)) for j in range(n)] for i in range(n)]
        M = [[AM[i][j] + (c if i == j else 0) for j in range(n)] for i in range(n)]
        AM = [[sum(A[i][t] * M[t][j] for t in range(n)) for j in range(n)] for i in range(n)]
        c = -sum(AM[i][i] for i in range(n)) / k
        coeffs[n - k] = c
    return make_poly(coeffs)


def row_reduce(rows) -> tuple:
    """Reduced row echelon form over Q; returns (rref rows, pivot columns)."""
    m = [[Fraction(x) for x in r] for r in rows]
    if not m:
        return [], []
    ncol = len(m[0])
    pivots = []
    r = 0
    for c in range(ncol):
        piv = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def solve_in_span(rows, target) -> list | None:
    """Coefficients t with sum t_i rows[i] == target, or None if target is not in the span."""
    k = len(rows)
    if k == 0:
        return [] if all(x == 0 for x in target) else None
    n = len(target)
    # columns = rows; augmented system  R^T t = target
    aug = [[Fraction(rows[i][j]) for i in range(k)] + [Fraction(target[j])] for j in range(n)]
    red, piv = row_reduce(aug)
    if k in piv:
        return None
    t = [Fraction(0)] * k
    for r, c in zip(red, piv):
        t[c] = r[k]
    return t


def sylvester_matrix(p: RatPolynomial, q: RatPolynomial) -> list:
    """Sylvester matrix whose determinant is Res(p, q)."""
    m, n = p.degree, q.degree
    size = m + n
    rows = []
    pc = list(reversed(p.coeffs))
    qc = list(reversed(q.coeffs))
    for i in range(n):
        rows.append([0] * i + pc + [0] * (size - m - 1 - i))
    for i in range(m):
        rows.append([0] * i + qc + [0] * (size - n - 1 - i))
    return rows


def exterior_power(a, k: int) -> list:
    """The k-th compound matrix (all k x k minors) in lexicographic index order."""
    from itertools import combinations

    n = len(a)
    idx = list(combinations(range(n), k))
    out = []
    for I in idx:
        row = []
        for J in idx:
            sub = [[a[i][j] for j in J] for i in I]
            row.append(det_bareiss(sub) if all(isinstance(x, int) for r in sub for x in r) else det_fraction(sub))
        out.append(row)
    return out
