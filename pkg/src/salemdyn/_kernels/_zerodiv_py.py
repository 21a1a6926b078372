"""Pure-Python zero-divisor search in O/pO (reference implementation)."""
from __future__ import annotations


def _vectors(n: int, p: int, first_max: int | None = None):
    """Residue vectors in lexicographic order, first coordinate most significant."""
    top = p if first_max is None else first_max + 1
    total_tail = p ** (n - 1)
    for a in range(top):
        for idx in range(total_tail):
            v = [a]
            digits = []
            for _ in range(n - 1):
                digits.append(idx % p)
                idx //= p
            v.extend(reversed(digits))
            yield v


def find_zero_divisor(table, n: int, p: int):
    """First (u, v), both nonzero, with u * v == 0 mod p, or None.

    ``table[i][j]`` lists the coordinates of e_i * e_j.  The order matches
    nested loops u_1, ..., u_n, v_1 (0..u_1), v_2, ..., v_n.
    """
    for u in _vectors(n, p):
        if not any(u):
            continue
        # M[k][j] = sum_i u_i table[i][j][k]  (mod p)
        M = [[sum(u[i] * table[i][j][k] for i in range(n)) % p for j in range(n)] for k in range(n)]
        for v in _vectors(n, p, first_max=u[0]):
            if not any(v):
                continue
            for row in M:
                s = 0
                for j in range(n):
                    s += row[j] * v[j]
                if s % p:
                    break
            else:
                return tuple(u), tuple(v)
    return None
