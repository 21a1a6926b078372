# cython: language_level=3
"""Compiled zero-divisor search in O/pO; same contract as the Python version."""
from libc.stdlib cimport malloc, free


def find_zero_divisor(table, int n, int p):
    cdef int i, j, k, a
    cdef long s
    cdef long total = 1
    cdef long tail = 1
    cdef long ui, vi, idx
    cdef int *L = <int *> malloc(n * n * n * sizeof(int))
    cdef int *u = <int *> malloc(n * sizeof(int))
    cdef int *v = <int *> malloc(n * sizeof(int))
    cdef long *M = <long *> malloc(n * n * sizeof(long))
    cdef bint found = False
    cdef bint nonzero
    if L == NULL or u == NULL or v == NULL or M == NULL:
        free(L); free(u); free(v); free(M)
        raise MemoryError()
    try:
        for i in range(n):
            for j in range(n):
                for k in range(n):
                    L[(i * n + j) * n + k] = table[i][j][k] % p
        for i in range(n):
            total *= p
        tail = total // p
        for ui in range(total):
            idx = ui
            for i in range(n - 1, -1, -1):
                u[i] = idx % p
                idx //= p
            if ui == 0:
                continue
            for k in range(n):
                for j in range(n):
                    s = 0
                    for i in range(n):
                        s += u[i] * L[(i * n + j) * n + k]
                    M[k * n + j] = s % p
            for vi in range((u[0] + 1) * tail):
                if vi == 0:
                    continue
                idx = vi
                for i in range(n - 1, -1, -1):
                    v[i] = idx % p
                    idx //= p
                found = True
                for k in range(n):
                    s = 0
                    for j in range(n):
                        s += M[k * n + j] * v[j]
                    if s % p:
                        found = False
                        break
                if found:
                    return tuple([u[i] for i in range(n)]), tuple([v[i] for i in range(n)])
        return None
    finally:
        free(L); free(u); free(v); free(M)
