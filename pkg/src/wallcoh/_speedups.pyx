# Row reduction over a prime field on dense int64 buffers.
# Entries must already be reduced mod p; p < 2**31 so products fit in int64.

import numpy as np
cimport numpy as cnp

cnp.import_array()


def rref_modp(cnp.int64_t[:, :] a, long long p):
    """In-place reduced row echelon form mod p. Returns (rank, pivot_cols)."""
    cdef Py_ssize_t m = a.shape[0]
    cdef Py_ssize_t n = a.shape[1]
    cdef Py_ssize_t r = 0, c, i, j, k
    cdef long long inv, f, tmp
    pivots = []
    for c in range(n):
        k = -1
        for i in range(r, m):
            if a[i, c] != 0:
                k = i
                break
        if k < 0:
            continue
        if k != r:
            for j in range(n):
                tmp = a[r, j]
                a[r, j] = a[k, j]
                a[k, j] = tmp
        inv = _inv_modp(a[r, c], p)
        if inv != 1:
            for j in range(c, n):
                a[r, j] = (a[r, j] * inv) % p
        for i in range(m):
            if i == r:
                continue
            f = a[i, c]
            if f != 0:
                for j in range(c, n):
                    a[i, j] = (a[i, j] - f * a[r, j]) % p
                    if a[i, j] < 0:
                        a[i, j] += p
        pivots.append(c)
        r += 1
        if r == m:
            break
    return r, pivots


cdef long long _inv_modp(long long x, long long p):
    # Fermat: p is prime and x != 0 mod p.
    cdef long long result = 1
    cdef long long base = x % p
    cdef long long e = p - 2
    while e > 0:
        if e & 1:
            result = (result * base) % p
        base = (base * base) % p
        e >>= 1
    return result
