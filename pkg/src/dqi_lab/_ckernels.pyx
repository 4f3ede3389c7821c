# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled twins of the kernels in ``_pykernels``.

Assignments are walked with an odometer so that each step updates the
running dot products by one column instead of recomputing them.
"""

import numpy as np

from libc.math cimport M_PI, cos, sin


def satisfied_counts_all(B, mask, long p):
    cdef const long[:, ::1] Bv = np.ascontiguousarray(B, dtype=np.int64)
    cdef const unsigned char[:, ::1] mv = np.ascontiguousarray(mask, dtype=np.uint8)
    cdef Py_ssize_t m = Bv.shape[0], n = Bv.shape[1]
    cdef Py_ssize_t total = p ** n, t, i, pos
    out_arr = np.empty(total, dtype=np.int32)
    cdef int[::1] out = out_arr
    cdef long[::1] acc = np.zeros(m, dtype=np.int64)
    cdef long[::1] digit = np.zeros(max(n, 1), dtype=np.int64)
    cdef int count
    for t in range(total):
        count = 0
        for i in range(m):
            count += mv[i, acc[i]]
        out[t] = count
        # odometer increment, last coordinate fastest
        pos = n - 1
        while pos >= 0:
            digit[pos] += 1
            if digit[pos] < p:
                for i in range(m):
                    acc[i] = (acc[i] + Bv[i, pos]) % p
                break
            digit[pos] = 0
            for i in range(m):
                acc[i] = (acc[i] - (p - 1) * Bv[i, pos]) % p
                if acc[i] < 0:
                    acc[i] += p
            pos -= 1
    return out_arr


def score_batch(B, X, mask, long p):
    cdef const long[:, ::1] Bv = np.ascontiguousarray(B, dtype=np.int64)
    cdef const long[:, ::1] Xv = np.ascontiguousarray(X, dtype=np.int64)
    cdef const unsigned char[:, ::1] mv = np.ascontiguousarray(mask, dtype=np.uint8)
    cdef Py_ssize_t m = Bv.shape[0], n = Bv.shape[1], k = Xv.shape[0]
    cdef Py_ssize_t t, i, j
    cdef long s
    cdef int count
    # with n (p-1)^2 below 2^63 the dot product fits in a long and needs one reduction
    cdef bint lazy = p < (1 << 26) and n < (1 << 11)
    out_arr = np.empty(k, dtype=np.int32)
    cdef int[::1] out = out_arr
    for t in range(k):
        count = 0
        for i in range(m):
            s = 0
            if lazy:
                for j in range(n):
                    s += Bv[i, j] * Xv[t, j]
                s %= p
            else:
                for j in range(n):
                    s = (s + Bv[i, j] * Xv[t, j]) % p
            count += mv[i, s]
        out[t] = count
    return out_arr


cdef long _inv_mod(long a, long p):
    cdef long result = 1, base = a % p, e = p - 2
    while e > 0:
        if e & 1:
            result = (result * base) % p
        base = (base * base) % p
        e >>= 1
    return result


def solve_mod(A, b, long p):
    cdef Py_ssize_t n = A.shape[0]
    M_arr = np.empty((n, n + 1), dtype=np.int64)
    M_arr[:, :n] = np.asarray(A, dtype=np.int64) % p
    M_arr[:, n] = np.asarray(b, dtype=np.int64) % p
    cdef long[:, ::1] M = M_arr
    cdef Py_ssize_t c, r, j, piv
    cdef long tmp, inv, f
    for c in range(n):
        piv = -1
        for r in range(c, n):
            if M[r, c] != 0:
                piv = r
                break
        if piv < 0:
            return None
        if piv != c:
            for j in range(n + 1):
                tmp = M[c, j]
                M[c, j] = M[piv, j]
                M[piv, j] = tmp
        inv = _inv_mod(M[c, c], p)
        for j in range(n + 1):
            M[c, j] = (M[c, j] * inv) % p
        for r in range(n):
            if r == c or M[r, c] == 0:
                continue
            f = M[r, c]
            for j in range(n + 1):
                M[r, j] = (M[r, j] - f * M[c, j]) % p
                if M[r, j] < 0:
                    M[r, j] += p
    return M_arr[:, n].copy()


def character_sum(S, coeffs, long p):
    cdef const long[:, ::1] Sv = np.ascontiguousarray(S, dtype=np.int64)
    cdef const double complex[::1] cv = np.ascontiguousarray(coeffs, dtype=np.complex128)
    cdef Py_ssize_t J = Sv.shape[0], n = Sv.shape[1]
    cdef Py_ssize_t total = p ** n, t, j, pos
    out_arr = np.zeros(total, dtype=np.complex128)
    cdef double complex[::1] out = out_arr
    roots_arr = np.empty(p, dtype=np.complex128)
    cdef double complex[::1] roots = roots_arr
    cdef Py_ssize_t a
    for a in range(p):
        roots[a] = cos(2.0 * M_PI * a / p) - 1j * sin(2.0 * M_PI * a / p)
    cdef long[::1] acc = np.zeros(max(J, 1), dtype=np.int64)
    cdef long[::1] digit = np.zeros(max(n, 1), dtype=np.int64)
    cdef double complex total_amp
    for t in range(total):
        total_amp = 0
        for j in range(J):
            total_amp = total_amp + cv[j] * roots[acc[j]]
        out[t] = total_amp
        pos = n - 1
        while pos >= 0:
            digit[pos] += 1
            if digit[pos] < p:
                for j in range(J):
                    acc[j] = (acc[j] + Sv[j, pos]) % p
                break
            digit[pos] = 0
            for j in range(J):
                acc[j] = (acc[j] - (p - 1) * Sv[j, pos]) % p
                if acc[j] < 0:
                    acc[j] += p
            pos -= 1
    return out_arr


def elementary_symmetric(Z, long kmax):
    cdef const double[:, ::1] Zv = np.ascontiguousarray(Z, dtype=np.float64)
    cdef Py_ssize_t N = Zv.shape[0], m = Zv.shape[1], r, i, k, top
    E_arr = np.zeros((N, kmax + 1), dtype=np.float64)
    cdef double[:, ::1] E = E_arr
    for r in range(N):
        E[r, 0] = 1.0
        for i in range(m):
            top = i + 1 if i + 1 < kmax else kmax
            k = top
            while k >= 1:
                E[r, k] += Zv[r, i] * E[r, k - 1]
                k -= 1
    return E_arr
