"""Pure numpy implementations of the hot kernels.

Every function here has a twin with the same signature in ``_ckernels.pyx``.
Enumeration order is lexicographic with the first coordinate most significant.
"""

from __future__ import annotations

import numpy as np

_CHUNK = 1 << 16


def _chunk_vectors(p: int, n: int, start: int, stop: int) -> np.ndarray:
    idx = np.arange(start, stop, dtype=np.int64)
    out = np.empty((stop - start, n), dtype=np.int64)
    for pos in range(n - 1, -1, -1):
        idx, out[:, pos] = np.divmod(idx, p)
    return out


def satisfied_counts_all(B, mask, p):
    """Satisfied-constraint count for every assignment in F_p^n."""
    B = np.asarray(B, dtype=np.int64)
    mask = np.asarray(mask, dtype=np.uint8)
    m, n = B.shape
    total = p**n
    out = np.empty(total, dtype=np.int32)
    rows = np.arange(m)
    for start in range(0, total, _CHUNK):
        stop = min(total, start + _CHUNK)
        X = _chunk_vectors(p, n, start, stop)
        vals = (X @ B.T) % p
        out[start:stop] = mask[rows, vals].sum(axis=1)
    return out


def score_batch(B, X, mask, p):
    """Satisfied-constraint count for each row of ``X``."""
    B = np.asarray(B, dtype=np.int64)
    X = np.asarray(X, dtype=np.int64)
    mask = np.asarray(mask, dtype=np.uint8)
    vals = (X @ B.T) % p
    return mask[np.arange(B.shape[0]), vals].sum(axis=1).astype(np.int32)


def solve_mod(A, b, p):
    """Solve ``A x = b`` over F_p; ``None`` when ``A`` is singular."""
    M = np.concatenate(
        [np.asarray(A, dtype=np.int64) % p, (np.asarray(b, dtype=np.int64) % p)[:, None]],
        axis=1,
    )
    n = M.shape[0]
    for c in range(n):
        nz = np.nonzero(M[c:, c])[0]
        if nz.size == 0:
            return None
        piv = c + nz[0]
        if piv != c:
            M[[c, piv]] = M[[piv, c]]
        M[c] = (M[c] * pow(int(M[c, c]), p - 2, p)) % p
        f = M[:, c].copy()
        f[c] = 0
        M = (M - np.outer(f, M[c])) % p
    return M[:, n].copy()


def character_sum(S, coeffs, p):
    """``out[x] = sum_j coeffs[j] * exp(-2 pi i (S[j] . x) / p)`` over all x in F_p^n."""
    S = np.asarray(S, dtype=np.int64)
    coeffs = np.asarray(coeffs, dtype=np.complex128)
    n = S.shape[1]
    total = p**n
    roots = np.exp(-2j * np.pi * np.arange(p) / p)
    out = np.empty(total, dtype=np.complex128)
    for start in range(0, total, _CHUNK):
        stop = min(total, start + _CHUNK)
        X = _chunk_vectors(p, n, start, stop)
        phase = (X @ S.T) % p
        out[start:stop] = roots[phase] @ coeffs
    return out


def elementary_symmetric(Z, kmax):
    """Row-wise elementary symmetric polynomials e_0..e_kmax of the columns of Z."""
    Z = np.asarray(Z, dtype=np.float64)
    N, m = Z.shape
    E = np.zeros((N, kmax + 1), dtype=np.float64)
    E[:, 0] = 1.0
    for i in range(m):
        top = min(i + 1, kmax)
        # the product is materialised before the add, so it sees the old e_{k-1}
        E[:, 1 : top + 1] += Z[:, i : i + 1] * E[:, 0:top]
    return E
