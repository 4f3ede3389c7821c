"""Closed-form DQI states: the error-sum construction and the symmetric-polynomial basis."""

from __future__ import annotations

import itertools
import math

import numpy as np

from .. import kernels
from ..codes import ENUMERATION_LIMIT
from ..errors import BadDimension, DimensionMismatch, NormalizationFailure, TooLarge
from ..gf import digits_to_indices, enumerate_vectors, vector_chunks
from ..problems import MaxLinsatInstance
from .functions import g_table, g_tilde_table
from .state import STATE_LIMIT, StateVector, check_state_size
from .weights import WeightVector, principal_vector, tridiagonal_matrix

NORM_FAILURE_TOL = 1e-6


def _as_weights(w) -> WeightVector:
    return w if isinstance(w, WeightVector) else WeightVector(w)


def syndrome_coefficients(inst: MaxLinsatInstance, w) -> np.ndarray:
    """``c[s] = sum_{|y| <= ell, B^T y = s} w_|y| C(m,|y|)^(-1/2) prod_i gt_i(y_i)`` over s in F_p^n."""
    w = _as_weights(w)
    p, m, n = inst.p, inst.m, inst.n
    if w.ell > m:
        raise BadDimension(f"degree {w.ell} exceeds m = {m}")
    check_state_size(p, n)
    terms = sum(math.comb(m, k) * (p - 1) ** k for k in range(w.ell + 1))
    if terms > ENUMERATION_LIMIT:
        raise TooLarge(f"{terms} error vectors of weight <= {w.ell}")
    Gt = g_tilde_table(inst)
    coeffs = np.zeros(p**n, dtype=np.complex128)
    coeffs[0] += w.w[0]
    for k in range(1, w.ell + 1):
        values = enumerate_vectors(p - 1, k) + 1
        scale = w.w[k] / math.sqrt(math.comb(m, k))
        for support in itertools.combinations(range(m), k):
            rows = list(support)
            c = scale * np.prod(Gt[rows, values], axis=1)
            S = (values @ inst.B[rows]) % p
            np.add.at(coeffs, digits_to_indices(S, p), c)
    return coeffs


def _fourier_from_coefficients(inst: MaxLinsatInstance, coeffs: np.ndarray) -> np.ndarray:
    p, n = inst.p, inst.n
    idx = np.nonzero(coeffs)[0]
    # a handful of syndromes is cheaper as a direct character sum than a full transform
    if idx.size * coeffs.size > 8 * coeffs.size * max(1, int(math.log2(coeffs.size))):
        return np.fft.fftn(coeffs.reshape((p,) * n), norm="ortho").reshape(-1)
    S = np.empty((idx.size, n), dtype=np.int64)
    rest = idx.copy()
    for pos in range(n - 1, -1, -1):
        rest, S[:, pos] = np.divmod(rest, p)
    return kernels.character_sum(S, coeffs[idx], p) / math.sqrt(p**n)


def build_dqi_direct(inst: MaxLinsatInstance, w, check_norm: bool = True) -> StateVector:
    """DQI state summed over every error vector of weight <= ell."""
    amps = _fourier_from_coefficients(inst, syndrome_coefficients(inst, w))
    norm = float(np.linalg.norm(amps))
    if check_norm and abs(norm - 1.0) > NORM_FAILURE_TOL:
        raise NormalizationFailure(f"DQI state has norm {norm:.9g}; is 2 ell >= d_perp?")
    return StateVector(inst.field, inst.n, amps)


def _pk_amplitudes(inst: MaxLinsatInstance, ell: int) -> np.ndarray:
    """Column k holds e_k(g_1(b_1.x), ..., g_m(b_m.x)) for every x, unnormalized."""
    p, m, n = inst.p, inst.m, inst.n
    if not 0 <= ell <= m:
        raise BadDimension(f"need 0 <= ell <= m, got ell={ell}, m={m}")
    check_state_size(p, n)
    G = g_table(inst)
    rows = np.arange(m)
    out = np.empty((p**n, ell + 1), dtype=np.float64)
    for start, X in vector_chunks(p, n):
        vals = (X @ inst.B.T) % p
        out[start : start + X.shape[0]] = kernels.elementary_symmetric(G[rows, vals], ell)
    return out


def pk_norms(inst: MaxLinsatInstance, ell: int) -> np.ndarray:
    """Norm of each e_k amplitude vector when the |P^(k)> are orthogonal."""
    p, m, n = inst.p, inst.m, inst.n
    return np.array([math.sqrt(p ** (n - k) * math.comb(m, k)) for k in range(ell + 1)])


def pk_matrix(inst: MaxLinsatInstance, ell: int, check: bool = True) -> np.ndarray:
    """Amplitudes of |P^(0)> .. |P^(ell)> as columns, scaled by the orthogonal-case norms."""
    A = _pk_amplitudes(inst, ell) / pk_norms(inst, ell)
    if check:
        actual = np.linalg.norm(A, axis=0)
        bad = np.nonzero(np.abs(actual - 1.0) > NORM_FAILURE_TOL)[0]
        if bad.size:
            raise NormalizationFailure(
                f"|P^({int(bad[0])})> has norm {actual[bad[0]]:.9g}; is 2 ell >= d_perp?"
            )
    return A.astype(np.complex128)


def build_pk_state(inst: MaxLinsatInstance, k: int, check: bool = True) -> StateVector:
    return StateVector(inst.field, inst.n, pk_matrix(inst, k, check)[:, k])


def build_pk_states(inst: MaxLinsatInstance, ell: int, check: bool = True) -> list[StateVector]:
    A = pk_matrix(inst, ell, check)
    return [StateVector(inst.field, inst.n, A[:, k]) for k in range(ell + 1)]


def gram_matrix(inst: MaxLinsatInstance, ell: int) -> np.ndarray:
    """Overlaps of the |P^(k)>, k <= ell; the identity exactly when they are orthonormal."""
    A = pk_matrix(inst, ell, check=False)
    return A.conj().T @ A


def dqi_from_pk(inst: MaxLinsatInstance, w) -> StateVector:
    """``sum_k w_k |P^(k)>``."""
    w = _as_weights(w)
    return StateVector(inst.field, inst.n, pk_matrix(inst, w.ell) @ w.w)


def expected_satisfaction(state: StateVector, inst: MaxLinsatInstance) -> float:
    """Exact mean number of satisfied constraints when measuring ``state``."""
    if state.p != inst.p or state.sites != inst.n:
        raise DimensionMismatch(
            f"state lives on F_{state.p}^{state.sites}, instance on F_{inst.p}^{inst.n}"
        )
    prob = np.abs(state.amplitudes) ** 2
    return float(prob @ inst.satisfied_counts() / prob.sum())


def satisfaction_matrix(inst: MaxLinsatInstance, ell: int) -> np.ndarray:
    """``M[j, k] = sum_x s(x) conj(P^(j)(x)) P^(k)(x)``."""
    A = pk_matrix(inst, ell)
    s = inst.satisfied_counts().astype(np.float64)
    M = A.conj().T @ (s[:, None] * A)
    return (M + M.conj().T) / 2


def optimize_weights(inst: MaxLinsatInstance, ell: int, method: str = "auto") -> tuple[WeightVector, float]:
    """Weights maximizing the expected satisfaction, and that maximum.

    ``states`` diagonalizes the matrix built from the simulated |P^(k)>; ``tridiagonal``
    uses its closed form, valid for constant r when 2 ell + 1 < d_perp.
    """
    if method == "auto":
        method = "states" if inst.p**inst.n <= STATE_LIMIT else "tridiagonal"
    if method == "states":
        M = satisfaction_matrix(inst, ell)
    elif method == "tridiagonal":
        M = tridiagonal_matrix(inst.m, inst.p, inst.r, ell)
    else:
        raise BadDimension(f"unknown method {method!r}")
    v, value = principal_vector(M)
    return WeightVector(v), value
