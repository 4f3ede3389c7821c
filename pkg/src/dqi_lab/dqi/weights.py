"""Weight vectors, basis changes between them, and the semicircle law."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ..errors import BadDimension, DomainError, NormalizationFailure
from .state import NORM_TOL


@dataclass(frozen=True, eq=False)
class WeightVector:
    """Unit-norm coefficients ``w_0..w_ell`` of the DQI state in the |P^(k)> basis."""

    w: np.ndarray

    def __post_init__(self):
        w = np.array(self.w, dtype=np.complex128).reshape(-1)
        if w.size == 0:
            raise BadDimension("weight vector needs at least one entry")
        if abs(np.linalg.norm(w) - 1.0) > NORM_TOL:
            raise NormalizationFailure(f"weights have norm {np.linalg.norm(w):.12g}, expected 1")
        w.setflags(write=False)
        object.__setattr__(self, "w", w)

    @property
    def ell(self) -> int:
        return self.w.size - 1

    def __len__(self) -> int:
        return self.w.size

    def __iter__(self):
        return iter(self.w)

    @classmethod
    def normalized(cls, values) -> WeightVector:
        v = np.asarray(values, dtype=np.complex128)
        norm = np.linalg.norm(v)
        if norm == 0:
            raise NormalizationFailure("cannot normalize the zero weight vector")
        return cls(v / norm)

    @classmethod
    def uniform_only(cls) -> WeightVector:
        return cls(np.ones(1))

    @classmethod
    def from_u(cls, u, m: int, n: int, p: int) -> WeightVector:
        return cls.normalized(u_to_w(u, m, n, p))

    def to_u(self, m: int, n: int, p: int) -> np.ndarray:
        return w_to_u(self.w, m, n, p)


def _scales(ell: int, m: int, n: int, p: int) -> np.ndarray:
    if ell > m:
        raise BadDimension(f"degree {ell} exceeds m = {m}")
    return np.array([math.sqrt(p**n * math.comb(m, k)) for k in range(ell + 1)])


def u_to_w(u, m: int, n: int, p: int) -> np.ndarray:
    """``w_k = u_k sqrt(p^n C(m, k))``.

    ``u_k`` multiplies the elementary symmetric polynomial of ``h_i = sqrt(p) g_i``;
    for p = 2 those are the +-1 constraint values f_i themselves.
    """
    u = np.asarray(u, dtype=np.complex128)
    return u * _scales(u.size - 1, m, n, p)


def w_to_u(w, m: int, n: int, p: int) -> np.ndarray:
    w = np.asarray(w, dtype=np.complex128)
    return w / _scales(w.size - 1, m, n, p)


def _power_to_symmetric(ell: int, m: int) -> np.ndarray:
    """Column j holds f^j in the e_k basis, using f e_k = (k+1) e_(k+1) + (m-k+1) e_(k-1)."""
    if ell > m:
        raise BadDimension(f"degree {ell} exceeds m = {m}")
    T = np.zeros((ell + 1, ell + 1))
    for k in range(ell + 1):
        if k + 1 <= ell:
            T[k + 1, k] = k + 1
        if k >= 1:
            T[k - 1, k] = m - k + 1
    C = np.zeros((ell + 1, ell + 1))
    col = np.zeros(ell + 1)
    col[0] = 1.0
    for j in range(ell + 1):
        C[:, j] = col
        col = T @ col
    return C


def alpha_to_u(alpha, m: int) -> np.ndarray:
    """Rewrite ``sum_j alpha_j f^j`` (f = sum of +-1 terms) as ``sum_k u_k e_k(f_1..f_m)``."""
    alpha = np.asarray(alpha, dtype=np.complex128)
    return _power_to_symmetric(alpha.size - 1, m) @ alpha


def u_to_alpha(u, m: int) -> np.ndarray:
    u = np.asarray(u, dtype=np.complex128)
    # upper triangular with diagonal j!, so always solvable
    return np.linalg.solve(_power_to_symmetric(u.size - 1, m), u)


def semicircle(ell_over_m: float, r_over_p: float) -> float:
    """Asymptotic optimal <s>/m for DQI at decoding radius ratio ``ell/m``."""
    for name, v in (("ell/m", ell_over_m), ("r/p", r_over_p)):
        if not 0.0 <= v <= 1.0 or math.isnan(v):
            raise DomainError(f"{name} = {v} is outside [0, 1]")
    if r_over_p >= 1.0 - ell_over_m:
        return 1.0
    a = math.sqrt(ell_over_m * (1.0 - r_over_p))
    b = math.sqrt(r_over_p * (1.0 - ell_over_m))
    return (a + b) ** 2


def tridiagonal_matrix(m: int, p: int, r: int, ell: int) -> np.ndarray:
    """Exact <P^(j)| s |P^(k)> for constant-r instances whose dual distance exceeds 2 ell + 1."""
    if not 1 <= r <= p - 1 or not 0 <= ell <= m:
        raise BadDimension(f"need 1 <= r <= p-1 and 0 <= ell <= m, got r={r}, ell={ell}, m={m}")
    k = np.arange(ell + 1)
    M = np.diag(m * r / p + (p - 2 * r) * k / p).astype(np.float64)
    off = math.sqrt(r * (p - r)) / p * np.sqrt((k[:-1] + 1) * (m - k[:-1]))
    M[k[:-1], k[:-1] + 1] = off
    M[k[:-1] + 1, k[:-1]] = off
    return M


def principal_vector(M: np.ndarray) -> tuple[np.ndarray, float]:
    """Top eigenpair of a Hermitian matrix, first nonzero entry made real positive."""
    vals, vecs = np.linalg.eigh(M)
    v = vecs[:, -1].astype(np.complex128)
    j = int(np.argmax(np.abs(v) > 1e-12))
    v = v * (abs(v[j]) / v[j])
    return v / np.linalg.norm(v), float(vals[-1])
