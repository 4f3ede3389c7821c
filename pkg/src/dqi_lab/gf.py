"""Prime-field arithmetic, polynomials over F_p and small exact linear algebra.

Field elements are plain Python ints held in canonical form ``0 <= a < p``.
Matrices are read-only ``numpy.int64`` arrays whose entries are canonical.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import DimensionMismatch, DomainError, ZeroInverse

# products of two elements plus accumulation must stay inside int64
MAX_MODULUS = 2**31


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    for d in range(3, math.isqrt(p) + 1, 2):
        if p % d == 0:
            return False
    return True


def _prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


@dataclass(frozen=True)
class PrimeField:
    """The field F_p for a prime ``p`` below 2**31."""

    p: int

    def __post_init__(self):
        if not isinstance(self.p, (int, np.integer)) or isinstance(self.p, bool):
            raise DomainError(f"field modulus must be an integer, got {self.p!r}")
        object.__setattr__(self, "p", int(self.p))
        if self.p >= MAX_MODULUS:
            raise DomainError(f"modulus {self.p} does not fit the native word guard")
        if not _is_prime(self.p):
            if self.p > 1 and len(_prime_factors(self.p)) == 1:
                raise DomainError(
                    f"{self.p} is a prime power; only prime fields (q = p) are supported"
                )
            raise DomainError(f"{self.p} is not prime")

    def __call__(self, a: int) -> int:
        return int(a) % self.p

    @property
    def order(self) -> int:
        return self.p

    def elements(self) -> range:
        return range(self.p)

    def add(self, a: int, b: int) -> int:
        return (a + b) % self.p

    def sub(self, a: int, b: int) -> int:
        return (a - b) % self.p

    def neg(self, a: int) -> int:
        return (-a) % self.p

    def mul(self, a: int, b: int) -> int:
        return (a * b) % self.p

    def pow(self, a: int, e: int) -> int:
        return pow(a % self.p, e, self.p)

    def inv(self, a: int) -> int:
        a %= self.p
        if a == 0:
            raise ZeroInverse(f"0 has no inverse in F_{self.p}")
        return pow(a, self.p - 2, self.p)

    def is_primitive(self, g: int) -> bool:
        g %= self.p
        if g == 0:
            return False
        order = self.p - 1
        return all(pow(g, order // q, self.p) != 1 for q in _prime_factors(order))

    def primitive_element(self) -> int:
        return next(g for g in range(1, self.p) if self.is_primitive(g))

    def array(self, values) -> np.ndarray:
        """Canonical read-only int64 array (vector or matrix) over this field."""
        arr = np.asarray(values)
        if arr.dtype.kind not in "iu":
            # python ints of any size, reduced exactly before narrowing
            arr = np.array(values, dtype=object)
        arr = np.mod(arr, self.p).astype(np.int64)
        arr.setflags(write=False)
        return arr

    def matrix(self, rows, shape: tuple[int, int] | None = None) -> np.ndarray:
        arr = self.array(rows)
        if shape is not None:
            arr = arr.reshape(shape)
        if arr.ndim != 2:
            raise DimensionMismatch(f"expected a 2-d matrix, got shape {arr.shape}")
        return arr


# functional aliases


def ff_add(a: int, b: int, F: PrimeField) -> int:
    return F.add(a, b)


def ff_sub(a: int, b: int, F: PrimeField) -> int:
    return F.sub(a, b)


def ff_mul(a: int, b: int, F: PrimeField) -> int:
    return F.mul(a, b)


def ff_neg(a: int, F: PrimeField) -> int:
    return F.neg(a)


def ff_inv(a: int, F: PrimeField) -> int:
    return F.inv(a)


def is_primitive(g: int, F: PrimeField) -> bool:
    return F.is_primitive(g)


@dataclass(frozen=True)
class FpPoly:
    """Univariate polynomial; ``coeffs[j]`` multiplies ``x**j``."""

    coeffs: tuple[int, ...]
    field: PrimeField

    def __post_init__(self):
        p = self.field.p
        object.__setattr__(self, "coeffs", tuple(int(c) % p for c in self.coeffs))

    @property
    def degree(self) -> int:
        for j in range(len(self.coeffs) - 1, -1, -1):
            if self.coeffs[j]:
                return j
        return -1

    def is_zero(self) -> bool:
        return self.degree == -1

    def __call__(self, x: int) -> int:
        return poly_eval(self, x)


def poly_reduce(int_coeffs: Iterable[int], F: PrimeField) -> FpPoly:
    return FpPoly(tuple(int(c) % F.p for c in int_coeffs), F)


def poly_eval(P: FpPoly, x: int) -> int:
    p = P.field.p
    x %= p
    acc = 0
    for c in reversed(P.coeffs):
        acc = (acc * x + c) % p
    return acc


# exact linear algebra over F_p


def matmul_mod(A: np.ndarray, B: np.ndarray, p: int) -> np.ndarray:
    A = np.asarray(A, dtype=np.int64)
    B = np.asarray(B, dtype=np.int64)
    if A.shape[-1] != B.shape[0]:
        raise DimensionMismatch(f"cannot multiply {A.shape} by {B.shape}")
    inner = A.shape[-1]
    if inner * (p - 1) ** 2 < 2**63:
        return (A @ B) % p
    out = np.zeros(A.shape[:-1] + B.shape[1:], dtype=np.int64)
    for j in range(inner):
        out = (out + np.multiply.outer(A[..., j], B[j]) % p) % p
    return out


def rref(M: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form and pivot columns of ``M`` over F_p."""
    R = np.array(M, dtype=np.int64) % p
    rows, cols = R.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(R[r:, c])[0]
        if nz.size == 0:
            continue
        piv = r + nz[0]
        if piv != r:
            R[[r, piv]] = R[[piv, r]]
        R[r] = (R[r] * pow(int(R[r, c]), p - 2, p)) % p
        factors = R[:, c].copy()
        factors[r] = 0
        R = (R - np.outer(factors, R[r])) % p
        pivots.append(c)
        r += 1
    return R, pivots


def rank(M: np.ndarray, p: int) -> int:
    M = np.asarray(M)
    if M.size == 0:
        return 0
    return len(rref(M, p)[1])


def nullspace(M: np.ndarray, p: int) -> np.ndarray:
    """Basis (as rows) of ``{v : M v = 0}`` over F_p."""
    M = np.asarray(M, dtype=np.int64)
    cols = M.shape[1]
    if M.shape[0] == 0:
        return np.eye(cols, dtype=np.int64)
    R, pivots = rref(M, p)
    free = [c for c in range(cols) if c not in pivots]
    basis = np.zeros((len(free), cols), dtype=np.int64)
    for i, f in enumerate(free):
        basis[i, f] = 1
        for r, pc in enumerate(pivots):
            basis[i, pc] = (-R[r, f]) % p
    return basis


def row_basis(M: np.ndarray, p: int) -> np.ndarray:
    """Nonzero rows of the reduced echelon form: a basis of the row space."""
    M = np.asarray(M, dtype=np.int64)
    if M.shape[0] == 0:
        return M.reshape(0, M.shape[1])
    R, pivots = rref(M, p)
    return R[: len(pivots)]


def same_row_space(A: np.ndarray, B: np.ndarray, p: int) -> bool:
    ra, rb = row_basis(A, p), row_basis(B, p)
    return ra.shape == rb.shape and bool(np.array_equal(ra, rb))


def enumerate_vectors(p: int, length: int) -> np.ndarray:
    """All of F_p^length in lexicographic order (first coordinate most significant)."""
    if length == 0:
        return np.zeros((1, 0), dtype=np.int64)
    grids = np.indices((p,) * length).reshape(length, -1)
    return grids.T.astype(np.int64)


def index_to_digits(index: int, p: int, length: int) -> tuple[int, ...]:
    digits = [0] * length
    for pos in range(length - 1, -1, -1):
        index, digits[pos] = divmod(index, p)
    return tuple(digits)


def digits_to_index(digits: Sequence[int], p: int) -> int:
    idx = 0
    for d in digits:
        idx = idx * p + int(d)
    return idx


def digits_to_indices(vectors: np.ndarray, p: int) -> np.ndarray:
    """Vectorised :func:`digits_to_index` over the rows of ``vectors``."""
    vectors = np.asarray(vectors, dtype=np.int64)
    if vectors.shape[-1] == 0:
        return np.zeros(vectors.shape[:-1], dtype=np.int64)
    weights = p ** np.arange(vectors.shape[-1] - 1, -1, -1, dtype=np.int64)
    return vectors @ weights


def vector_chunks(p: int, length: int, chunk: int = 1 << 16):
    """Yield ``(start, block)`` pairs covering F_p^length in lexicographic order."""
    total = p**length
    for start in range(0, total, chunk):
        stop = min(total, start + chunk)
        idx = np.arange(start, stop, dtype=np.int64)
        block = np.empty((stop - start, length), dtype=np.int64)
        for pos in range(length - 1, -1, -1):
            idx, block[:, pos] = np.divmod(idx, p)
        yield start, block
