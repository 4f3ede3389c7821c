"""Linear block codes over F_p.

Vectors are row vectors: ``c = m G`` encodes and ``s = y H^T`` is the syndrome.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Iterator, Sequence

import numpy as np

from .errors import (
    AmbiguousSolution,
    BadDimension,
    DimensionMismatch,
    DuplicatePoints,
    NoSolution,
    RankDeficient,
    TooLarge,
)
from .gf import PrimeField, digits_to_indices, enumerate_vectors, matmul_mod, nullspace, rank, rref

ENUMERATION_LIMIT = 2**24
_CHUNK = 1 << 15


@dataclass(frozen=True)
class DecodeResult:
    error: np.ndarray
    codeword: np.ndarray | None
    unique: bool


class SyndromeTable:
    """Every error of weight <= wmax indexed by its syndrome."""

    def __init__(self, code: LinearCode, wmax: int):
        p, n = code.field.p, code.n
        self.wmax = wmax
        self.redundancy = code.n - code.k
        size = sum(math.comb(n, w) * (p - 1) ** w for w in range(wmax + 1))
        if size > ENUMERATION_LIMIT:
            raise TooLarge(f"syndrome table would hold {size} errors")
        self._errors: dict[int, np.ndarray] = {}
        self._ambiguous: set[int] = set()
        Ht = code.H.T
        for w in range(wmax + 1):
            values = enumerate_vectors(p - 1, w) + 1 if w else np.zeros((1, 0), np.int64)
            for support in itertools.combinations(range(n), w):
                E = np.zeros((values.shape[0], n), dtype=np.int64)
                E[:, list(support)] = values
                keys = digits_to_indices(matmul_mod(E, Ht, p), p)
                for key, e in zip(keys.tolist(), E):
                    if key in self._errors:
                        self._ambiguous.add(key)
                    else:
                        self._errors[key] = e

    def __len__(self) -> int:
        return len(self._errors)

    @property
    def ambiguous(self) -> bool:
        return bool(self._ambiguous)

    def lookup(self, syndrome: np.ndarray, p: int) -> np.ndarray:
        key = int(digits_to_indices(np.asarray(syndrome)[None, :], p)[0])
        if key in self._ambiguous:
            raise AmbiguousSolution(
                f"syndrome {np.asarray(syndrome).tolist()} has several preimages of weight <= {self.wmax}"
            )
        try:
            return self._errors[key].copy()
        except KeyError:
            raise NoSolution(f"no error of weight <= {self.wmax} has this syndrome") from None


class LinearCode:
    """An [n, k] code given by a full-rank generator and a matching parity check."""

    def __init__(self, G, field: PrimeField, H=None, name: str | None = None):
        G = np.asarray(G, dtype=np.int64)
        if G.size == 0 and H is not None:
            G = G.reshape(0, np.asarray(H).shape[1])
        if G.ndim != 2:
            raise DimensionMismatch(f"generator must be 2-d, got shape {G.shape}")
        self.field = field
        self.G = G % field.p
        self.G.setflags(write=False)
        self.k, self.n = self.G.shape
        if rank(self.G, field.p) != self.k:
            raise RankDeficient("generator rows are linearly dependent")
        if H is None:
            H = _parity_check_from_generator(self.G, field.p)
        H = np.asarray(H, dtype=np.int64).reshape(-1, self.n) % field.p
        if H.shape[0] != self.n - self.k or rank(H, field.p) != H.shape[0]:
            raise RankDeficient(f"parity check must have full rank {self.n - self.k}")
        if self.k and np.any(matmul_mod(self.G, H.T, field.p)):
            raise DimensionMismatch("G H^T is not zero")
        H.setflags(write=False)
        self.H = H
        self.name = name or f"[{self.n},{self.k}]_{field.p}"
        self._distance: int | float | None = None
        self._tables: dict[int, SyndromeTable] = {}

    @classmethod
    def from_rows(cls, rows, field: PrimeField, name: str | None = None) -> LinearCode:
        """Code spanned by ``rows``; dependent rows are dropped."""
        rows = np.asarray(rows, dtype=np.int64) % field.p
        R, pivots = rref(rows, field.p)
        return cls(R[: len(pivots)], field, name=name)

    @classmethod
    def from_parity_check(cls, H, field: PrimeField, name: str | None = None) -> LinearCode:
        """The kernel of ``H``, keeping ``H`` itself as the parity check."""
        H = np.asarray(H, dtype=np.int64) % field.p
        G = nullspace(H, field.p)
        return cls(G.reshape(-1, H.shape[1]), field, H=H, name=name)

    def __repr__(self) -> str:
        return f"LinearCode({self.name})"

    @property
    def size(self) -> int:
        return self.field.p**self.k

    def contains(self, y) -> bool:
        return not np.any(syndrome(y, self))

    def codewords(self) -> Iterator[np.ndarray]:
        """Chunks of codewords, in lexicographic message order."""
        p = self.field.p
        if self.size > ENUMERATION_LIMIT:
            raise TooLarge(f"{self.name} has {self.size} codewords")
        total = self.size
        for start in range(0, total, _CHUNK):
            idx = np.arange(start, min(total, start + _CHUNK), dtype=np.int64)
            msgs = np.empty((idx.size, self.k), dtype=np.int64)
            for pos in range(self.k - 1, -1, -1):
                idx, msgs[:, pos] = np.divmod(idx, p)
            yield matmul_mod(msgs, self.G, p) if self.k else np.zeros((1, self.n), np.int64)

    @property
    def distance(self) -> int | float:
        if self._distance is None:
            self._distance = min_distance(self)
        return self._distance

    def syndrome_table(self, wmax: int) -> SyndromeTable:
        if wmax not in self._tables:
            self._tables[wmax] = SyndromeTable(self, wmax)
        return self._tables[wmax]


def _parity_check_from_generator(G: np.ndarray, p: int) -> np.ndarray:
    # systematic form [I | P] up to a column permutation, then H = [-P^T | I]
    k, n = G.shape
    if k == 0:
        return np.eye(n, dtype=np.int64)
    R, pivots = rref(G, p)
    free = [c for c in range(n) if c not in pivots]
    perm = pivots + free
    P = R[:, free]
    H_perm = np.concatenate([(-P.T) % p, np.eye(n - k, dtype=np.int64)], axis=1)
    H = np.empty_like(H_perm)
    H[:, perm] = H_perm
    return H


def hamming_weight(v) -> int:
    return int(np.count_nonzero(np.asarray(v)))


def encode(message: Sequence[int], C: LinearCode) -> np.ndarray:
    m = np.asarray(message, dtype=np.int64)
    if m.shape != (C.k,):
        raise DimensionMismatch(f"message must have length {C.k}, got shape {m.shape}")
    if C.k == 0:
        return np.zeros(C.n, dtype=np.int64)
    return matmul_mod(m % C.field.p, C.G, C.field.p)


def syndrome(y: Sequence[int], C: LinearCode) -> np.ndarray:
    y = np.asarray(y, dtype=np.int64)
    if y.shape[-1] != C.n:
        raise DimensionMismatch(f"word must have length {C.n}, got shape {y.shape}")
    if C.H.shape[0] == 0:
        return np.zeros(y.shape[:-1] + (0,), dtype=np.int64)
    return matmul_mod(y % C.field.p, C.H.T, C.field.p)


def rs_code(points: Sequence[int], k: int, F: PrimeField) -> LinearCode:
    """Reed-Solomon code: row j of the generator holds ``points_i ** j``."""
    pts = [int(x) % F.p for x in points]
    n = len(pts)
    if len(set(pts)) != n:
        raise DuplicatePoints(f"evaluation points must be distinct: {list(points)}")
    if not 1 <= k <= n or n > F.p:
        raise BadDimension(f"need 1 <= k <= n <= p, got k={k}, n={n}, p={F.p}")
    G = np.array([[pow(x, j, F.p) for x in pts] for j in range(k)], dtype=np.int64)
    code = LinearCode(G, F, name=f"RS[{n},{k}]_{F.p}")
    code._distance = n - k + 1
    return code


def rm_monomials(r: int, m: int) -> list[tuple[int, ...]]:
    """Variable subsets for RM(r, m), by degree then lexicographically."""
    return [s for deg in range(r + 1) for s in itertools.combinations(range(m), deg)]


def rm_code(r: int, m: int) -> LinearCode:
    """Binary Reed-Muller code RM(r, m); column order counts with x_1 most significant."""
    if not 0 <= r <= m:
        raise BadDimension(f"need 0 <= r <= m, got r={r}, m={m}")
    F = PrimeField(2)
    X = enumerate_vectors(2, m)
    rows = [np.prod(X[:, list(s)], axis=1) if s else np.ones(2**m, np.int64) for s in rm_monomials(r, m)]
    return LinearCode(np.array(rows, dtype=np.int64), F, name=f"RM({r},{m})")


def dual_code(C: LinearCode) -> LinearCode:
    return LinearCode(C.H, C.field, name=f"{C.name}^perp")


def min_distance(C: LinearCode) -> int | float:
    """Minimum nonzero codeword weight; ``math.inf`` for the zero code."""
    if C.k == 0:
        return math.inf
    best = C.n
    for chunk in C.codewords():
        w = np.count_nonzero(chunk, axis=1)
        w = w[w > 0]
        if w.size:
            best = min(best, int(w.min()))
    return best


def nearest_codeword(y: Sequence[int], C: LinearCode) -> DecodeResult:
    y = np.asarray(y, dtype=np.int64) % C.field.p
    if y.shape != (C.n,):
        raise DimensionMismatch(f"word must have length {C.n}")
    best_d, best = C.n + 1, []
    for chunk in C.codewords():
        d = np.count_nonzero(chunk != y, axis=1)
        dmin = int(d.min())
        if dmin < best_d:
            best_d, best = dmin, [c for c in chunk[d == dmin]]
        elif dmin == best_d:
            best.extend(chunk[d == dmin])
    winner = min(best, key=lambda c: tuple(c.tolist()))
    return DecodeResult(error=(y - winner) % C.field.p, codeword=winner, unique=len(best) == 1)


def syndrome_decode(s: Sequence[int], C: LinearCode, wmax: int) -> DecodeResult:
    """The error of weight <= wmax whose syndrome is ``s``."""
    s = np.asarray(s, dtype=np.int64) % C.field.p
    if s.shape != (C.n - C.k,):
        raise DimensionMismatch(f"syndrome must have length {C.n - C.k}")
    # the table raises on shared syndromes, so a returned error is the only one
    e = C.syndrome_table(wmax).lookup(s, C.field.p)
    return DecodeResult(error=e, codeword=None, unique=True)


def decode(y: Sequence[int], C: LinearCode, wmax: int) -> DecodeResult:
    """Bounded-distance decoding of a received word through its syndrome."""
    y = np.asarray(y, dtype=np.int64) % C.field.p
    res = syndrome_decode(syndrome(y, C), C, wmax)
    return DecodeResult(error=res.error, codeword=(y - res.error) % C.field.p, unique=res.unique)
