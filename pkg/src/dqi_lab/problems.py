"""max-LINSAT instances: generic, max-XORSAT, OPI and multivariate OPI."""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field as dc_field
from typing import Callable, Iterable, Mapping, Sequence

import numpy as np

from . import kernels
from .errors import BadDimension, DimensionMismatch, DuplicatePoints, IndexOutOfRange, RaggedTargets
from .gf import FpPoly, PrimeField, enumerate_vectors, matmul_mod, poly_eval, rank

KINDS = ("generic", "xorsat", "opi", "mopi")


@dataclass(frozen=True, eq=False)
class MaxLinsatInstance:
    """Constraints ``b_i . x in T_i`` for the rows ``b_i`` of ``B``."""

    field: PrimeField
    B: np.ndarray
    targets: tuple[tuple[int, ...], ...]
    kind: str = "generic"
    points: tuple[int, ...] | None = None
    seed: int | None = None
    mask: np.ndarray = dc_field(init=False, repr=False)

    def __post_init__(self):
        p = self.field.p
        B = self.field.matrix(self.B)
        object.__setattr__(self, "B", B)
        if len(self.targets) != B.shape[0]:
            raise DimensionMismatch(f"{B.shape[0]} rows but {len(self.targets)} target sets")
        targets = tuple(tuple(sorted({int(v) % p for v in T})) for T in self.targets)
        for i, T in enumerate(targets):
            if not 1 <= len(T) <= p - 1:
                raise BadDimension(f"target set {i} has size {len(T)}; need 1 <= |T| <= p-1")
        object.__setattr__(self, "targets", targets)
        if self.kind not in KINDS:
            raise BadDimension(f"unknown kind {self.kind!r}")
        if self.kind == "xorsat" and (p != 2 or any(len(T) != 1 for T in targets)):
            raise BadDimension("xorsat needs p = 2 and singleton targets")
        if self.kind == "opi":
            self._check_opi()
        mask = np.zeros((B.shape[0], p), dtype=np.uint8)
        for i, T in enumerate(targets):
            mask[i, list(T)] = 1
        mask.setflags(write=False)
        object.__setattr__(self, "mask", mask)

    def _check_opi(self):
        if self.points is None:
            raise BadDimension("opi instances must store their evaluation points")
        pts = tuple(int(y) % self.field.p for y in self.points)
        object.__setattr__(self, "points", pts)
        m, n = self.B.shape
        if not n <= m < self.field.p:
            raise BadDimension(f"opi needs n <= m < p, got n={n}, m={m}, p={self.field.p}")
        expected = np.array([[pow(y, j, self.field.p) for j in range(n)] for y in pts])
        if not np.array_equal(expected.reshape(self.B.shape), self.B):
            raise BadDimension("opi matrix is not the Vandermonde matrix of its points")

    @property
    def p(self) -> int:
        return self.field.p

    @property
    def m(self) -> int:
        return self.B.shape[0]

    @property
    def n(self) -> int:
        return self.B.shape[1]

    @property
    def r(self) -> int:
        """Common target-set size; raises on ragged instances."""
        sizes = {len(T) for T in self.targets}
        if len(sizes) != 1:
            raise RaggedTargets(f"target sizes vary: {sorted(sizes)}")
        return sizes.pop()

    @property
    def mean_r(self) -> float:
        return float(np.mean([len(T) for T in self.targets]))

    def __eq__(self, other):
        if not isinstance(other, MaxLinsatInstance):
            return NotImplemented
        return (
            self.field == other.field
            and np.array_equal(self.B, other.B)
            and self.targets == other.targets
            and self.kind == other.kind
            and self.points == other.points
        )

    __hash__ = None

    def row_values(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=np.int64)
        if x.shape[-1] != self.n:
            raise DimensionMismatch(f"assignment must have length {self.n}")
        return matmul_mod(x % self.p, self.B.T, self.p)

    def satisfied_counts(self) -> np.ndarray:
        """``count_satisfied`` for every x in F_p^n, lexicographic order."""
        return kernels.satisfied_counts_all(self.B, self.mask, self.p)

    def score(self, X) -> np.ndarray:
        X = np.asarray(X, dtype=np.int64).reshape(-1, self.n) % self.p
        return kernels.score_batch(self.B, X, self.mask, self.p)

    def to_json(self) -> str:
        doc = {"p": self.p, "kind": self.kind, "B": self.B.tolist(), "targets": [list(T) for T in self.targets]}
        if self.points is not None:
            doc["points"] = list(self.points)
        if self.seed is not None:
            doc["seed"] = self.seed
        return json.dumps(doc, separators=(",", ":")) + "\n"

    @classmethod
    def from_json(cls, text: str) -> MaxLinsatInstance:
        doc = json.loads(text)
        F = PrimeField(doc["p"])
        m = len(doc["targets"])
        B = np.array(doc["B"], dtype=np.int64).reshape(m, -1)
        points = tuple(doc["points"]) if doc.get("points") is not None else None
        return cls(F, B, tuple(map(tuple, doc["targets"])), doc.get("kind", "generic"), points, doc.get("seed"))


def constraint_value(inst: MaxLinsatInstance, i: int, x) -> int:
    """+1 when constraint ``i`` (1-based) holds at ``x``, else -1."""
    if not 1 <= i <= inst.m:
        raise IndexOutOfRange(f"constraint index {i} outside [1, {inst.m}]")
    v = int(np.dot(inst.B[i - 1], np.asarray(x, dtype=np.int64)) % inst.p)
    return 1 if inst.mask[i - 1, v] else -1


def count_satisfied(inst: MaxLinsatInstance, x) -> int:
    return int(inst.score(x)[0])


def objective(inst: MaxLinsatInstance, x) -> int:
    """#SAT - #UNSAT."""
    return 2 * count_satisfied(inst, x) - inst.m


def xorsat_objective(inst: MaxLinsatInstance, x) -> int:
    """Parity form ``sum_i (-1)^(b_i . x + v_i)`` of a max-XORSAT objective."""
    if inst.p != 2:
        raise BadDimension("parity form needs p = 2")
    v = np.array([T[0] for T in inst.targets])
    return int(np.sum((-1) ** ((inst.row_values(x) + v) % 2)))


def opi_objective(inst: MaxLinsatInstance, coeffs) -> int:
    """OPI objective through polynomial evaluation instead of the matrix."""
    Q = FpPoly(tuple(coeffs), inst.field)
    return sum(1 if poly_eval(Q, y) in T else -1 for y, T in zip(inst.points, inst.targets))


def build_opi(
    F: PrimeField,
    n: int,
    targets: Sequence[Iterable[int]],
    points: Sequence[int] | None = None,
    seed: int | None = None,
) -> MaxLinsatInstance:
    """OPI over evaluation points (default 1..p-1) with B_ij = y_i ** j."""
    if points is None:
        points = range(1, F.p)
    pts = [int(y) % F.p for y in points]
    if len(set(pts)) != len(pts):
        raise DuplicatePoints(f"evaluation points must be distinct: {list(points)}")
    m = len(pts)
    if not 1 <= n <= m < F.p:
        raise BadDimension(f"opi needs 1 <= n <= m < p, got n={n}, m={m}, p={F.p}")
    targets = [tuple(T) for T in targets]
    if len(targets) != m:
        raise BadDimension(f"{m} points but {len(targets)} target sets")
    if len({len(set(T)) for T in targets}) != 1:
        raise RaggedTargets("opi target sets must share one size r")
    B = np.array([[pow(y, j, F.p) for j in range(n)] for y in pts], dtype=np.int64)
    return MaxLinsatInstance(F, B, tuple(targets), "opi", tuple(pts), seed)


def mopi_monomials(nvars: int, degree: int, p: int) -> list[tuple[int, ...]]:
    """Exponent tuples of total degree <= degree, each exponent <= p-1.

    Ordered by total degree, then with earlier variables first (1, x, y, x^2, xy, ...).
    """
    out = []
    for d in range(degree + 1):
        same = [e for e in itertools.product(range(min(d, p - 1) + 1), repeat=nvars) if sum(e) == d]
        out.extend(sorted(same, reverse=True))
    return out


def mopi_points(nvars: int, p: int) -> list[tuple[int, ...]]:
    """All of F_p^nvars ordered with the last variable as the primary key."""
    return [tuple(reversed(v)) for v in itertools.product(range(p), repeat=nvars)]


def build_mopi(
    F: PrimeField,
    nvars: int,
    degree: int,
    targets: Mapping[tuple[int, ...], Iterable[int]] | Callable[..., Iterable[int]],
    seed: int | None = None,
) -> MaxLinsatInstance:
    """Multivariate OPI: one constraint per point of F_p^nvars."""
    if nvars < 1 or not 0 <= degree <= nvars * (F.p - 1):
        raise BadDimension(f"need 0 <= degree <= nvars (p-1), got degree={degree}, nvars={nvars}")
    pts = mopi_points(nvars, F.p)
    monos = mopi_monomials(nvars, degree, F.p)
    B = np.array(
        [[int(np.prod([pow(v, e, F.p) for v, e in zip(pt, mono)])) % F.p for mono in monos] for pt in pts],
        dtype=np.int64,
    )
    if callable(targets):
        T = tuple(tuple(targets(*pt)) for pt in pts)
    else:
        T = tuple(tuple(targets[pt]) for pt in pts)
    return MaxLinsatInstance(F, B, T, "mopi", None, seed)


def random_instance(
    F: PrimeField,
    m: int,
    n: int,
    r: int,
    seed: int,
    kind: str | None = None,
) -> MaxLinsatInstance:
    """Uniform B (full column rank when n <= m) and uniform r-subsets as targets."""
    if not 1 <= r <= F.p - 1 or m < 1 or n < 1:
        raise BadDimension(f"need m, n >= 1 and 1 <= r <= p-1, got m={m}, n={n}, r={r}")
    kind = kind or ("xorsat" if F.p == 2 and r == 1 else "generic")
    if kind not in ("generic", "xorsat"):
        raise BadDimension(f"random_instance builds generic or xorsat, not {kind!r}")
    rng = np.random.default_rng(seed)
    for _ in range(10_000):
        B = rng.integers(0, F.p, size=(m, n))
        if n > m or rank(B, F.p) == n:
            break
    else:
        raise BadDimension("could not draw a full-rank matrix")
    return MaxLinsatInstance(F, B, tuple(random_targets(F, m, r, rng)), kind, None, seed)


def random_targets(F: PrimeField, m: int, r: int, rng: np.random.Generator) -> list[tuple[int, ...]]:
    return [tuple(rng.choice(F.p, size=r, replace=False).tolist()) for _ in range(m)]


def random_opi(F: PrimeField, n: int, r: int, seed: int, points: Sequence[int] | None = None) -> MaxLinsatInstance:
    rng = np.random.default_rng(seed)
    m = len(points) if points is not None else F.p - 1
    if not 1 <= r <= F.p - 1:
        raise BadDimension(f"need 1 <= r <= p-1, got r={r}")
    return build_opi(F, n, random_targets(F, m, r, rng), points, seed)


def all_assignments(inst: MaxLinsatInstance) -> np.ndarray:
    return enumerate_vectors(inst.p, inst.n)
