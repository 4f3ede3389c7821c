"""Dense statevectors over qudit registers and the site-wise Fourier transform."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from ..errors import BadDimension, DimensionMismatch, TooLarge
from ..gf import PrimeField, digits_to_index, index_to_digits

NORM_TOL = 1e-10
# largest register we are willing to hold densely
STATE_LIMIT = 2**22


@dataclass(frozen=True, eq=False)
class StateVector:
    """Amplitudes over F_p^sites indexed by base-p strings, first site most significant."""

    field: PrimeField
    sites: int
    amplitudes: np.ndarray

    def __post_init__(self):
        amps = np.asarray(self.amplitudes, dtype=np.complex128)
        if amps.shape != (self.field.p**self.sites,):
            raise DimensionMismatch(
                f"{self.sites} sites over F_{self.field.p} need {self.field.p**self.sites} amplitudes"
            )
        amps = amps.copy()
        amps.setflags(write=False)
        object.__setattr__(self, "amplitudes", amps)

    @property
    def p(self) -> int:
        return self.field.p

    @property
    def dim(self) -> int:
        return self.amplitudes.size

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def is_normalized(self, tol: float = NORM_TOL) -> bool:
        return abs(self.norm() - 1.0) < tol

    def normalized(self) -> StateVector:
        return StateVector(self.field, self.sites, self.amplitudes / self.norm())

    def probabilities(self) -> np.ndarray:
        prob = np.abs(self.amplitudes) ** 2
        return prob / prob.sum()

    def amplitude(self, digits) -> complex:
        return complex(self.amplitudes[digits_to_index(digits, self.p)])

    def tensor(self) -> np.ndarray:
        """Amplitudes reshaped to one axis per site."""
        return self.amplitudes.reshape((self.p,) * self.sites)

    def sample(self, shots: int, seed=None) -> np.ndarray:
        """Measure every site ``shots`` times; rows are base-p strings."""
        rng = np.random.default_rng(seed)
        idx = rng.choice(self.dim, size=shots, p=self.probabilities())
        out = np.empty((shots, self.sites), dtype=np.int64)
        for pos in range(self.sites - 1, -1, -1):
            idx, out[:, pos] = np.divmod(idx, self.p)
        return out

    def support(self, tol: float = 1e-9) -> list[tuple[int, ...]]:
        nz = np.nonzero(np.abs(self.amplitudes) > tol)[0]
        return [index_to_digits(int(i), self.p, self.sites) for i in nz]


def check_state_size(p: int, sites: int) -> None:
    if p**sites > STATE_LIMIT:
        raise TooLarge(f"a register of {sites} qudits over F_{p} has {p**sites} amplitudes")


def basis_state(field: PrimeField, digits) -> StateVector:
    digits = tuple(int(d) % field.p for d in digits)
    check_state_size(field.p, len(digits))
    amps = np.zeros(field.p ** len(digits), dtype=np.complex128)
    amps[digits_to_index(digits, field.p)] = 1.0
    return StateVector(field, len(digits), amps)


def uniform_state(field: PrimeField, sites: int) -> StateVector:
    check_state_size(field.p, sites)
    dim = field.p**sites
    return StateVector(field, sites, np.full(dim, 1 / math.sqrt(dim), dtype=np.complex128))


def qft_state(state: StateVector, direction: str = "forward") -> StateVector:
    """Site-wise DFT; forward sends |y> to p^(-1/2) sum_x exp(-2 pi i x y / p) |x>."""
    if direction not in ("forward", "inverse"):
        raise BadDimension(f"direction must be 'forward' or 'inverse', got {direction!r}")
    if state.sites == 0:
        return state
    transform = np.fft.fftn if direction == "forward" else np.fft.ifftn
    out = transform(state.tensor(), norm="ortho")
    return StateVector(state.field, state.sites, out.reshape(-1))


def dft_matrix(p: int) -> np.ndarray:
    """Single-site forward transform, ``F[x, y] = exp(-2 pi i x y / p) / sqrt(p)``."""
    k = np.arange(p)
    return np.exp(-2j * np.pi * np.outer(k, k) / p) / math.sqrt(p)


def dicke_state(m: int, k: int, p: int = 2) -> StateVector:
    """Uniform superposition of the binary strings of Hamming weight ``k``, inside F_p^m."""
    if not 0 <= k <= m:
        raise BadDimension(f"need 0 <= k <= m, got k={k}, m={m}")
    check_state_size(p, m)
    amps = np.zeros(p**m, dtype=np.complex128)
    weights = p ** np.arange(m - 1, -1, -1)
    amp = 1 / math.sqrt(math.comb(m, k))
    for support in itertools.combinations(range(m), k):
        amps[int(weights[list(support)].sum())] = amp
    return StateVector(PrimeField(p), m, amps)


def align_phase(reference: np.ndarray, other: np.ndarray) -> np.ndarray:
    """``other`` times the global phase that matches ``reference`` at its largest entry."""
    j = int(np.argmax(np.abs(reference)))
    if abs(other[j]) == 0:
        return other
    phase = (reference[j] / abs(reference[j])) / (other[j] / abs(other[j]))
    return other * phase


def phase_distance(a, b) -> float:
    """l2 distance between two states after global-phase alignment."""
    a = a.amplitudes if isinstance(a, StateVector) else np.asarray(a, dtype=np.complex128)
    b = b.amplitudes if isinstance(b, StateVector) else np.asarray(b, dtype=np.complex128)
    if a.shape != b.shape:
        raise DimensionMismatch(f"cannot compare states of sizes {a.size} and {b.size}")
    return float(np.linalg.norm(a - align_phase(a, b)))
