"""The seven-step DQI register pipeline, simulated on sparse amplitudes.

Basis states are keyed by ``(w, e, s)``: the weight level, the error string in
F_p^m and the syndrome string in F_p^n. Each step is a map on keys (a
permutation or a small isometry), so only populated basis states are stored.
"""

from __future__ import annotations

import itertools
import math
from collections import Counter, defaultdict
from dataclasses import dataclass

import numpy as np

from ..codes import syndrome_decode
from ..errors import BadDimension, DecoderUnavailable, TooLarge
from ..gf import PrimeField, digits_to_index, index_to_digits
from ..problems import MaxLinsatInstance
from .direct import _as_weights
from .functions import decoding_code, g_tilde_table
from .state import NORM_TOL, STATE_LIMIT, StateVector, qft_state

STAGE_NAMES = (
    "initial",
    "weights",
    "dicke",
    "uncompute weight",
    "phases",
    "syndrome",
    "decode",
    "fourier",
)


@dataclass(frozen=True)
class PipelineState:
    """Joint W, E, S amplitudes after ``stage`` steps."""

    stage: int
    ell: int
    m: int
    n: int
    p: int
    amplitudes: dict

    def norm(self) -> float:
        return math.sqrt(sum(abs(a) ** 2 for a in self.amplitudes.values()))

    def weight_marginal(self) -> np.ndarray:
        """Probability of each level of the W register."""
        out = np.zeros(self.ell + 1)
        for (w, _, _), a in self.amplitudes.items():
            out[w] += abs(a) ** 2
        return out

    @property
    def w_register(self) -> np.ndarray:
        """W amplitudes when E and S are still in |0>, as after stage 1."""
        out = np.zeros(self.ell + 1, dtype=np.complex128)
        zero_e, zero_s = (0,) * self.m, (0,) * self.n
        for (w, e, s), a in self.amplitudes.items():
            if e == zero_e and s == zero_s:
                out[w] += a
        return out

    def w_in_ground(self, tol: float = NORM_TOL) -> bool:
        return float(self.weight_marginal()[1:].sum()) < tol

    def e_is_zero(self, tol: float = NORM_TOL) -> bool:
        zero = (0,) * self.m
        return sum(abs(a) ** 2 for (_, e, _), a in self.amplitudes.items() if e != zero) < tol

    def hamming_profile(self, tol: float = 1e-14) -> Counter:
        """Probability mass per Hamming weight of the E string."""
        out: Counter = Counter()
        for (_, e, _), a in self.amplitudes.items():
            if abs(a) > tol:
                out[sum(1 for v in e if v)] += abs(a) ** 2
        return out

    def e_state(self) -> StateVector:
        """The E register as a state over F_p^m; needs W and S in |0>."""
        if self.p**self.m > STATE_LIMIT:
            raise TooLarge(f"E register has {self.p ** self.m} amplitudes")
        amps = np.zeros(self.p**self.m, dtype=np.complex128)
        for (w, e, s), a in self.amplitudes.items():
            if w or any(s):
                raise BadDimension("W or S register is not in |0>")
            amps[digits_to_index(e, self.p)] += a
        return StateVector(PrimeField(self.p), self.m, amps)

    def s_state(self) -> StateVector:
        """The S register as a state over F_p^n; needs W and E in |0>."""
        amps = np.zeros(self.p**self.n, dtype=np.complex128)
        for (w, e, s), a in self.amplitudes.items():
            if w or any(e):
                raise BadDimension("W or E register is not in |0>")
            amps[digits_to_index(s, self.p)] += a
        return StateVector(PrimeField(self.p), self.n, amps)


def _apply(amps: dict, step) -> dict:
    out: dict = defaultdict(complex)
    for key, a in amps.items():
        for new_key, c in step(key):
            out[new_key] += a * c
    return {k: v for k, v in out.items() if v != 0}


def pipeline_run(inst: MaxLinsatInstance, w) -> tuple[StateVector, list[PipelineState]]:
    """Run steps 1 to 7; snapshots[s] is the joint state after step s."""
    w = _as_weights(w)
    p, m, n, ell = inst.p, inst.m, inst.n, w.ell
    if ell > m:
        raise BadDimension(f"degree {ell} exceeds m = {m}")
    if p**m > STATE_LIMIT:
        raise TooLarge(f"E register over F_{p}^{m} exceeds the simulation limit")
    code = decoding_code(inst)
    try:
        code.syndrome_table(ell)
    except TooLarge as exc:
        raise DecoderUnavailable(str(exc)) from exc
    Gt = g_tilde_table(inst)
    Bt = inst.B.T
    zero_e, zero_s = (0,) * m, (0,) * n

    def weights(key):
        wv, e, s = key
        if wv != 0:
            raise BadDimension("weight preparation expects W in |0>")
        return [((k, e, s), w.w[k]) for k in range(ell + 1)]

    dicke_cache: dict[int, list[tuple[int, ...]]] = {}

    def dicke(key):
        k, e, s = key
        if e != zero_e:
            raise BadDimension("Dicke preparation is only defined on E = |0...0>")
        if k not in dicke_cache:
            dicke_cache[k] = [
                tuple(1 if i in supp else 0 for i in range(m)) for supp in itertools.combinations(range(m), k)
            ]
        amp = 1 / math.sqrt(math.comb(m, k))
        return [((k, y, s), amp) for y in dicke_cache[k]]

    def uncompute(key):
        # subtract the Hamming weight of E from W, a permutation of basis states
        k, e, s = key
        return [(((k - sum(1 for v in e if v)) % (ell + 1), e, s), 1.0)]

    def phases(key):
        k, e, s = key
        if any(v > 1 for v in e):
            raise BadDimension("the phase step acts only on levels 0 and 1")
        choices = [[(0, 1.0)] if v == 0 else [(y, Gt[i, y]) for y in range(1, p)] for i, v in enumerate(e)]
        out = []
        for combo in itertools.product(*choices):
            amp = complex(np.prod([c for _, c in combo]))
            out.append(((k, tuple(y for y, _ in combo), s), amp))
        return out

    def add_syndrome(key):
        k, e, s = key
        s_new = tuple(int(v) for v in (np.asarray(s) + Bt @ np.asarray(e)) % p)
        return [((k, e, s_new), 1.0)]

    def decode(key):
        k, e, s = key
        err = syndrome_decode(s, code, ell).error
        return [((k, tuple(int(v) for v in (np.asarray(e) - err) % p), s), 1.0)]

    amps: dict = {(0, zero_e, zero_s): 1.0 + 0j}
    snapshots = [PipelineState(0, ell, m, n, p, dict(amps))]
    for stage, step in enumerate((weights, dicke, uncompute, phases, add_syndrome, decode), start=1):
        amps = _apply(amps, step)
        snapshots.append(PipelineState(stage, ell, m, n, p, amps))
    final = qft_state(snapshots[-1].s_state(), "forward")
    fourier = {
        (0, zero_e, index_to_digits(int(i), p, n)): complex(final.amplitudes[i])
        for i in np.nonzero(final.amplitudes)[0]
    }
    snapshots.append(PipelineState(7, ell, m, n, p, fourier))
    return final, snapshots

