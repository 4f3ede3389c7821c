"""Fourier duality of linear codes: F|C> = |C^perp>."""

from __future__ import annotations

import math

import numpy as np

from ..codes import LinearCode, dual_code
from ..errors import TooLarge
from ..gf import digits_to_indices
from .state import StateVector, phase_distance, qft_state

POISSON_LIMIT = 2**22


def code_state(C: LinearCode) -> StateVector:
    """Uniform superposition over the codewords of ``C``."""
    p, n = C.field.p, C.n
    if p**n > POISSON_LIMIT:
        raise TooLarge(f"F_{p}^{n} has {p ** n} basis states")
    amps = np.zeros(p**n, dtype=np.complex128)
    for chunk in C.codewords():
        amps[digits_to_indices(chunk, p)] = 1.0
    return StateVector(C.field, n, amps / math.sqrt(C.size))


def poisson_check(C: LinearCode) -> tuple[StateVector, StateVector, float]:
    """Transform of |C> next to |C^perp>, with their phase-aligned l2 distance."""
    lhs = qft_state(code_state(C), "forward")
    rhs = code_state(dual_code(C))
    return lhs, rhs, phase_distance(rhs, lhs)
