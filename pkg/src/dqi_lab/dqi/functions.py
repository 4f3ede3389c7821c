"""Per-constraint functions g_i, their transforms, and the codes DQI decodes."""

from __future__ import annotations

import itertools
import math

import numpy as np

from ..codes import ENUMERATION_LIMIT, LinearCode, min_distance
from ..errors import BadDimension, DecoderUnavailable, TooLarge
from ..gf import PrimeField, rank
from ..problems import MaxLinsatInstance


def normalizers(F: PrimeField, r: int) -> tuple[float, float]:
    """Mean ``fbar`` of a +-1 indicator with ``r`` hits and its spread ``phi``."""
    p = F.p
    if not 1 <= r <= p - 1:
        raise BadDimension(f"need 1 <= r <= p-1, got r={r}")
    return (2 * r - p) / p, math.sqrt(4 * r * (1 - r / p))


def g_table(inst: MaxLinsatInstance) -> np.ndarray:
    """``G[i, x] = g_i(x)``: the centred, unit-norm constraint indicator."""
    fbar, phi = normalizers(inst.field, inst.r)
    f = 2.0 * inst.mask.astype(np.float64) - 1.0
    return (f - fbar) / phi


def g_tilde_table(inst: MaxLinsatInstance) -> np.ndarray:
    """``Gt[i, y] = p^(-1/2) sum_x exp(+2 pi i x y / p) g_i(x)``."""
    Gt = np.fft.ifft(g_table(inst), axis=1, norm="ortho")
    # the mean of g_i is zero, so kill the rounding residue at y = 0
    Gt[:, 0] = 0.0
    return Gt


def _check_index(inst: MaxLinsatInstance, i: int) -> int:
    if not 1 <= i <= inst.m:
        raise BadDimension(f"constraint index {i} outside [1, {inst.m}]")
    return i - 1


def g_fun(inst: MaxLinsatInstance, i: int, x: int) -> float:
    return float(g_table(inst)[_check_index(inst, i), int(x) % inst.p])


def g_tilde(inst: MaxLinsatInstance, i: int, y: int) -> complex:
    return complex(g_tilde_table(inst)[_check_index(inst, i), int(y) % inst.p])


def decoding_code(inst: MaxLinsatInstance) -> LinearCode:
    """The code ``{y : B^T y = 0}`` whose syndromes DQI decodes; B^T is its parity check."""
    if rank(inst.B, inst.p) != inst.n:
        raise DecoderUnavailable("B must have full column rank for B^T to be a parity check")
    return LinearCode.from_parity_check(inst.B.T, inst.field, name=f"ker B^T ({inst.kind})")


def image_code(inst: MaxLinsatInstance) -> LinearCode:
    """The code ``{B x}`` spanned by the columns of B."""
    return LinearCode.from_rows(inst.B.T, inst.field, name=f"im B ({inst.kind})")


def dual_distance(inst: MaxLinsatInstance) -> int | float:
    """Minimum weight of a nonzero y with B^T y = 0, i.e. the fewest dependent rows of B.

    OPI matrices are generalized Reed-Solomon, so the answer is n + 1 without a search.
    Otherwise the cheaper of kernel enumeration and row-subset search is used.
    """
    p, m, n = inst.p, inst.m, inst.n
    if rank(inst.B, p) < n:
        raise DecoderUnavailable("B must have full column rank")
    if m == n:
        return math.inf
    if inst.kind == "opi":
        return n + 1
    kernel_cost = p ** (m - n)
    subset_cost = sum(math.comb(m, t) for t in range(1, n + 2))
    if min(kernel_cost, subset_cost) > ENUMERATION_LIMIT:
        raise TooLarge(f"no feasible distance computation for m={m}, n={n}, p={p}")
    if kernel_cost <= subset_cost:
        return min_distance(decoding_code(inst))
    for t in range(1, n + 2):
        for rows in itertools.combinations(range(m), t):
            if rank(inst.B[list(rows)], p) < t:
                return t
    return math.inf


def primal_distance(inst: MaxLinsatInstance) -> int | float | None:
    """Minimum distance of ``{B x}``; None when neither a formula nor enumeration applies."""
    if inst.kind == "opi":
        return inst.m - inst.n + 1
    if inst.p**inst.n > ENUMERATION_LIMIT:
        return None
    return min_distance(image_code(inst))


def max_ell(dperp: int | float, m: int) -> int:
    """Largest ell with 2 ell < d_perp, capped at m."""
    if math.isinf(dperp):
        return m
    return min(int((dperp - 1) // 2), m)


def default_ell(inst: MaxLinsatInstance) -> int:
    return max_ell(dual_distance(inst), inst.m)
