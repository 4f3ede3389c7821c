"""Classical baselines: exhaustive search, Prange-style information sets, random guessing."""

from __future__ import annotations

import itertools
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .codes import ENUMERATION_LIMIT
from .errors import BadDimension, RankDeficient, TooLarge
from .gf import index_to_digits, rank
from .problems import MaxLinsatInstance

SUBSET_ATTEMPTS = 200


@dataclass
class SolveReport:
    best_x: tuple[int, ...]
    best_satisfied: int
    evaluations: int
    method: str
    mean_satisfied: float | None = None
    std_satisfied: float | None = None
    trial_counts: np.ndarray | None = field(default=None, repr=False)

    def to_dict(self) -> dict:
        return {
            "method": self.method,
            "best_x": list(self.best_x),
            "best_satisfied": self.best_satisfied,
            "evaluations": self.evaluations,
            "mean_satisfied": self.mean_satisfied,
            "std_satisfied": self.std_satisfied,
        }


def exhaustive_optimum(inst: MaxLinsatInstance) -> SolveReport:
    """Best assignment over all of F_p^n; ties go to the lexicographically smallest."""
    total = inst.p**inst.n
    if total > ENUMERATION_LIMIT:
        raise TooLarge(f"exhaustive search over {total} assignments")
    counts = inst.satisfied_counts()
    best = int(np.argmax(counts))
    return SolveReport(
        best_x=index_to_digits(best, inst.p, inst.n),
        best_satisfied=int(counts[best]),
        evaluations=total,
        method="exhaustive",
        mean_satisfied=float(counts.mean()),
        std_satisfied=float(counts.std()),
    )


def _threads() -> int:
    try:
        return max(1, int(os.environ.get("DQI_LAB_THREADS", "1")))
    except ValueError:
        return 1


def _prange_trial(inst: MaxLinsatInstance, seed, trial: int) -> tuple[np.ndarray, int]:
    rng = np.random.default_rng([seed, trial])
    p, m, n = inst.p, inst.m, inst.n

    def attempt(rows):
        rows = np.asarray(rows)
        b = np.array([inst.targets[i][rng.integers(len(inst.targets[i]))] for i in rows])
        return kernels.solve_mod(inst.B[rows], b, p)

    for _ in range(SUBSET_ATTEMPTS):
        x = attempt(rng.choice(m, size=n, replace=False))
        if x is not None:
            break
    else:
        # rejection sampling keeps failing: walk the subsets in order instead
        for rows in itertools.combinations(range(m), n):
            x = attempt(rows)
            if x is not None:
                break
    return x, int(inst.score(x)[0])


def prange_solve(inst: MaxLinsatInstance, trials: int, seed=0) -> SolveReport:
    """Solve a random invertible n-row subsystem at random targets, ``trials`` times.

    Trial ``t`` draws from its own stream ``default_rng([seed, t])``, so the result
    does not depend on how trials are spread over threads.
    """
    if trials < 1:
        raise BadDimension(f"need at least one trial, got {trials}")
    if inst.n > inst.m or rank(inst.B, inst.p) < inst.n:
        raise RankDeficient("no invertible n-row subset exists")
    seed = 0 if seed is None else int(seed)
    workers = min(_threads(), trials)
    if workers > 1:
        with ThreadPoolExecutor(workers) as pool:
            results = list(pool.map(lambda t: _prange_trial(inst, seed, t), range(trials)))
    else:
        results = [_prange_trial(inst, seed, t) for t in range(trials)]
    counts = np.array([c for _, c in results])
    best = int(np.argmax(counts))
    return SolveReport(
        best_x=tuple(int(v) for v in results[best][0]),
        best_satisfied=int(counts[best]),
        evaluations=trials,
        method="prange",
        mean_satisfied=float(counts.mean()),
        std_satisfied=float(counts.std(ddof=1)) if trials > 1 else 0.0,
        trial_counts=counts,
    )


def prange_expected(inst: MaxLinsatInstance) -> float:
    """Mean of one Prange trial: the n solved rows plus r/p of the others."""
    return inst.n + (inst.m - inst.n) * inst.mean_r / inst.p


def random_baseline(inst: MaxLinsatInstance, samples: int, seed=0) -> SolveReport:
    """Score ``samples`` uniform assignments."""
    if samples < 1:
        raise BadDimension(f"need at least one sample, got {samples}")
    rng = np.random.default_rng(seed)
    X = rng.integers(0, inst.p, size=(samples, inst.n))
    counts = inst.score(X)
    best = int(np.argmax(counts))
    return SolveReport(
        best_x=tuple(int(v) for v in X[best]),
        best_satisfied=int(counts[best]),
        evaluations=samples,
        method="random",
        mean_satisfied=float(counts.mean()),
        std_satisfied=float(counts.std(ddof=1)) if samples > 1 else 0.0,
        trial_counts=counts,
    )
