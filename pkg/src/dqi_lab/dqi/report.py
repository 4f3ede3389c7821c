"""End-to-end DQI evaluation of one instance."""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field

import numpy as np

from ..errors import DecoderUnavailable, TooLarge
from ..problems import MaxLinsatInstance
from .direct import dqi_from_pk, expected_satisfaction, optimize_weights
from .functions import dual_distance, max_ell
from .state import STATE_LIMIT
from .weights import semicircle


@dataclass
class DqiReport:
    expected_satisfied: float
    semicircle_prediction: float
    ell: int
    m: int
    n: int
    r: float
    p: int
    d_perp: float
    method: str
    weights: list = field(default_factory=list)
    samples: list | None = None

    @property
    def expected_rate(self) -> float:
        return self.expected_satisfied / self.m

    def to_dict(self) -> dict:
        out = asdict(self)
        out["expected_rate"] = self.expected_rate
        out["d_perp"] = None if math.isinf(self.d_perp) else int(self.d_perp)
        out["weights"] = [[float(z.real), float(z.imag)] for z in self.weights]
        return out


def run_dqi(
    inst: MaxLinsatInstance,
    ell: int | None = None,
    method: str = "auto",
    samples: int = 0,
    seed=None,
) -> DqiReport:
    """Optimize weights at the largest decodable ell (or ``ell``) and report <s>.

    Instances small enough to simulate are evaluated on the exact statevector;
    larger constant-r instances use the closed-form tridiagonal matrix, which
    needs 2 ell + 1 < d_perp, so the default ell is lowered by one when required.
    """
    dperp = dual_distance(inst)
    top = max_ell(dperp, inst.m)
    if method == "auto":
        method = "states" if inst.p**inst.n <= STATE_LIMIT else "tridiagonal"
    if method == "tridiagonal" and not math.isinf(dperp):
        top = min(top, int((dperp - 2) // 2))
    if ell is None:
        ell = max(top, 0)
    elif ell > top:
        raise DecoderUnavailable(f"ell = {ell} exceeds the decodable radius {top} (d_perp = {dperp})")
    w, value = optimize_weights(inst, ell, method)
    drawn = None
    if method == "states":
        state = dqi_from_pk(inst, w)
        value = expected_satisfaction(state, inst)
        if samples:
            X = state.sample(samples, seed)
            counts = inst.score(X)
            drawn = [(x.tolist(), int(c)) for x, c in zip(X, counts)]
    elif samples:
        raise TooLarge("sampling needs an explicit statevector; instance too large")
    return DqiReport(
        expected_satisfied=float(np.clip(value, 0, inst.m)),
        semicircle_prediction=semicircle(ell / inst.m, inst.mean_r / inst.p),
        ell=ell,
        m=inst.m,
        n=inst.n,
        r=inst.mean_r,
        p=inst.p,
        d_perp=dperp,
        method=method,
        weights=list(w.w),
        samples=drawn,
    )
