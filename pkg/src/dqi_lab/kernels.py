"""Kernel dispatch: the compiled extension when importable, numpy otherwise.

Set ``DQI_LAB_PURE=1`` to force the numpy fallback.
"""

from __future__ import annotations

import os

from . import _pykernels as python

compiled = None
if os.environ.get("DQI_LAB_PURE", "") not in ("1", "true", "yes"):
    try:
        from . import _ckernels as compiled
    except ImportError:
        compiled = None

BACKEND = "cython" if compiled is not None else "python"
_impl = compiled if compiled is not None else python

satisfied_counts_all = _impl.satisfied_counts_all
score_batch = _impl.score_batch
solve_mod = _impl.solve_mod
character_sum = _impl.character_sum
elementary_symmetric = _impl.elementary_symmetric


def backends() -> dict:
    """Available implementations keyed by name, for tests and benchmarks."""
    out = {"python": python}
    if compiled is not None:
        out["cython"] = compiled
    return out
