"""Exact simulation of decoded quantum interferometry."""

from .direct import (
    build_dqi_direct,
    build_pk_state,
    build_pk_states,
    dqi_from_pk,
    expected_satisfaction,
    gram_matrix,
    optimize_weights,
    satisfaction_matrix,
    syndrome_coefficients,
)
from .duality import code_state, poisson_check
from .functions import (
    decoding_code,
    default_ell,
    dual_distance,
    g_fun,
    g_table,
    g_tilde,
    g_tilde_table,
    image_code,
    max_ell,
    normalizers,
    primal_distance,
)
from .pipeline import PipelineState, pipeline_run
from .report import DqiReport, run_dqi
from .state import (
    StateVector,
    basis_state,
    dft_matrix,
    dicke_state,
    phase_distance,
    qft_state,
    uniform_state,
)
from .weights import (
    WeightVector,
    alpha_to_u,
    principal_vector,
    semicircle,
    tridiagonal_matrix,
    u_to_alpha,
    u_to_w,
    w_to_u,
)

__all__ = [
    "DqiReport",
    "PipelineState",
    "StateVector",
    "WeightVector",
    "alpha_to_u",
    "basis_state",
    "build_dqi_direct",
    "build_pk_state",
    "build_pk_states",
    "code_state",
    "decoding_code",
    "default_ell",
    "dft_matrix",
    "dicke_state",
    "dqi_from_pk",
    "dual_distance",
    "expected_satisfaction",
    "g_fun",
    "g_table",
    "g_tilde",
    "g_tilde_table",
    "gram_matrix",
    "image_code",
    "max_ell",
    "normalizers",
    "optimize_weights",
    "phase_distance",
    "pipeline_run",
    "poisson_check",
    "primal_distance",
    "principal_vector",
    "qft_state",
    "run_dqi",
    "satisfaction_matrix",
    "semicircle",
    "syndrome_coefficients",
    "tridiagonal_matrix",
    "u_to_alpha",
    "u_to_w",
    "uniform_state",
    "w_to_u",
]
