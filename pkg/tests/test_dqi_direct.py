import itertools
import math

import numpy as np
import pytest

from dqi_lab.dqi import (
    WeightVector,
    build_dqi_direct,
    build_pk_state,
    build_pk_states,
    dqi_from_pk,
    expected_satisfaction,
    gram_matrix,
    optimize_weights,
    phase_distance,
    qft_state,
    satisfaction_matrix,
    tridiagonal_matrix,
    u_to_w,
    uniform_state,
)
from dqi_lab.errors import DimensionMismatch, NormalizationFailure
from dqi_lab.gf import PrimeField, digits_to_index
from dqi_lab.problems import build_opi, random_instance, random_opi
from dqi_lab.verify import _search_instance

F2, F7 = PrimeField(2), PrimeField(7)
EXAMPLE_T = [(0, 1), (3, 6), (2, 5), (3, 6), (4, 5), (1, 5)]


def xorsat_amplitudes(inst, w):
    """Parity-sum form of the binary DQI state, written out term by term."""
    m, n = inst.m, inst.n
    v = np.array([T[0] for T in inst.targets])
    out = np.zeros(2**n, dtype=complex)
    for xi, x in enumerate(itertools.product(range(2), repeat=n)):
        total = 0.0
        for k, wk in enumerate(w):
            acc = 0.0
            for supp in itertools.combinations(range(m), k):
                y = np.zeros(m, dtype=int)
                y[list(supp)] = 1
                acc += (-1) ** int(v @ y + (inst.B.T @ y) @ np.array(x))
            total += wk * acc / math.sqrt(2**n * math.comb(m, k))
        out[xi] = total
    return out


def polynomial_amplitudes(inst, u):
    """sum_k u_k e_k(f_1(x), ..., f_m(x)) with f_i = +-1, by expanding every product."""
    out = []
    for x in itertools.product(range(2), repeat=inst.n):
        f = [1 if (inst.B[i] @ np.array(x)) % 2 in inst.targets[i] else -1 for i in range(inst.m)]
        out.append(
            sum(uk * sum(np.prod([f[i] for i in c]) for c in itertools.combinations(range(inst.m), k)) for k, uk in enumerate(u))
        )
    return np.array(out, dtype=complex)


def test_binary_direct_matches_parity_form():
    inst = _search_instance(2, 6, 3, 1, 11)
    w, _ = optimize_weights(inst, 1)
    assert np.allclose(build_dqi_direct(inst, w).amplitudes, xorsat_amplitudes(inst, w.w), atol=1e-12)
    w2 = WeightVector.normalized([0.3, -0.5j, 0.8])
    inst2 = _search_instance(2, 5, 4, 2, 3)
    assert np.allclose(build_dqi_direct(inst2, w2).amplitudes, xorsat_amplitudes(inst2, w2.w), atol=1e-12)


def test_polynomial_amplitude_oracle():
    # m = 4, n = 2, ell = 2 exceeds the decoding radius, but the amplitude identity holds anyway
    inst = random_instance(F2, 4, 2, 1, seed=5)
    u = np.array([0.4, -0.2, 0.7])
    w = u_to_w(u, 4, 2, 2)
    norm = np.linalg.norm(w)
    state = build_dqi_direct(inst, WeightVector(w / norm), check_norm=False)
    oracle = polynomial_amplitudes(inst, u) / norm
    assert np.allclose(state.amplitudes, oracle, atol=1e-12)
    p_state = np.abs(state.amplitudes) ** 2 / state.norm() ** 2
    p_oracle = np.abs(oracle) ** 2 / np.sum(np.abs(oracle) ** 2)
    assert np.allclose(p_state, p_oracle)


def test_ell_zero_is_uniform():
    inst = build_opi(F7, 3, EXAMPLE_T)
    state = build_dqi_direct(inst, WeightVector([1.0]))
    assert phase_distance(state, uniform_state(F7, 3)) < 1e-12
    assert phase_distance(build_pk_state(inst, 0), uniform_state(F7, 3)) < 1e-12


def test_normalization_failure_when_radius_too_large():
    inst = random_opi(F7, 2, 3, seed=1)  # d_perp = 3
    with pytest.raises(NormalizationFailure):
        build_dqi_direct(inst, WeightVector.normalized([1, 1, 1]))
    with pytest.raises(NormalizationFailure):
        build_pk_states(inst, 2)


def test_gram_identity_on_rs_instance():
    inst = random_opi(PrimeField(11), 5, 5, seed=2)  # d_perp = 6
    assert np.abs(gram_matrix(inst, 2) - np.eye(3)).max() < 1e-10


def test_expansion_in_pk_basis():
    inst = random_opi(PrimeField(11), 4, 4, seed=3)
    w = WeightVector.normalized([0.2, 0.5 + 0.1j, -0.7])
    assert phase_distance(build_dqi_direct(inst, w), dqi_from_pk(inst, w)) < 1e-10


@pytest.mark.parametrize("p,m,n,k", [(2, 6, 3, 1), (2, 7, 4, 1), (3, 4, 2, 1), (3, 5, 3, 1), (3, 3, 3, 2)])
def test_frequency_band_support(p, m, n, k):
    inst = _search_instance(p, m, n, k, 1)
    spectrum = qft_state(build_pk_state(inst, k), "inverse").amplitudes
    band = set()
    for supp in itertools.combinations(range(m), k):
        for vals in itertools.product(range(1, p), repeat=k):
            y = np.zeros(m, dtype=int)
            y[list(supp)] = vals
            band.add(digits_to_index((inst.B.T @ y) % p, p))
    support = {int(i) for i in np.nonzero(np.abs(spectrum) > 1e-10)[0]}
    assert support <= band and support


def test_expected_satisfaction_basics():
    inst = build_opi(F7, 3, EXAMPLE_T)
    assert expected_satisfaction(uniform_state(F7, 3), inst) == pytest.approx(6 * 2 / 7)
    point = np.zeros(343)
    point[digits_to_index((1, 5, 5), 7)] = 1
    from dqi_lab.dqi import StateVector

    assert expected_satisfaction(StateVector(F7, 3, point), inst) == pytest.approx(5)
    with pytest.raises(DimensionMismatch):
        expected_satisfaction(uniform_state(F7, 2), inst)


def test_sampling_estimate_converges():
    inst = random_opi(F7, 3, 3, seed=4)
    w, value = optimize_weights(inst, 1)
    state = build_dqi_direct(inst, w)
    shots = 100_000
    counts = inst.score(state.sample(shots, seed=0))
    sigma = counts.std() / math.sqrt(shots)
    assert abs(counts.mean() - expected_satisfaction(state, inst)) < 3 * sigma + 1e-12


def test_optimize_ell_zero():
    inst = random_opi(F7, 3, 3, seed=5)
    w, value = optimize_weights(inst, 0)
    assert w.w.tolist() == [1]
    assert value == pytest.approx(inst.m * 3 / 7)


def test_optimize_beats_random_weights():
    inst = random_opi(PrimeField(11), 5, 4, seed=6)
    w, value = optimize_weights(inst, 2)
    rng = np.random.default_rng(0)
    for _ in range(50):
        z = rng.normal(size=3) + 1j * rng.normal(size=3)
        trial = WeightVector.normalized(z)
        assert value >= expected_satisfaction(build_dqi_direct(inst, trial), inst) - 1e-9
    assert value == pytest.approx(expected_satisfaction(build_dqi_direct(inst, w), inst), abs=1e-8)
    assert value >= inst.m * inst.r / inst.p
    assert abs(w.w[0].imag) < 1e-14 and w.w[0].real > 0


@pytest.mark.parametrize("p,n,r,ell", [(11, 5, 5, 2), (11, 6, 3, 2), (13, 4, 6, 1), (7, 3, 2, 0)])
def test_tridiagonal_closed_form(p, n, r, ell):
    # valid when 2 ell + 1 < d_perp = n + 1
    inst = random_opi(PrimeField(p), n, r, seed=p + n)
    numeric = satisfaction_matrix(inst, ell).real
    assert np.allclose(numeric, tridiagonal_matrix(inst.m, p, r, ell), atol=1e-9)
    assert optimize_weights(inst, ell, "tridiagonal")[1] == pytest.approx(optimize_weights(inst, ell, "states")[1])


def test_gram_detects_violation():
    inst = random_opi(F7, 2, 3, seed=1)
    G = gram_matrix(inst, 2)
    assert np.abs(G - np.eye(3)).max() > 1e-3
