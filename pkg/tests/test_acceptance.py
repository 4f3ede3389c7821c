"""Acceptance criteria 1 to 8, one test group per criterion.

The terminal summary (see conftest.py) prints one PASS/FAIL line per criterion.
"""

import math
import time

import numpy as np
import pytest

from dqi_lab import classical, cli, codes, gf, problems, verify
from dqi_lab.dqi import (
    WeightVector,
    gram_matrix,
    optimize_weights,
    pipeline_run,
    poisson_check,
    run_dqi,
    semicircle,
)

pytestmark = pytest.mark.slow


def _timed(fn, budget):
    start = time.perf_counter()
    out = fn()
    elapsed = time.perf_counter() - start
    assert elapsed < budget, f"took {elapsed:.1f}s, budget {budget}s"
    return out


def test_criterion_1_fixtures():
    res = _timed(verify.suite_fixtures, 5.0)
    assert res.ok, res.failures
    assert res.passed == 20


def test_criterion_1_fixture_values():
    F5 = gf.PrimeField(5)
    assert [F5.mul(2, a) for a in range(5)] == [0, 2, 4, 1, 3]
    assert [x for x in range(1, 5) if F5.is_primitive(x)] == [2, 3]
    opi = verify.example_opi()
    assert problems.objective(opi, (4, 1, 2)) == -2
    assert problems.objective(opi, (1, 5, 5)) == 4
    assert classical.exhaustive_optimum(opi).best_satisfied == 5
    rs = codes.rs_code(range(1, 8), 3, gf.PrimeField(7))
    assert codes.encode([3, 5, 1], rs).tolist() == [2, 3, 6, 4, 4, 6, 3]
    mopi = verify.example_mopi()
    assert problems.count_satisfied(mopi, (0, 1, 1)) == 10
    assert problems.objective(mopi, (0, 1, 1)) == -5


def test_criterion_2_two_path_equivalence():
    def run():
        worst = 0.0
        for inst, ell in verify.twopath_cases():
            if inst.p == 2:
                assert inst.m <= 10 and inst.n <= 6 and ell <= 3
            else:
                assert inst.p in (3, 5, 7) and inst.m <= 6 and inst.n <= 3 and ell <= 2
            worst = max(worst, *verify.twopath_distances(inst, ell))
            # a second, non-optimal weight vector through the same three paths
            rng = np.random.default_rng(inst.m * 31 + inst.n)
            w = WeightVector.normalized(rng.normal(size=ell + 1) + 1j * rng.normal(size=ell + 1))
            worst = max(worst, *verify.twopath_distances(inst, ell, w))
        return worst

    assert _timed(run, 120.0) < 1e-8
    covered = {(inst.p, ell) for inst, ell in verify.twopath_cases()}
    assert {(2, 3), (3, 2), (5, 1), (7, 1)} <= covered


def test_criterion_3_orthonormality():
    for inst, ell in verify.orthonormality_cases():
        assert 2 * ell < inst.n + 1
        assert np.abs(gram_matrix(inst, ell) - np.eye(ell + 1)).max() < 1e-8
    inst, ell = verify.violating_case()
    assert 2 * ell >= inst.n + 1
    assert np.abs(gram_matrix(inst, ell) - np.eye(ell + 1)).max() > 1e-3
    with pytest.raises(codes.AmbiguousSolution):
        pipeline_run(inst, WeightVector.normalized(np.ones(ell + 1)))


def test_criterion_4_poisson_summation():
    assert poisson_check(verify.example_f5_code())[2] < 1e-10
    res = verify.suite_poisson(seed=0, per_prime=20)
    assert res.ok and res.passed == 61, res.failures


def test_criterion_5_decoder_round_trip():
    F7 = gf.PrimeField(7)
    rs = codes.rs_code(range(1, 8), 3, F7)
    c = codes.encode([3, 5, 1], rs)
    errors = list(verify.rs_weight2_errors())
    assert len(errors) == 799
    for e in errors:
        got = codes.syndrome_decode(codes.syndrome((c + e) % 7, rs), rs, 2).error
        assert np.array_equal(got, e)


def test_criterion_6_semicircle_values():
    assert semicircle(0.1 / 2, 0.5) == pytest.approx(0.7179, abs=0.0005)
    assert semicircle(0.293 / 2, 0.5) == pytest.approx(0.854, abs=0.001)


def test_criterion_6_dqi_above_uniform():
    cases = list(verify.twopath_cases()) + verify.orthonormality_cases()
    for inst, ell in cases:
        _, value = optimize_weights(inst, ell)
        assert value >= inst.m * inst.mean_r / inst.p - 1e-9


def test_criterion_6_dqi_beats_prange():
    def run():
        F, trials = gf.PrimeField(101), 2000
        for frac in (0.05, 0.1, 0.2):
            n = round(frac * 101)
            inst = problems.random_opi(F, n, 50, seed=n)
            dqi = run_dqi(inst).expected_satisfied
            pr = classical.prange_solve(inst, trials, seed=n)
            assert dqi >= inst.m * inst.r / inst.p
            assert dqi >= pr.mean_satisfied + 3 * pr.std_satisfied / math.sqrt(trials), (n, dqi, pr.mean_satisfied)

    _timed(run, 600.0)


@pytest.mark.parametrize("p,n", [(101, 5), (101, 10), (101, 20), (211, 21)])
def test_criterion_7_prange_calibration(p, n):
    inst = problems.random_opi(gf.PrimeField(p), n, p // 2, seed=p + n)
    rate = classical.prange_solve(inst, 2000, seed=n).mean_satisfied / inst.m
    assert abs(rate - (0.5 + n / (2 * p))) <= 0.03


def test_criterion_8_property_suites():
    results = verify.suite_properties(cases=1000, seed=0)
    names = {r.name for r in results}
    assert names == {"field-axioms", "linearity", "normalization", "hamming-weight", "disentanglement", "qft-roundtrip"}
    for r in results:
        assert r.ok and r.passed == 1000, (r.name, r.failures)


def test_criterion_8_cmd_verify(capsys):
    assert cli.main(["verify"]) == 0
    capsys.readouterr()
