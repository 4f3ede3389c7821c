"""Self-check suites run by ``dqi-lab verify``.

Each suite returns a :class:`SuiteResult` with pass/fail counters; checks never
raise, a raised exception counts as one failure with its message recorded.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from . import classical, codes, gf, problems
from .dqi import (
    WeightVector,
    build_dqi_direct,
    dqi_from_pk,
    dual_distance,
    gram_matrix,
    optimize_weights,
    phase_distance,
    pipeline_run,
    poisson_check,
    qft_state,
    run_dqi,
    semicircle,
)
from .dqi.state import StateVector
from .errors import AmbiguousSolution, BadDimension

TWO_PATH_TOL = 1e-8
NORM_TOL = 1e-10


@dataclass
class SuiteResult:
    name: str
    passed: int = 0
    failed: int = 0
    failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.failed == 0 and self.passed > 0

    def check(self, condition: bool, label: str) -> None:
        if condition:
            self.passed += 1
        else:
            self.failed += 1
            self.failures.append(label)

    def to_dict(self) -> dict:
        return {
            "suite": self.name,
            "ok": self.ok,
            "passed": self.passed,
            "failed": self.failed,
            "failures": self.failures[:20],
        }


def _guard(result: SuiteResult, label: str, fn) -> None:
    try:
        result.check(bool(fn()), label)
    except Exception as exc:  # a crashing check is a failing check
        result.check(False, f"{label}: {type(exc).__name__}: {exc}")


# worked examples


def example_opi() -> problems.MaxLinsatInstance:
    T = [(0, 1), (3, 6), (2, 5), (3, 6), (4, 5), (1, 5)]
    return problems.build_opi(gf.PrimeField(7), 3, T)


def example_mopi() -> problems.MaxLinsatInstance:
    def targets(x, y):
        v = (3 * (x**2 + x**3 + x**4) + y) % 5
        return (v, (v + 1) % 5)

    return problems.build_mopi(gf.PrimeField(5), 2, 1, targets)


def example_f5_code() -> codes.LinearCode:
    return codes.LinearCode([[1, 0, 1, 1], [0, 1, 1, 2]], gf.PrimeField(5))


def suite_fixtures() -> SuiteResult:
    res = SuiteResult("fixtures")
    F5, F7 = gf.PrimeField(5), gf.PrimeField(7)
    _guard(res, "F5 add", lambda: F5.add(3, 4) == 2)
    _guard(res, "F5 mul", lambda: F5.mul(3, 4) == 2)
    _guard(res, "F5 inverse of 2", lambda: F5.inv(2) == 3)
    _guard(res, "F5 primitive 2", lambda: F5.is_primitive(2))
    _guard(res, "F5 4 not primitive", lambda: not F5.is_primitive(4))
    _guard(res, "F5 reduction", lambda: gf.poly_reduce([10, -4, 12, -7], F5).coeffs == (0, 1, 2, 3))
    opi = example_opi()
    _guard(res, "opi f(4,1,2)", lambda: problems.objective(opi, (4, 1, 2)) == -2)
    _guard(res, "opi f(1,5,5)", lambda: problems.objective(opi, (1, 5, 5)) == 4)
    _guard(res, "opi f_3", lambda: problems.constraint_value(opi, 3, (4, 1, 2)) == -1)
    _guard(res, "opi Q(3)", lambda: gf.poly_eval(gf.FpPoly((4, 1, 2), F7), 3) == 4)
    _guard(res, "opi optimum", lambda: classical.exhaustive_optimum(opi).best_satisfied == 5)
    rs = codes.rs_code(range(1, 8), 3, F7)
    _guard(res, "rs codeword", lambda: codes.encode([3, 5, 1], rs).tolist() == [2, 3, 6, 4, 4, 6, 3])
    _guard(res, "rs distance", lambda: codes.min_distance(rs) == 5)
    rm = codes.rm_code(1, 3)
    _guard(res, "rm codeword", lambda: codes.encode([1, 0, 1, 1], rm).tolist() == [1, 0, 0, 1, 1, 0, 0, 1])
    _guard(res, "rm distance", lambda: codes.min_distance(rm) == 4)
    _guard(
        res,
        "rm decode",
        lambda: codes.nearest_codeword([0, 1, 1, 1, 0, 1, 0, 1], rm).codeword.tolist() == [0, 1, 0, 1, 0, 1, 0, 1],
    )
    mopi = example_mopi()
    _guard(res, "mopi satisfied", lambda: problems.count_satisfied(mopi, (0, 1, 1)) == 10)
    _guard(res, "mopi objective", lambda: problems.objective(mopi, (0, 1, 1)) == -5)
    G1 = np.array([[1, 0, 1, 1], [0, 1, 1, 2]])
    G2 = np.array([[4, 4, 1, 0], [4, 3, 0, 1]])
    _guard(res, "dual orthogonality", lambda: not np.any(gf.matmul_mod(G1, G2.T, 5)))
    _guard(res, "dual basis", lambda: gf.same_row_space(codes.dual_code(example_f5_code()).G, G2, 5))
    return res


# Fourier duality


def random_code(p: int, n: int, rng: np.random.Generator) -> codes.LinearCode:
    k = int(rng.integers(0, n + 1))
    rows = rng.integers(0, p, size=(k, n))
    if k == 0 or not rows.any():
        return codes.LinearCode(np.zeros((0, n), dtype=np.int64), gf.PrimeField(p))
    return codes.LinearCode.from_rows(rows, gf.PrimeField(p))


def suite_poisson(seed: int = 0, per_prime: int = 20) -> SuiteResult:
    res = SuiteResult("poisson")
    _guard(res, "[4,2] code over F5", lambda: poisson_check(example_f5_code())[2] < 1e-10)
    rng = np.random.default_rng(seed)
    for p in (2, 3, 5):
        for t in range(per_prime):
            n = int(rng.integers(1, 7))
            C = random_code(p, n, rng)
            _guard(res, f"p={p} case {t} n={n} k={C.k}", lambda: poisson_check(C)[2] < 1e-10)
    return res


# two construction paths


def _search_instance(p: int, m: int, n: int, ell: int, seed: int) -> problems.MaxLinsatInstance:
    """First seeded random instance whose dual distance admits decoding radius ell."""
    F = gf.PrimeField(p)
    for s in range(seed, seed + 10_000):
        r = 1 if p == 2 else 1 + s % (p - 1)
        try:
            inst = problems.random_instance(F, m, n, r, seed=s)
        except Exception:
            continue
        if dual_distance(inst) > 2 * ell:
            return inst
    raise BadDimension(f"no instance with p={p}, m={m}, n={n} has dual distance above {2 * ell}")


@lru_cache(maxsize=None)
def twopath_cases() -> tuple[tuple[problems.MaxLinsatInstance, int], ...]:
    """Instances with p = 2 (m <= 10, n <= 6, ell <= 3) and p in {3, 5, 7} (m <= 6, n <= 3, ell <= 2)."""
    binary = [(4, 2, 0), (5, 3, 1), (6, 4, 1), (8, 6, 2), (7, 6, 3), (10, 6, 1), (3, 3, 3), (3, 2, 1)]
    odd = [(3, 3, 2), (4, 3, 1), (6, 3, 1), (6, 2, 1), (5, 2, 1), (4, 2, 0), (2, 2, 2)]
    out = [(_search_instance(2, m, n, ell, 100 * m + n), ell) for m, n, ell in binary]
    for p in (3, 5, 7):
        # ell >= 1 needs pairwise independent rows, so m is at most the number of lines in F_p^n
        feasible = [(m, n, ell) for m, n, ell in odd if ell == 0 or m == n or m <= (p**n - 1) // (p - 1)]
        out += [(_search_instance(p, m, n, ell, 100 * m + n + p), ell) for m, n, ell in feasible]
        pts = range(1, min(p, 7))
        for n in (1, 2, 3):
            if n < len(pts):
                opi = problems.random_opi(gf.PrimeField(p), n, max(1, p // 2), seed=p + n, points=pts)
                out.append((opi, min(n // 2, 2)))
    return tuple(out)


def twopath_distances(inst, ell, w=None) -> tuple[float, float, float]:
    """Pairwise phase-aligned distances between pipeline, direct sum and |P^(k)> expansion."""
    if w is None:
        w, _ = optimize_weights(inst, ell)
    direct = build_dqi_direct(inst, w)
    piped, _ = pipeline_run(inst, w)
    expanded = dqi_from_pk(inst, w)
    return phase_distance(direct, piped), phase_distance(direct, expanded), phase_distance(piped, expanded)


def suite_twopath() -> SuiteResult:
    res = SuiteResult("twopath")
    for inst, ell in twopath_cases():
        label = f"p={inst.p} m={inst.m} n={inst.n} ell={ell} kind={inst.kind}"
        _guard(res, label, lambda: max(twopath_distances(inst, ell)) < TWO_PATH_TOL)
    return res


# orthonormality of the symmetric-polynomial states


def orthonormality_cases():
    """RS-based OPI instances with 2 ell < d_perp = n + 1."""
    out = []
    for p, n, r in ((7, 2, 3), (7, 3, 3), (5, 2, 2), (11, 4, 5), (13, 4, 6), (11, 5, 5)):
        inst = problems.random_opi(gf.PrimeField(p), n, r, seed=p * n)
        out.append((inst, n // 2))
    return out


def violating_case():
    """OPI over F_7 with n = 2, so d_perp = 3 while ell = 2."""
    return problems.random_opi(gf.PrimeField(7), 2, 3, seed=1), 2


def suite_orthonormality() -> SuiteResult:
    res = SuiteResult("orthonormality")
    for inst, ell in orthonormality_cases():
        label = f"p={inst.p} n={inst.n} ell={ell}"
        _guard(res, label, lambda: np.abs(gram_matrix(inst, ell) - np.eye(ell + 1)).max() < 1e-8)
    inst, ell = violating_case()
    _guard(res, "violating instance", lambda: np.abs(gram_matrix(inst, ell) - np.eye(ell + 1)).max() > 1e-3)

    def raises():
        try:
            pipeline_run(inst, WeightVector.normalized(np.ones(ell + 1)))
        except AmbiguousSolution:
            return True
        return False

    _guard(res, "violating instance decoder", raises)
    return res


# decoding


def rs_weight2_errors():
    p, n = 7, 7
    for w in range(3):
        for support in itertools.combinations(range(n), w):
            for values in itertools.product(range(1, p), repeat=w):
                e = np.zeros(n, dtype=np.int64)
                e[list(support)] = values
                yield e


def suite_decoder() -> SuiteResult:
    res = SuiteResult("decoder")
    F7 = gf.PrimeField(7)
    rs = codes.rs_code(range(1, 8), 3, F7)
    c = codes.encode([3, 5, 1], rs)
    for e in rs_weight2_errors():
        y = (c + e) % 7
        _guard(res, f"e={e.tolist()}", lambda: np.array_equal(codes.syndrome_decode(codes.syndrome(y, rs), rs, 2).error, e))
    return res


# semicircle law and baselines


def suite_semicircle(seed: int = 0, trials: int = 2000) -> SuiteResult:
    res = SuiteResult("semicircle")
    _guard(res, "n/p = 0.1", lambda: abs(semicircle(0.05, 0.5) - 0.7179) <= 0.0005)
    _guard(res, "n/p = 0.293", lambda: abs(semicircle(0.293 / 2, 0.5) - 0.854) <= 0.001)
    _guard(res, "clamp", lambda: semicircle(0.6, 0.5) == 1.0)
    _guard(res, "ell = 0", lambda: abs(semicircle(0.0, 0.3) - 0.3) < 1e-15)
    F = gf.PrimeField(101)
    for n in (5, 10, 20):
        inst = problems.random_opi(F, n, 50, seed=seed + n)

        def beats():
            dqi = run_dqi(inst).expected_satisfied
            pr = classical.prange_solve(inst, trials, seed=seed + n)
            return dqi >= pr.mean_satisfied + 3 * pr.std_satisfied / math.sqrt(trials)

        _guard(res, f"dqi > prange at n={n}", beats)
        _guard(res, f"dqi > mr/p at n={n}", lambda: run_dqi(inst).expected_satisfied >= inst.m * inst.r / inst.p)
    return res


# randomized properties


def _random_state(rng, p: int, sites: int) -> StateVector:
    z = rng.normal(size=p**sites) + 1j * rng.normal(size=p**sites)
    return StateVector(gf.PrimeField(p), sites, z / np.linalg.norm(z))


@lru_cache(maxsize=None)
def property_pool() -> tuple[tuple[problems.MaxLinsatInstance, int], ...]:
    """Small instances cheap enough to push through the pipeline many times."""
    shapes = [(2, 3, 2, 1), (2, 5, 3, 1), (2, 6, 3, 1), (3, 3, 2, 1), (3, 4, 2, 1), (5, 3, 2, 1), (2, 4, 4, 2)]
    return tuple((_search_instance(p, m, n, ell, 7 * m + n + p), ell) for p, m, n, ell in shapes)


def suite_properties(cases: int = 1000, seed: int = 0) -> list[SuiteResult]:
    rng = np.random.default_rng(seed)
    primes = (2, 3, 5, 7, 11, 13)
    axioms = SuiteResult("field-axioms")
    for _ in range(cases):
        F = gf.PrimeField(int(rng.choice(primes)))
        a, b, c = (int(v) for v in rng.integers(0, F.p, size=3))
        ok = (
            F.add(F.add(a, b), c) == F.add(a, F.add(b, c))
            and F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c))
            and F.add(a, b) == F.add(b, a)
            and F.mul(a, b) == F.mul(b, a)
            and F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
            and (a == 0 or F.mul(a, F.inv(a)) == 1)
        )
        axioms.check(ok, f"p={F.p} a={a} b={b} c={c}")

    linearity = SuiteResult("linearity")
    for t in range(cases):
        p = int(rng.choice((2, 3, 5, 7)))
        n = int(rng.integers(2, 7))
        C = random_code(p, n, rng)
        if C.k == 0:
            linearity.check(not np.any(codes.encode([], C)), f"case {t} zero code")
            continue
        m1, m2 = rng.integers(0, p, size=(2, C.k))
        a, b = (int(v) for v in rng.integers(0, p, size=2))
        lhs = codes.encode((a * m1 + b * m2) % p, C)
        rhs = (a * codes.encode(m1, C) + b * codes.encode(m2, C)) % p
        linearity.check(np.array_equal(lhs, rhs) and C.contains(lhs), f"case {t}")

    pool = property_pool()
    norm = SuiteResult("normalization")
    weight = SuiteResult("hamming-weight")
    disent = SuiteResult("disentanglement")
    for t in range(cases):
        inst, ell = pool[t % len(pool)]
        z = rng.normal(size=ell + 1) + 1j * rng.normal(size=ell + 1)
        w = WeightVector.normalized(z)
        try:
            state = build_dqi_direct(inst, w)
            final, snaps = pipeline_run(inst, w)
        except Exception as exc:
            for suite in (norm, weight, disent):
                suite.check(False, f"case {t}: {type(exc).__name__}: {exc}")
            continue
        norms = [state.norm(), final.norm()] + [s.norm() for s in snaps]
        norm.check(max(abs(v - 1) for v in norms) < NORM_TOL, f"case {t}")
        before, after = snaps[3].hamming_profile(), snaps[4].hamming_profile()
        weight.check(
            set(before) == set(after) and all(abs(before[k] - after[k]) < 1e-12 for k in before),
            f"case {t}",
        )
        disent.check(snaps[3].w_in_ground() and snaps[6].e_is_zero(), f"case {t}")

    roundtrip = SuiteResult("qft-roundtrip")
    for t in range(cases):
        p = int(rng.choice((2, 3, 5, 7)))
        sites = int(rng.integers(1, 5 if p < 5 else 4))
        psi = _random_state(rng, p, sites)
        back = qft_state(qft_state(psi, "forward"), "inverse")
        roundtrip.check(np.linalg.norm(back.amplitudes - psi.amplitudes) < 1e-12, f"case {t}")
    return [axioms, linearity, norm, weight, disent, roundtrip]


# cross-check of a stored instance


def independent_expectation(inst: problems.MaxLinsatInstance, ell: int) -> float:
    """<s> of the pipeline state at optimized weights, scored by direct summation."""
    w, _ = optimize_weights(inst, ell, "states")
    final, _ = pipeline_run(inst, w)
    prob = np.abs(final.amplitudes) ** 2
    total = 0.0
    for start, X in gf.vector_chunks(inst.p, inst.n):
        total += float(prob[start : start + X.shape[0]] @ inst.score(X))
    return total


def suite_instance(inst: problems.MaxLinsatInstance, ell: int | None = None) -> SuiteResult:
    res = SuiteResult("instance")

    def agree():
        report = run_dqi(inst, ell=ell)
        return abs(report.expected_satisfied - independent_expectation(inst, report.ell)) < 1e-8

    _guard(res, "solve --method dqi matches pipeline expectation", agree)
    return res


SUITES = ("fixtures", "poisson", "twopath", "orthonormality", "decoder", "semicircle", "properties")


def run_suites(names=None, seed: int = 0, cases: int = 1000) -> list[SuiteResult]:
    names = SUITES if names is None else names
    out: list[SuiteResult] = []
    for name in names:
        if name == "fixtures":
            out.append(suite_fixtures())
        elif name == "poisson":
            out.append(suite_poisson(seed))
        elif name == "twopath":
            out.append(suite_twopath())
        elif name == "orthonormality":
            out.append(suite_orthonormality())
        elif name == "decoder":
            out.append(suite_decoder())
        elif name == "semicircle":
            out.append(suite_semicircle(seed))
        elif name == "properties":
            out.extend(suite_properties(cases, seed))
        else:
            raise ValueError(f"unknown suite {name!r}")
    return out
