import itertools
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dqi_lab.codes import (
    LinearCode,
    decode,
    dual_code,
    encode,
    hamming_weight,
    min_distance,
    nearest_codeword,
    rm_code,
    rs_code,
    syndrome,
    syndrome_decode,
)
from dqi_lab.errors import (
    AmbiguousSolution,
    BadDimension,
    DimensionMismatch,
    DuplicatePoints,
    NoSolution,
    RankDeficient,
)
from dqi_lab.gf import FpPoly, PrimeField, matmul_mod, poly_eval, same_row_space

F2, F5, F7 = PrimeField(2), PrimeField(5), PrimeField(7)


@pytest.fixture(scope="module")
def rs73():
    return rs_code(range(1, 8), 3, F7)


@pytest.fixture(scope="module")
def rm13():
    return rm_code(1, 3)


def test_rs_generator_and_codeword(rs73):
    assert rs73.G.tolist() == [
        [1, 1, 1, 1, 1, 1, 1],
        [1, 2, 3, 4, 5, 6, 0],
        [1, 4, 2, 2, 4, 1, 0],
    ]
    assert encode([3, 5, 1], rs73).tolist() == [2, 3, 6, 4, 4, 6, 3]


def test_rs_distance_by_enumeration(rs73):
    fresh = LinearCode(rs73.G, F7)
    assert min_distance(fresh) == 5 == rs73.distance


def test_rs_codeword_is_polynomial_evaluation(rs73):
    rng = np.random.default_rng(0)
    for _ in range(50):
        msg = rng.integers(0, 7, size=3)
        P = FpPoly(tuple(msg), F7)
        assert encode(msg, rs73).tolist() == [poly_eval(P, x) for x in range(1, 8)]


def test_rs_argument_errors():
    with pytest.raises(DuplicatePoints):
        rs_code([1, 2, 8], 2, F7)
    with pytest.raises(BadDimension):
        rs_code([1, 2, 3], 4, F7)


def test_mds_k_equals_n():
    C = rs_code(range(4), 4, F5)
    assert min_distance(LinearCode(C.G, F5)) == 1


def test_rm13_generator(rm13):
    assert rm13.G.tolist() == [
        [1, 1, 1, 1, 1, 1, 1, 1],
        [0, 0, 0, 0, 1, 1, 1, 1],
        [0, 0, 1, 1, 0, 0, 1, 1],
        [0, 1, 0, 1, 0, 1, 0, 1],
    ]
    assert encode([1, 0, 1, 1], rm13).tolist() == [1, 0, 0, 1, 1, 0, 0, 1]
    assert min_distance(rm13) == 4


def test_rm_repetition():
    C = rm_code(0, 3)
    assert C.G.tolist() == [[1] * 8]
    with pytest.raises(BadDimension):
        rm_code(4, 3)


def test_nearest_codeword_example(rm13):
    res = nearest_codeword([0, 1, 1, 1, 0, 1, 0, 1], rm13)
    assert res.codeword.tolist() == [0, 1, 0, 1, 0, 1, 0, 1]
    assert res.unique
    assert hamming_weight(res.error) == 1


def test_nearest_codeword_tie_is_lexicographic(rm13):
    # weight-2 error on a distance-4 code: several codewords at distance 2
    y = [1, 1, 0, 0, 0, 0, 0, 0]
    res = nearest_codeword(y, rm13)
    assert not res.unique
    assert res.codeword.tolist() == [0, 0, 0, 0, 0, 0, 0, 0]


def test_codeword_decodes_to_itself(rs73):
    c = encode([1, 2, 3], rs73)
    res = decode(c, rs73, 2)
    assert not res.error.any()
    assert np.array_equal(res.codeword, c)


def test_dual_example():
    C = LinearCode([[1, 0, 1, 1], [0, 1, 1, 2]], F5)
    D = dual_code(C)
    assert same_row_space(D.G, [[4, 4, 1, 0], [4, 3, 0, 1]], 5)
    assert C.size * D.size == 5**4


def test_dual_of_full_space_is_zero_code():
    C = LinearCode(np.eye(3, dtype=int), F2)
    D = dual_code(C)
    assert D.k == 0
    assert math.isinf(min_distance(D))
    assert min_distance(C) == 1


def test_rank_checks():
    with pytest.raises(RankDeficient):
        LinearCode([[1, 1], [2, 2]], F5)
    with pytest.raises(DimensionMismatch):
        LinearCode([[1, 0, 0]], F5, H=[[1, 0, 0], [0, 1, 0]])


def test_syndrome_of_single_error(rs73):
    c = encode([4, 0, 6], rs73)
    e = np.zeros(7, dtype=int)
    e[2] = 3
    assert syndrome(c, rs73).tolist() == [0] * 4
    assert syndrome((c + e) % 7, rs73).tolist() == ((3 * rs73.H[:, 2]) % 7).tolist()
    with pytest.raises(DimensionMismatch):
        syndrome([1, 2], rs73)


def test_zero_syndrome_decodes_to_zero(rs73):
    assert not syndrome_decode([0, 0, 0, 0], rs73, 2).error.any()


def test_weight3_never_claims_wrong_unique(rs73):
    # weight-3 errors exceed the radius: either no preimage or a different low-weight one
    rng = np.random.default_rng(1)
    for _ in range(200):
        e = np.zeros(7, dtype=int)
        e[rng.choice(7, 3, replace=False)] = rng.integers(1, 7, size=3)
        try:
            found = syndrome_decode(syndrome(e, rs73), rs73, 2).error
        except (NoSolution, AmbiguousSolution):
            continue
        assert hamming_weight(found) <= 2
        assert not np.array_equal(found, e)


def test_ambiguous_radius_raises():
    C = rm_code(1, 3)
    e = np.zeros(8, dtype=int)
    e[[0, 1]] = 1
    with pytest.raises(AmbiguousSolution):
        syndrome_decode(syndrome(e, C), C, 2)


def test_table_size_and_agreement_with_nearest(rs73):
    table = rs73.syndrome_table(2)
    assert len(table) == 1 + 7 * 6 + 21 * 36 == 799
    assert not table.ambiguous
    rng = np.random.default_rng(2)
    for _ in range(100):
        c = encode(rng.integers(0, 7, size=3), rs73)
        e = np.zeros(7, dtype=int)
        w = int(rng.integers(0, 3))
        e[rng.choice(7, w, replace=False)] = rng.integers(1, 7, size=w)
        y = (c + e) % 7
        assert np.array_equal(nearest_codeword(y, rs73).error, syndrome_decode(syndrome(y, rs73), rs73, 2).error)


def test_rm_sweep_agreement(rm13):
    for c in next(rm13.codewords()):
        for i in range(8):
            y = c.copy()
            y[i] ^= 1
            assert np.array_equal(decode(y, rm13, 1).codeword, c)
            assert np.array_equal(nearest_codeword(y, rm13).codeword, c)


def test_from_parity_check_keeps_h():
    H = np.array([[1, 1, 1, 0], [0, 1, 2, 1]])
    C = LinearCode.from_parity_check(H, F5)
    assert np.array_equal(C.H, H)
    assert not np.any(matmul_mod(C.G, H.T, 5))


@settings(max_examples=150)
@given(st.sampled_from([2, 3, 5, 7]), st.integers(2, 6), st.integers(0, 2**32 - 1))
def test_random_code_invariants(p, n, seed):
    rng = np.random.default_rng(seed)
    k = int(rng.integers(1, n + 1))
    rows = rng.integers(0, p, size=(k, n))
    if not rows.any():
        return
    C = LinearCode.from_rows(rows, PrimeField(p))
    D = dual_code(C)
    assert not np.any(matmul_mod(C.G, C.H.T, p))
    assert C.k + D.k == n
    m1, m2 = rng.integers(0, p, size=(2, C.k))
    a, b = rng.integers(0, p, size=2)
    assert np.array_equal(encode((a * m1 + b * m2) % p, C), (a * encode(m1, C) + b * encode(m2, C)) % p)


def test_brute_force_distance_oracle():
    # the smallest weight over all nonzero messages, computed without the library
    G = np.array([[1, 0, 2, 1, 0], [0, 1, 1, 1, 2]])
    best = min(
        np.count_nonzero((np.array(m) @ G) % 3) for m in itertools.product(range(3), repeat=2) if any(m)
    )
    assert min_distance(LinearCode(G, PrimeField(3))) == best
