import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dqi_lab.errors import DimensionMismatch, DomainError, ZeroInverse
from dqi_lab.gf import (
    FpPoly,
    PrimeField,
    digits_to_index,
    enumerate_vectors,
    ff_add,
    ff_inv,
    ff_mul,
    index_to_digits,
    is_primitive,
    matmul_mod,
    nullspace,
    poly_eval,
    poly_reduce,
    rank,
    rref,
    same_row_space,
    vector_chunks,
)

PRIMES = [2, 3, 5, 7, 11, 13]
F5, F7 = PrimeField(5), PrimeField(7)


def test_f5_worked_arithmetic():
    assert ff_add(3, 4, F5) == 2
    assert ff_mul(3, 4, F5) == 2
    assert ff_inv(2, F5) == 3


def test_f5_primitive_elements():
    assert is_primitive(2, F5)
    assert not is_primitive(4, F5)
    assert {pow(4, k, 5) for k in range(1, 5)} == {1, 4}
    assert is_primitive(1, PrimeField(2))


@pytest.mark.parametrize("p", PRIMES)
def test_additive_identity_and_unit_inverse(p):
    F = PrimeField(p)
    assert all(F.add(0, a) == a for a in range(p))
    assert F.inv(1) == 1


def test_inverses_mod_7_by_brute_force():
    for a in range(1, 7):
        partners = [b for b in range(7) if (a * b) % 7 == 1]
        assert partners == [F7.inv(a)]


def test_zero_has_no_inverse():
    with pytest.raises(ZeroInverse):
        F7.inv(0)
    with pytest.raises(ZeroDivisionError):
        F7.inv(14)


@pytest.mark.parametrize("bad", [1, 0, -3, 4, 9, 15, 2**31 - 1 + 2])
def test_non_primes_rejected(bad):
    with pytest.raises(DomainError):
        PrimeField(bad)


def test_prime_power_message():
    with pytest.raises(DomainError, match="prime power"):
        PrimeField(9)


def test_modulus_guard():
    assert PrimeField(2**31 - 1).p == 2**31 - 1
    with pytest.raises(DomainError):
        PrimeField(2**31 + 11)


def test_canonical_representatives():
    assert F7(-1) == 6
    arr = F7.array([-1, 7, 15])
    assert arr.tolist() == [6, 0, 1]
    assert not arr.flags.writeable
    assert F7.array([10**30 + 1]).tolist() == [(10**30 + 1) % 7]


@pytest.mark.parametrize("p", PRIMES)
def test_primitive_exists_and_generates(p):
    F = PrimeField(p)
    g = F.primitive_element()
    assert {pow(g, k, p) for k in range(p - 1)} == set(range(1, p))


def test_poly_reduce_example():
    assert poly_reduce([10, -4, 12, -7], F5).coeffs == (0, 1, 2, 3)
    assert poly_reduce([0, 0], F5).is_zero()
    assert poly_reduce([5, 10, 15], F5).degree == -1


def test_poly_eval():
    assert poly_eval(FpPoly((4, 1, 2), F7), 3) == 4
    assert all(poly_eval(FpPoly((3,), F7), x) == 3 for x in range(7))
    assert FpPoly((0, 0, 5), F7).degree == 2


@settings(max_examples=300)
@given(
    st.sampled_from(PRIMES),
    st.integers(-50, 50),
    st.integers(-50, 50),
    st.integers(-50, 50),
)
def test_field_axioms(p, a, b, c):
    F = PrimeField(p)
    a, b, c = F(a), F(b), F(c)
    assert F.add(F.add(a, b), c) == F.add(a, F.add(b, c))
    assert F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c))
    assert F.add(a, b) == F.add(b, a)
    assert F.mul(a, b) == F.mul(b, a)
    assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
    assert F.add(a, F.neg(a)) == 0
    if a:
        assert F.inv(F.inv(a)) == a


@settings(max_examples=200)
@given(st.sampled_from(PRIMES), st.lists(st.integers(-10**6, 10**6), max_size=6), st.integers(-100, 100))
def test_poly_eval_matches_integer_evaluation(p, coeffs, x):
    F = PrimeField(p)
    exact = sum(c * x**j for j, c in enumerate(coeffs))
    assert poly_eval(poly_reduce(coeffs, F), x) == exact % p


def test_matmul_mod_wide_modulus():
    p = 2**31 - 1
    A = np.full((3, 4), p - 1, dtype=np.int64)
    B = np.full((4, 2), p - 1, dtype=np.int64)
    expect = [[(4 * (p - 1) ** 2) % p] * 2] * 3
    assert matmul_mod(A, B, p).tolist() == expect


def test_matmul_shape_check():
    with pytest.raises(DimensionMismatch):
        matmul_mod(np.zeros((2, 3)), np.zeros((2, 3)), 5)


@settings(max_examples=100)
@given(st.sampled_from([2, 3, 5, 7]), st.integers(1, 4), st.integers(1, 5), st.integers(0, 2**32 - 1))
def test_nullspace_and_rank(p, rows, cols, seed):
    M = np.random.default_rng(seed).integers(0, p, size=(rows, cols))
    N = nullspace(M, p)
    assert N.shape[0] == cols - rank(M, p)
    assert not np.any(matmul_mod(M, N.T, p)) if N.size else True
    R, piv = rref(M, p)
    assert same_row_space(R, M, p)
    assert len(piv) == rank(M, p)


def test_enumeration_order():
    V = enumerate_vectors(3, 2)
    assert V.tolist() == [list(t) for t in itertools.product(range(3), repeat=2)]
    assert digits_to_index((1, 2), 3) == 5
    assert index_to_digits(5, 3, 2) == (1, 2)
    chunks = np.concatenate([b for _, b in vector_chunks(3, 3, chunk=4)])
    assert np.array_equal(chunks, enumerate_vectors(3, 3))
