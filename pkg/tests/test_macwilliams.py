from __future__ import annotations

import numpy as np
import pytest

import oracle
from rml.errors import InvalidDistribution
from rml.fields import PrimeField
from rml.macwilliams import (
    EXPONENT_READINGS,
    MOMENT_READINGS,
    macwilliams_moments,
    macwilliams_transform,
    mrd_weight_distribution,
    rank_counts,
)
from rml.matrix_codes import all_codes, dual, random_code, weight_distribution

F2, F3 = PrimeField(2), PrimeField(3)


def _dual_distribution_oracle(C):
    words = oracle.dual_span(C.basis.tolist(), C.n, C.m, C.q)
    A = [0] * (min(C.n, C.m) + 1)
    for w in words:
        A[oracle.matrix_rank(w, C.n, C.m, C.q)] += 1
    return tuple(A)


def test_transform_on_every_small_code_of_mat_2x2():
    for C in all_codes(2, 2, F2):
        if C.dim > 2:
            continue
        A = weight_distribution(C)
        assert macwilliams_transform(A, 2, 2, 2, C.size) == _dual_distribution_oracle(C)


@pytest.mark.parametrize("n,m,q", [(2, 3, 2), (3, 2, 2), (2, 2, 3), (3, 3, 2), (1, 3, 3)])
def test_transform_on_random_codes(n, m, q):
    rng = np.random.default_rng(n * 100 + m * 10 + q)
    for _ in range(6):
        C = random_code(n, m, int(rng.integers(0, n * m + 1)), PrimeField(q), rng)
        A = weight_distribution(C)
        B = macwilliams_transform(A, n, m, q, C.size)
        assert B == weight_distribution(dual(C))
        assert macwilliams_transform(B, n, m, q, q ** (n * m - C.dim)) == A


def test_frozen_values():
    # the running 2 x 3 example and its dual both have distribution (1, 0, 7)
    assert macwilliams_transform((1, 0, 7), 2, 3, 2, 8) == (1, 0, 7)
    assert macwilliams_transform((1, 0, 0), 2, 3, 2, 1) == (1, 21, 42)
    assert macwilliams_transform((1, 21, 42), 2, 3, 2, 64) == (1, 0, 0)


def test_only_the_ell_exponent_reading_survives():
    survivors = set(EXPONENT_READINGS)
    for C in all_codes(2, 2, F2, dim=1):
        A, B = weight_distribution(C), weight_distribution(dual(C))
        for r in list(survivors):
            if macwilliams_transform(A, 2, 2, 2, C.size, reading=r, strict=False) != B:
                survivors.discard(r)
    assert survivors == {"ell"}


def test_only_the_j_moment_reading_survives():
    survivors = set(MOMENT_READINGS)
    rng = np.random.default_rng(0)
    for _ in range(10):
        C = random_code(2, 3, 2, F2, rng)
        A, B = weight_distribution(C), weight_distribution(dual(C))
        for r in list(survivors):
            if not all(macwilliams_moments(A, B, 2, 3, 2, C.size, reading=r).values()):
                survivors.discard(r)
    assert survivors == {"j"}


def test_invalid_inputs():
    with pytest.raises(InvalidDistribution):
        macwilliams_transform((1, 0), 2, 3, 2, 1)
    with pytest.raises(InvalidDistribution):
        macwilliams_transform((1, 1, 1), 2, 3, 2, 8)
    with pytest.raises(InvalidDistribution):
        # no 3-dim code of Mat_2x2(GF(2)) has seven invertible matrices: the dual is fractional
        macwilliams_transform((1, 0, 7), 2, 2, 2, 8)
    with pytest.raises(InvalidDistribution):
        macwilliams_transform((1, 1, 6), 2, 2, 2, 8)  # negative entry


def test_mrd_formula():
    assert mrd_weight_distribution(2, 3, 2, 3, 2) == (1, 0, 7)
    assert mrd_weight_distribution(3, 3, 2, 6, 2) == (1, 0, 49, 14)
    assert mrd_weight_distribution(2, 3, 2, 6, 1) == (1, 21, 42)
    with pytest.raises(InvalidDistribution):
        mrd_weight_distribution(2, 3, 2, 3, 4)


def test_rank_counts():
    assert rank_counts(2, 3, 2) == (1, 21, 42)
    assert rank_counts(3, 3, 2) == (1, 49, 294, 168)
    assert rank_counts(3, 2, 3) == (1, 104, 624)
    for n, m, q in [(2, 4, 3), (4, 4, 2)]:
        assert sum(rank_counts(n, m, q)) == q ** (n * m)
