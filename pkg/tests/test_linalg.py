from __future__ import annotations

import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracle import rank_mod, span
from rml.errors import BudgetExceeded, FieldMismatch
from rml.fields import ExtField, PrimeField
from rml.linalg import (
    Subspace,
    all_subspaces,
    colsp,
    count_gl,
    enumerate_gl,
    enumerate_subspaces,
    gaussian,
    gl_array,
    inverse,
    matmul,
    nullspace,
    rank,
    rowsp,
    rref,
    subspace_ops,
)

F2, F3 = PrimeField(2), PrimeField(3)


def matrices(p, max_rows=5, max_cols=6):
    return st.integers(1, max_rows).flatmap(
        lambda r: st.integers(1, max_cols).flatmap(
            lambda c: st.lists(st.lists(st.integers(0, p - 1), min_size=c, max_size=c), min_size=r, max_size=r)
        )
    )


@settings(max_examples=200, deadline=None)
@given(matrices(3))
def test_rank_matches_oracle(M):
    assert rank(M, F3) == rank_mod(M, 3)
    assert rank(np.array(M).T, F3) == rank_mod(M, 3)


@settings(max_examples=150, deadline=None)
@given(matrices(2))
def test_rref_is_canonical_and_spans_the_rows(M):
    R, piv = rref(M, F2)
    assert span(R.tolist(), 2, len(M[0])) == span(M, 2, len(M[0]))
    assert R[:, piv].tolist() == np.eye(len(piv), dtype=int).tolist()
    # permuting rows leaves the RREF unchanged
    assert np.array_equal(rref(M[::-1], F2)[0], R)


@settings(max_examples=100, deadline=None)
@given(matrices(3, 4, 5))
def test_nullspace_is_the_orthogonal_complement(M):
    N = nullspace(M, F3)
    cols = len(M[0])
    assert N.shape[0] == cols - rank_mod(M, 3)
    assert not ((np.array(M) @ N.T) % 3).any()


def test_rref_over_extension_field():
    F = ExtField(2, 2)
    M = np.array([[1, 2, 3], [2, 3, 1]])  # second row = a * first row
    R, piv = rref(M, F)
    assert piv == [0] and R.tolist() == [[1, 2, 3]]


def test_inverse_and_matmul():
    A = np.array([[1, 1, 0], [0, 1, 2], [2, 0, 1]])
    Ai = inverse(A, F3)
    assert matmul(A, Ai, F3).tolist() == np.eye(3, dtype=int).tolist()
    with pytest.raises(ZeroDivisionError):
        inverse([[1, 1], [1, 1]], F2)


def test_batched_matmul_over_extension_field():
    F = ExtField(2, 2)
    rng = np.random.default_rng(3)
    A = rng.integers(0, 4, (1, 2, 3))
    B = rng.integers(0, 4, (5, 3, 4))
    out = matmul(A, B, F)
    assert out.shape == (5, 2, 4)
    for k in range(5):
        assert np.array_equal(out[k], matmul(A[0], B[k], F))


@pytest.mark.parametrize("ell,field", [(3, F2), (4, F2), (2, F3), (3, F3), (2, ExtField(2, 2))])
def test_subspace_enumeration_counts_and_uniqueness(ell, field):
    subs = all_subspaces(ell, field)
    Q = field.order
    assert len(set(subs)) == len(subs) == sum(gaussian(ell, k, Q) for k in range(ell + 1))
    dims = [S.dim for S in subs]
    assert dims == sorted(dims)
    assert subs[0] == Subspace.zero(field, ell) and subs[-1] == Subspace.full(field, ell)


def test_subspace_count_matches_brute_force_spans():
    ell, p = 3, 2
    vecs = list(itertools.product(range(p), repeat=ell))
    spans = {frozenset(span([list(v) for v in combo], p, ell)) for k in range(ell + 1) for combo in itertools.combinations(vecs, k)}
    assert len(spans) == len(all_subspaces(ell, F2)) == 16


def test_gaussian_binomials():
    assert [gaussian(4, k, 2) for k in range(5)] == [1, 15, 35, 15, 1]
    assert gaussian(3, 1, 3) == 13
    assert gaussian(3, 4, 2) == 0


def test_enumeration_order_within_a_dimension():
    lines = list(enumerate_subspaces(2, 1, F2))
    assert [S.gen.tolist() for S in lines] == [[[1, 0]], [[1, 1]], [[0, 1]]]


def test_gl_enumeration():
    assert count_gl(3, 2) == 168 == len(gl_array(3, F2))
    assert len(gl_array(2, F3)) == 48
    G = gl_array(2, F2)
    # flattened lexicographic order: the swap matrix precedes the identity
    assert G[0].tolist() == [[0, 1], [1, 0]]
    assert [g.tolist() for g in G].index([[1, 0], [0, 1]]) == 2
    assert len({g.tobytes() for g in G}) == len(G)
    F4 = ExtField(2, 2)
    assert sum(1 for _ in enumerate_gl(2, F4)) == count_gl(2, 4) == 180
    with pytest.raises(BudgetExceeded):
        list(enumerate_gl(3, F3, budget=100))


def test_subspace_lattice_operations():
    U = rowsp([[1, 0, 0], [0, 1, 0]], F2)
    V = rowsp([[0, 1, 0], [0, 0, 1]], F2)
    assert (U & V) == rowsp([[0, 1, 0]], F2)
    assert (U + V).dim == 3
    assert U.perp() == rowsp([[0, 0, 1]], F2)
    assert U.contains([1, 1, 0]) and not U.contains([0, 0, 1])
    assert rowsp([[1, 0, 0]], F2) <= U
    assert colsp([[1, 0], [1, 0]], F2) == rowsp([[1, 1]], F2)
    assert subspace_ops(U, V, "intersect") == (U & V)
    with pytest.raises(FieldMismatch):
        U + rowsp([[1, 0]], F2)
    with pytest.raises(ValueError):
        subspace_ops(U, V, "xor")


@pytest.mark.parametrize("ell,field", [(3, F2), (2, F3)])
def test_modular_law_and_dimension_formula(ell, field):
    subs = all_subspaces(ell, field)
    for U, V in itertools.product(subs, repeat=2):
        assert (U + V).dim + (U & V).dim == U.dim + V.dim
        assert U.perp().perp() == U


def test_vectors_enumerates_the_span():
    S = rowsp([[1, 0, 2], [0, 1, 1]], F3)
    got = {tuple(v) for v in S.vectors().tolist()}
    assert got == span(S.gen.tolist(), 3, 3)
    assert len(Subspace.zero(F3, 3).vectors()) == 1
