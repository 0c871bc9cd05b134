from __future__ import annotations

import itertools

import numpy as np
import pytest

import oracle
from rml.errors import FieldMismatch
from rml.fields import ExtField, FieldBasis, all_bases, orthogonal_basis
from rml.linalg import all_subspaces, rowsp
from rml.matrix_codes import MatrixCode, classify, dual, min_distance
from rml.vector_codes import (
    VectorCode,
    all_vector_codes,
    code_support,
    expand,
    expansion,
    fixed_space,
    frobenius_closure,
    is_frobenius_fixed,
    random_vector_code,
    rank_weight,
    standard_vector_anticode,
    subcodes,
    support,
    v_equivalent,
    vclassify,
    vdual,
    vmax_rank,
    vmin_distance,
    vweight_distribution,
)

F4, F8 = ExtField(2, 2), ExtField(2, 3)


@pytest.mark.parametrize("F,n", [(F4, 2), (F8, 1), (ExtField(3, 2), 2)])
def test_rank_weight_is_expansion_rank_in_every_basis(F, n):
    for v in itertools.product(range(F.order), repeat=n):
        want = oracle.rank_weight([list(F.digits[x]) for x in v], F.p)
        assert rank_weight(v, F) == want
        for G in itertools.islice(all_bases(F), 12):
            M = expansion(np.array(v), G)
            assert oracle.rank_mod(M.tolist(), F.p) == want


def test_support_is_basis_independent():
    for v in itertools.product(range(4), repeat=2):
        v = np.array(v)
        ref = support(v, F4)
        for G in all_bases(F4):
            assert rowsp(expansion(v, G).T, F4.prime) == ref


def test_expansion_of_the_running_example(fixture_code):
    C = fixture_code("expansion_gf8")
    M = expand(C, FieldBasis.power(F8))
    assert M == fixture_code("expansion_matrices")
    assert vweight_distribution(C) == (1, 0, 7)
    assert vmin_distance(C) == 2 == min_distance(M)


def test_duality_compatibility(fixture_code):
    C = fixture_code("expansion_gf8")
    G = FieldBasis.power(F8)
    D = vdual(C)
    assert D == fixture_code("dual_vector_gf8")
    assert dual(expand(C, G)) == expand(D, orthogonal_basis(G)) == fixture_code("dual_matrices")


def test_duality_compatibility_for_every_basis():
    rng = np.random.default_rng(5)
    for F in (F4, F8):
        C = random_vector_code(3, 1, F, rng)
        for G in itertools.islice(all_bases(F), 30):
            assert dual(expand(C, G)) == expand(vdual(C), orthogonal_basis(G))


def test_expand_preserves_distance_and_scales_dimension():
    rng = np.random.default_rng(1)
    for F in (F4, F8):
        for n in (1, 2, 3):
            for k in range(n + 1):
                C = random_vector_code(n, k, F, rng)
                M = expand(C, FieldBasis.power(F))
                assert M.dim == F.m * C.dim
                if C.dim:
                    assert min_distance(M) == vmin_distance(C)


def test_mrd_and_anticode_transfer_only_when_n_le_m():
    for C in all_vector_codes(2, F4):  # n <= m
        M = expand(C, FieldBasis.power(F4))
        assert vclassify(C).is_mrd == classify(M).is_mrd
        assert vclassify(C).is_optimal_vector_anticode == classify(M).is_optimal_anticode
    for C in all_vector_codes(3, F4):  # n > m
        M = expand(C, FieldBasis.power(F4))
        both = vclassify(C).is_optimal_vector_anticode and classify(M).is_optimal_anticode
        assert both == (C.dim == 0)


def test_standard_vector_anticodes():
    for k in range(3):
        A = standard_vector_anticode(3, k, ExtField(2, 3))
        assert A.dim == k
        assert vmax_rank(A) == k
        assert vclassify(A).is_optimal_vector_anticode
    assert not vclassify(VectorCode.full(3, F4)).is_optimal_vector_anticode
    with pytest.raises(ValueError):
        standard_vector_anticode(3, 3, F4)


def test_optimal_vector_anticodes_below_m_are_frobenius_fixed():
    for k in (0, 1):
        std = standard_vector_anticode(3, k, F4)
        for C in all_vector_codes(3, F4, k):
            if vclassify(C).is_optimal_vector_anticode:
                assert is_frobenius_fixed(C)
                assert v_equivalent(C, std) is not None


def test_dimension_m_anticodes_need_not_be_standard():
    # every 2-dim code of GF(4)^3 has max rank 2, but only 7 of the 21 are Frobenius-fixed
    codes = list(all_vector_codes(3, F4, 2))
    assert len(codes) == 21
    assert all(vclassify(C).is_optimal_vector_anticode for C in codes)
    std = standard_vector_anticode(3, 2, F4)
    equivalent = [v_equivalent(C, std) is not None for C in codes]
    fixed = [is_frobenius_fixed(C) for C in codes]
    assert equivalent == fixed and sum(fixed) == 7
    C = VectorCode(3, F4, [[1, 0, 0], [0, 1, 2]])  # <(1,0,0), (0,1,a)>
    assert vmax_rank(C) == 2 and not is_frobenius_fixed(C)


def test_equivalence_witness_is_a_swap():
    C = VectorCode.from_rows([[1, 0]], F4)
    D = VectorCode.from_rows([[0, 1]], F4)
    w = v_equivalent(C, D)
    assert w is not None and w.B.tolist() == [[0, 1], [1, 0]]
    assert w.image(C) == D
    assert v_equivalent(C, C) is not None
    assert v_equivalent(C, VectorCode.from_rows([[1, 2]], F4)) is None


def test_frobenius_closure_and_fixed_spaces():
    C = VectorCode.from_rows([[1, 2]], F4)  # (1, a)
    assert frobenius_closure(C) == VectorCode.full(2, F4)
    for U in all_subspaces(2, F4.prime):
        V = fixed_space(U, F4)
        assert is_frobenius_fixed(V) and V.dim == U.dim
        assert code_support(V) == U


def test_subcodes_enumerates_every_subspace():
    C = VectorCode.full(2, F4)
    assert len(list(subcodes(C, 1))) == 5
    assert all(D.is_subcode_of(C) for D in subcodes(C, 1))


def test_field_mismatch():
    with pytest.raises(FieldMismatch):
        VectorCode.full(2, F4) + VectorCode.full(2, F8)
    with pytest.raises(TypeError):
        VectorCode(2, F4.prime)
    with pytest.raises(FieldMismatch):
        expand(VectorCode.full(2, F4), FieldBasis.power(F8))


def test_zero_code():
    Z = VectorCode.zero(2, F4)
    assert vweight_distribution(Z) == (1, 0, 0)
    assert expand(Z, FieldBasis.power(F4)) == MatrixCode.zero(2, 2, F4.prime)
