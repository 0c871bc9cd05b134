from __future__ import annotations

import itertools
from fractions import Fraction

import numpy as np
import pytest

import oracle
from rml.errors import InvalidDistribution
from rml.fields import PrimeField
from rml.genweights import d_weights
from rml.linalg import all_subspaces
from rml.matrix_codes import (
    MatrixCode,
    all_codes,
    classify,
    dual,
    min_distance,
    random_code,
    standard_anticode,
    weight_distribution,
)
from rml.qpolymatroid import (
    QPolymatroid,
    canonical_anticode_rho,
    canonical_mrd_rho,
    from_code,
    pm_characterize,
    pm_dual,
    pm_equivalent,
    recover,
    weight_enumerator,
)
from rml.verify import shiromoto_example_report

F2, F3 = PrimeField(2), PrimeField(3)
SHAPES = [(1, 2), (2, 2), (2, 3), (3, 2)]


def _first(P):
    return P[0] if isinstance(P, tuple) else P


def oracle_rho(C, V, transpose=False):
    """(dim C - dim{M in C : supports of M lie in V^perp}) / max(n, m), by brute force."""
    n, m, p = C.n, C.m, C.field.p
    words = oracle.span(C.basis.tolist(), p, n * m)
    perp = [list(v) for v in oracle.span(V.perp().gen.tolist(), p, V.ambient) if any(v)]
    rp = oracle.rank_mod(perp, p) if perp else 0
    cols = (n <= m) != transpose  # column vectors (length n) or row vectors (length m)

    def vectors(w):
        if cols:
            return [[w[r * m + c] for r in range(n)] for c in range(m)]
        return [list(w[r * m:(r + 1) * m]) for r in range(n)]

    inside = sum(
        all((oracle.rank_mod(perp + [v], p) if perp else int(any(x % p for x in v))) == rp for v in vectors(w))
        for w in words
    )
    k_sub = round(np.log(inside) / np.log(p))
    return Fraction(C.dim - k_sub, max(n, m))


@pytest.mark.parametrize("shape", SHAPES)
def test_rank_function_matches_brute_force(shape):
    rng = np.random.default_rng(sum(shape))
    n, m = shape
    for dim in range(1, n * m):
        C = random_code(n, m, dim, F2, rng)
        P = from_code(C)
        for V in all_subspaces(min(n, m), F2):
            assert _first(P)(V) == oracle_rho(C, V)
            if isinstance(P, tuple):
                assert P[1](V) == oracle_rho(C, V, transpose=True)


@pytest.mark.parametrize("shape", SHAPES)
def test_axioms_hold_for_every_code(shape):
    for C in all_codes(*shape, F2):
        for P in (from_code(C) if C.n == C.m else (from_code(C),)):
            assert P.axioms().holds


def test_axioms_hold_over_gf3():
    rng = np.random.default_rng(0)
    for dim in range(5):
        assert from_code(random_code(2, 2, dim, F3, rng))[0].axioms().holds


@pytest.mark.parametrize("rho,axiom", [
    (lambda V: V.dim + 1, "P1"),
    (lambda V: 1 if V.dim == 1 else 0, "P2"),
    (lambda V: 1 if V.dim == 2 else 0, "P3"),
])
def test_axiom_violations_are_reported(rho, axiom):
    report = QPolymatroid(F2, 2, rho).axioms()
    assert not report.holds
    assert report.counterexample["axiom"] == axiom


def test_dual_is_an_involution_and_matches_the_dual_code():
    for shape in [(2, 3), (3, 2), (2, 2)]:
        for C in all_codes(*shape, F2):
            P, D = _first(from_code(C)), _first(from_code(dual(C)))
            assert pm_dual(pm_dual(P)) == P
            assert pm_dual(P) == D


def test_recover_dimension_distance_and_profile():
    for shape in SHAPES:
        for C in all_codes(*shape, F2):
            if C.dim == 0:
                continue
            r = recover(from_code(C))
            assert r.dim == C.dim
            assert r.d_min == min_distance(C)
            assert r.profile == d_weights(C).values


def test_recover_rejects_non_code_rank():
    P = QPolymatroid(F2, 2, lambda V: Fraction(V.dim, 3), scale=2)
    with pytest.raises(InvalidDistribution):
        recover(P)


def test_enumerator_strings(fixture_code):
    P = from_code(fixture_code("expansion_matrices"))
    assert str(weight_enumerator(P, 2, 3, 2)) == "y^2 + 7x^2"
    assert str(weight_enumerator(from_code(MatrixCode.full(1, 2, F2)), 1, 2, 2)) == "y + 3x"


def test_enumerator_matches_distribution():
    for shape in [(1, 2), (2, 3), (2, 2)]:
        for C in itertools.islice(all_codes(*shape, F2), 150):
            E = weight_enumerator(_first(from_code(C)), C.n, C.m, 2)
            assert E.distribution(C.n) == weight_distribution(C)


def test_enumerator_preconditions(fixture_code):
    P = from_code(fixture_code("expansion_matrices"))
    with pytest.raises(ValueError):
        weight_enumerator(P, 3, 2, 2)
    with pytest.raises(ValueError):
        weight_enumerator(P, 1, 3, 2)


def test_characterization_of_mrd_and_anticodes(fixture_code):
    ch = pm_characterize(from_code(fixture_code("expansion_matrices")))
    assert ch.mrd and ch.mrd_form and not ch.anticode
    ch = pm_characterize(from_code(standard_anticode(2, 3, 1, F2)))
    assert ch.anticode and ch.anticode_r == 1 and not ch.mrd
    # the whole space is both
    ch = pm_characterize(from_code(standard_anticode(2, 3, 2, F2)))
    assert ch.anticode and ch.anticode_r == 2 and ch.mrd


def test_characterization_agrees_with_classification():
    for shape in [(2, 2), (2, 3)]:
        for C in all_codes(*shape, F2):
            if C.dim == 0:
                continue
            cl, ch = classify(C), pm_characterize(from_code(C))
            assert ch.mrd == cl.is_mrd
            assert ch.anticode == cl.is_optimal_anticode


def test_canonical_rank_functions():
    A = canonical_anticode_rho(3, 1, F2)
    assert A.axioms().holds and A.rank == 1
    M = canonical_mrd_rho(3, 2, F2)
    assert M.axioms().holds and M.rank == 2
    assert pm_equivalent(A, A) is not None
    assert pm_equivalent(A, M) is None


def test_transpose_rank_functions_of_the_equal_columns_code():
    report = shiromoto_example_report()
    assert report["rho_1_is_dim"]
    assert not report["equivalent"]
    # the one-dimensional space <(1,1)> gets rho_2 = 0 from the definition
    assert [(r["V"], r["rho_2"], r["claimed_rho_2"]) for r in report["mismatches"]] == [
        ("<(1,1)> in GF(2)^2", 0, 1)
    ]
