"""The eleven acceptance criteria, each timed against its limit.

Every test appends one line to ``RESULTS``; conftest prints them at the end of
the session, and running this file as a script prints them directly.
"""

from __future__ import annotations

import time
from contextlib import contextmanager

import numpy as np
import pytest

from rml import macwilliams as mw
from rml.fields import ExtField, FieldBasis, PrimeField, orthogonal_basis
from rml.genweights import W_DEFINITIONS, agrees_with_support, d_weights, delta_weights, theorem_bridges, w_weights
from rml.errors import InapplicableDefinition
from rml.linalg import all_subspaces
from rml.matrix_codes import (
    all_codes,
    are_equivalent,
    classify,
    dual,
    isometry_count,
    max_rank,
    min_distance,
    random_code,
    standard_anticode,
    subspace_anticode,
    weight_distribution,
)
from rml.qpolymatroid import from_code, pm_dual, recover, weight_enumerator
from rml.vector_codes import (
    all_vector_codes,
    expand,
    is_frobenius_fixed,
    random_vector_code,
    standard_vector_anticode,
    v_equivalent,
    vclassify,
    vdual,
)
from rml.verify import Grid, extension_counterexample, sample_codes, shiromoto_example_report

RESULTS: list[str] = []
F2 = PrimeField(2)
F4, F8 = ExtField(2, 2), ExtField(2, 3)
GRID_SHAPES = [(q, n, m) for q in (2, 3) for n in (1, 2, 3) for m in (1, 2, 3)]


@contextmanager
def criterion(number: int, title: str, limit: float | None = None, note: str = ""):
    """Time the block and record one pass/fail line; a failed assertion or an
    exceeded limit is recorded as FAIL and re-raised."""
    start = time.perf_counter()
    status, extra = "PASS", note
    details: list[str] = []
    try:
        yield details
    except AssertionError as e:
        status, extra = "FAIL", str(e).splitlines()[0] if str(e) else "assertion failed"
        raise
    finally:
        elapsed = time.perf_counter() - start
        if status == "PASS" and limit is not None and elapsed >= limit:
            status, extra = "FAIL", f"took {elapsed:.1f}s"
        budget = f" (limit {limit:g}s)" if limit is not None else ""
        line = f"criterion {number:>2}: {status}  {title}  [{elapsed:.2f}s{budget}]"
        RESULTS.append(line + (f"  {extra}" if extra else ""))
        RESULTS.extend(f"              {d}" for d in details)
        print("\n".join([RESULTS[-1 - len(details)], *RESULTS[len(RESULTS) - len(details):]]))
    if limit is not None:
        assert elapsed < limit, f"criterion {number} took {elapsed:.1f}s, limit {limit}s"


def _load(name):
    from rml.verify import load_fixture

    return load_fixture(f"{name}.json")


def _sampled_codes(q, n, m, count, rng):
    """``count`` random codes of Mat_{n x m}(GF(q)) with dimension drawn uniformly."""
    F = PrimeField(q)
    return [random_code(n, m, int(rng.integers(0, n * m + 1)), F, rng) for _ in range(count)]


def test_criterion_1_expansion_example():
    with criterion(1, "expansion of <(1, a)> in GF(8)^2 equals the reference matrices", 1.0):
        C = _load("expansion_gf8")
        assert expand(C, FieldBasis.power(F8)) == _load("expansion_matrices")


def test_criterion_2_duality_example():
    with criterion(2, "Gamma(C)^perp equals the reference span and Gamma'(C^perp)", 1.0):
        C = _load("expansion_gf8")
        G = FieldBasis.power(F8)
        H = orthogonal_basis(G)
        assert H.elements == (1, 4, 2), "orthogonal basis of {1, a, a^2} is not {1, a^2, a}"
        D = dual(expand(C, G))
        assert D == _load("dual_matrices")
        assert D == expand(vdual(C), H)


def test_criterion_3_macwilliams_grid():
    with criterion(3, "MacWilliams transform equals the enumerated dual distribution", 60.0,
                   note=f"{len(GRID_SHAPES)} shapes x 200 samples + all dim <= 2 codes of Mat_2x2(GF(2))"):
        rng = np.random.default_rng(2024)
        codes = [C for shape in GRID_SHAPES for C in _sampled_codes(*shape, 200, rng)]
        codes += [C for C in all_codes(2, 2, F2) if C.dim <= 2]
        for C in codes:
            want = weight_distribution(dual(C))
            got = mw.macwilliams_transform(weight_distribution(C), C.n, C.m, C.q, C.size)
            assert tuple(got) == want, f"mismatch on a {C.n}x{C.m} code over GF({C.q})"


def _mrd_like_codes():
    rng = np.random.default_rng(4)
    yield from sample_codes(Grid(), rng)
    for shape in [(2, 2), (2, 3), (3, 2)]:
        yield from all_codes(*shape, F2)
    for F, n in [(F8, 2), (F8, 3), (ExtField(3, 2), 2), (F4, 2)]:
        for k in range(1, n + 1):
            for _ in range(3):
                yield expand(random_vector_code(n, k, F, rng), FieldBasis.power(F))


def test_criterion_4_mrd_distribution_formula():
    with criterion(4, "MRD / dually quasi-MRD distribution formula matches enumeration") as details:
        seen = {"mrd": 0, "quasi": 0}
        for C in _mrd_like_codes():
            if C.dim == 0:
                continue
            cl = classify(C)
            if not (cl.is_mrd or cl.is_dually_quasi_mrd):
                continue
            seen["mrd" if cl.is_mrd else "quasi"] += 1
            want = weight_distribution(C)
            assert mw.mrd_weight_distribution(C.n, C.m, C.q, C.dim, min_distance(C)) == want
        assert seen["mrd"] and seen["quasi"]
        assert mw.mrd_weight_distribution(2, 3, 2, 3, 2) == (1, 0, 7)
        details.append(f"{seen['mrd']} MRD and {seen['quasi']} dually quasi-MRD codes checked")


def test_criterion_5_generalized_weight_examples():
    with criterion(5, "generalized weight examples", 5.0):
        E2 = _load("equal_columns_2x2")
        assert d_weights(E2).weight(2) == 1
        assert delta_weights(E2).weight(2) == 2
        assert delta_weights(E2.T).weight(2) == 1
        E3 = _load("equal_columns_3x2")
        assert d_weights(E3).weight(3) == 1 and delta_weights(E3).weight(3) == 3
        R = _load("first_row_3x2")
        assert d_weights(R).values == (1, 2) and delta_weights(R).weight(2) == 1


def _w_profiles(C):
    out = {}
    for name in W_DEFINITIONS:
        try:
            out[name] = w_weights(C, name).values
        except InapplicableDefinition:
            pass
    return out


def test_criterion_6_definition_equivalences():
    with criterion(6, "w definitions agree and w_i(C) = d_{mi-e}(Gamma(C)) for n <= m", 120.0):
        rng = np.random.default_rng(6)
        codes = [C for k in (1, 2) for C in all_vector_codes(2, F4, k)]
        codes += [random_vector_code(2, k, F8, rng) for k in (1, 2) for _ in range(10)]
        for C in codes:
            prof = _w_profiles(C)
            assert set(prof) == set(W_DEFINITIONS)
            assert len(set(prof.values())) == 1, f"w definitions disagree: {prof}"
            for b in theorem_bridges(C):
                assert b.holds is not False, b.name
        U = _load("unit_vector_gf4")
        assert w_weights(U).weight(1) == 1
        assert d_weights(expand(U, FieldBasis.power(F4))).weight(2) == 2


def test_criterion_7_bounds():
    with criterion(7, "Singleton, Anticode and dual-pair bounds with equality cases"):
        rng = np.random.default_rng(7)
        for C in sample_codes(Grid(), rng):
            D = dual(C)
            lo, hi = C.lo, C.hi
            d, r, dd, rd = min_distance(C), max_rank(C), min_distance(D), max_rank(D)
            cl = classify(C)
            assert C.dim <= hi * (lo - d + 1)
            assert C.dim <= hi * r
            assert d + dd <= lo + 2 and (d + dd == lo + 2) == cl.is_mrd
            assert r + rd >= lo and (r + rd == lo) == cl.is_optimal_anticode
            assert d <= rd + 1
            assert cl.is_mrd == (C.dim == hi * (lo - d + 1))
            assert cl.is_optimal_anticode == (C.dim == hi * r)


def test_criterion_8_qpolymatroids():
    with criterion(8, "q-polymatroid axioms, duality, recovery and enumerator", 120.0):
        rng = np.random.default_rng(8)
        for C in sample_codes(Grid(), rng):
            P, PD = from_code(C), from_code(dual(C))
            pairs = zip(P, PD) if isinstance(P, tuple) else [(P, PD)]
            for X, XD in pairs:
                assert X.axioms().holds
                assert pm_dual(pm_dual(X)) == X
                assert pm_dual(X) == XD
            rec = recover(P)
            assert (rec.dim, rec.d_min, rec.profile) == (C.dim, min_distance(C), d_weights(C).values)
            if C.n <= C.m:
                X = P[0] if isinstance(P, tuple) else P
                assert weight_enumerator(X, C.n, C.m, C.q).distribution(C.n) == weight_distribution(C)


def _matrix_anticode_classification():
    mats = set()
    for V in all_subspaces(2, F2):
        A = subspace_anticode(2, 2, V)
        mats |= {A, A.T}
    anticodes = [C for C in all_codes(2, 2, F2) if C.dim == 2 * max_rank(C)]
    assert len(anticodes) == 8
    for C in anticodes:
        assert C in mats
        assert are_equivalent(C, standard_anticode(2, 2, max_rank(C), F2)) is not None


def _vector_anticodes(k):
    std = standard_vector_anticode(3, k, F4)
    return [
        (C, v_equivalent(C, std) is not None)
        for C in all_vector_codes(3, F4, k)
        if vclassify(C).is_optimal_vector_anticode
    ]


def test_criterion_9_classification():
    """Matrix side and k < m hold as stated; at k = m = 2 < n = 3 only the
    Frobenius-fixed optimal vector anticodes are equivalent to <e_1, e_2>."""
    start = time.perf_counter()
    _matrix_anticode_classification()
    low = [eq for k in (0, 1) for _, eq in _vector_anticodes(k)]
    assert all(low)
    top = _vector_anticodes(2)
    assert all(eq == is_frobenius_fixed(C) for C, eq in top)
    bad = sum(not eq for _, eq in top)
    elapsed = time.perf_counter() - start
    assert elapsed < 60
    assert not agrees_with_support("anticode", 3, 2, 2)
    RESULTS.append(
        f"criterion  9: FAIL as stated  optimal anticode classification  [{elapsed:.2f}s (limit 60s)]"
        f"  Mat_2x2(GF(2)) part holds; GF(4)^3 holds for dim 0-1 but {bad} of {len(top)} dim-2"
        f" optimal vector anticodes are not equivalent to <e_1, e_2> (refined statement: iff Frobenius-fixed, verified)"
    )
    print(RESULTS[-1])


@pytest.mark.xfail(strict=True, reason="a 2-dim code of GF(4)^3 with a non-fixed support is an optimal "
                                       "vector anticode but not equivalent to <e_1, e_2>")
def test_criterion_9_as_stated_for_dimension_two():
    assert all(eq for _, eq in _vector_anticodes(2))


def test_criterion_10_extension_failure():
    with criterion(10, "no isometry of Mat_2x3(GF(2)) extends (A 0) -> (A^T 0)", 5.0):
        assert isometry_count(2, 3, F2) == 1008
        out = extension_counterexample()
        assert out["map_is_isometry_on_C"]
        assert out["extension"] is None


def test_criterion_11_reading_regressions():
    with criterion(11, "unique passing readings and the transposed rank-function discrepancy") as details:
        rng = np.random.default_rng(11)
        codes = [C for C in all_codes(2, 2, F2) if C.dim <= 2]
        codes += [C for shape in [(2, 2, 3), (3, 2, 2), (2, 3, 3)] for C in _sampled_codes(*shape, 20, rng)]
        exp_ok = {r: True for r in mw.EXPONENT_READINGS}
        mom_ok = {r: True for r in mw.MOMENT_READINGS}
        for C in codes:
            A, B = weight_distribution(C), weight_distribution(dual(C))
            for r in exp_ok:
                got = mw.macwilliams_transform(A, C.n, C.m, C.q, C.size, reading=r, strict=False)
                exp_ok[r] &= tuple(got) == B
            for r in mom_ok:
                mom_ok[r] &= all(mw.macwilliams_moments(A, B, C.n, C.m, C.q, C.size, reading=r).values())
        details.append(
            f"{len(codes)} codes; exponent readings passing: "
            f"{[r for r, ok in exp_ok.items() if ok]} of {list(exp_ok)}; "
            f"moment readings passing: {[r for r, ok in mom_ok.items() if ok]} of {list(mom_ok)}")
        assert [r for r, ok in exp_ok.items() if ok] == ["ell"]
        assert [r for r, ok in mom_ok.items() if ok] == ["j"]
        report = shiromoto_example_report()
        assert [(m["V"], m["rho_2"], m["claimed_rho_2"]) for m in report["mismatches"]] == [
            ("<(1,1)> in GF(2)^2", 0, 1)]
        assert not report["equivalent"]


if __name__ == "__main__":
    for name, fn in list(globals().items()):
        if name.startswith("test_criterion_") and not name.endswith("as_stated_for_dimension_two"):
            try:
                fn()
            except AssertionError:
                pass
