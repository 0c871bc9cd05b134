"""Theorem-verification suites run over a declared grid of small parameters.

Each suite is a pure function of the grid (and an optional mutant name used
as a negative control) returning a :class:`SuiteResult`.  Suites are
independent, so the runner may execute them in worker processes; results
are always reported in the fixed suite order.
"""

from __future__ import annotations

import re
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from importlib import resources

import numpy as np

from . import genweights as gw
from . import macwilliams as mw
from . import qpolymatroid as qp
from .fields import ExtField, FieldBasis, PrimeField, all_bases, find_factor, orthogonal_basis
from .linalg import Subspace, count_gl, gl_array
from .matrix_codes import (
    Isometry,
    MatrixCode,
    all_codes,
    are_equivalent,
    classify,
    dual,
    extension_exists,
    is_isometry_on,
    isometry_count,
    max_rank,
    min_distance,
    random_code,
    standard_anticode,
    subspace_anticode,
    weight_distribution,
)
from .vector_codes import (
    VectorCode,
    all_vector_codes,
    expand,
    frobenius_closure,
    random_vector_code,
    standard_vector_anticode,
    v_equivalent,
    vclassify,
    vdual,
)

MUTANTS = ("macwilliams-exponent", "moment-index", "wei-literal")


@dataclass(frozen=True)
class Grid:
    qs: tuple[int, ...] = (2, 3)
    ns: tuple[int, ...] = (1, 2, 3)
    ms: tuple[int, ...] = (1, 2, 3)
    exts: tuple[int, ...] = (2, 3)
    samples: int = 4
    seed: int = 0
    max_size: int = 4096  # largest code enumerated per sampled shape

    def shapes(self):
        return [(q, n, m) for q in self.qs for n in self.ns for m in self.ms]

    def as_dict(self) -> dict:
        return {
            "q": list(self.qs), "n": list(self.ns), "m": list(self.ms), "ext": list(self.exts),
            "samples": self.samples, "seed": self.seed, "max_size": self.max_size,
        }


def _int_list(text: str) -> tuple[int, ...]:
    out: list[int] = []
    for part in text.split(","):
        if "-" in part:
            a, b = part.split("-")
            out.extend(range(int(a), int(b) + 1))
        elif part:
            out.append(int(part))
    return tuple(out)


def parse_grid(spec: str | None) -> Grid:
    """``q=2,3;n=1-3;m=1-3;ext=2-3;samples=4;seed=0;max_size=4096``; missing keys keep defaults."""
    if not spec or spec == "default":
        return Grid()
    kw: dict = {}
    names = {"q": "qs", "n": "ns", "m": "ms", "ext": "exts"}
    for item in filter(None, re.split(r"[;\s]+", spec)):
        if "=" not in item:
            raise ValueError(f"grid items look like key=value, got {item!r}")
        key, val = item.split("=", 1)
        if key in names:
            kw[names[key]] = _int_list(val)
        elif key in ("samples", "seed", "max_size"):
            kw[key] = int(val)
        else:
            raise ValueError(f"unknown grid key {key!r}")
    return Grid(**kw)


@dataclass
class Check:
    name: str
    passed: int = 0
    failed: int = 0
    counterexample: dict | None = None

    def record(self, ok: bool, payload=None):
        if ok:
            self.passed += 1
        else:
            self.failed += 1
            if self.counterexample is None:
                self.counterexample = payload() if callable(payload) else payload

    def as_dict(self) -> dict:
        d = {"name": self.name, "ok": self.failed == 0, "passed": self.passed, "failed": self.failed}
        if self.counterexample is not None:
            d["counterexample"] = self.counterexample
        return d


@dataclass
class SuiteResult:
    name: str
    checks: dict[str, Check] = field(default_factory=dict)
    notes: dict = field(default_factory=dict)

    def check(self, name: str) -> Check:
        return self.checks.setdefault(name, Check(name))

    @property
    def ok(self) -> bool:
        return all(c.failed == 0 for c in self.checks.values())

    def as_dict(self) -> dict:
        d = {"suite": self.name, "ok": self.ok, "checks": [c.as_dict() for c in self.checks.values()]}
        if self.notes:
            d["notes"] = self.notes
        return d


def _mat_payload(C: MatrixCode) -> dict:
    return {"q": C.q, "n": C.n, "m": C.m, "generators": C.matrices.tolist()}


def _vec_payload(C: VectorCode) -> dict:
    return {"q": C.q, "m": C.m, "n": C.n, "generators": C.field.digits[C.gen].tolist()}


def sample_codes(grid: Grid, rng: np.random.Generator, exhaustive_upto: int = 16):
    """Every code of the small shapes, plus ``samples`` random codes per (shape, dim)."""
    for q, n, m in grid.shapes():
        F = PrimeField(q)
        if q ** (n * m) <= exhaustive_upto:
            yield from all_codes(n, m, F)
            continue
        for dim in range(n * m + 1):
            if q**dim > grid.max_size and q ** (n * m - dim) > grid.max_size:
                continue
            if q**dim > grid.max_size:
                # keep the dual small instead: sample duals of small codes
                for _ in range(grid.samples):
                    yield dual(random_code(n, m, n * m - dim, F, rng))
                continue
            for _ in range(grid.samples if 0 < dim < n * m else 1):
                yield random_code(n, m, dim, F, rng)


def _ext_fields(grid: Grid):
    out = []
    for q in grid.qs:
        for e in grid.exts:
            if q**e <= 64:
                out.append(ExtField(q, e))
    return out


def _vector_codes(grid: Grid, rng: np.random.Generator, max_n: int = 3, max_size: int = 4096):
    for F in _ext_fields(grid):
        for n in [x for x in grid.ns if x <= max_n]:
            for k in range(n + 1):
                if F.order ** min(k, n - k) > max_size:
                    continue
                if F.order ** (k * (n - k)) <= 64:
                    yield from all_vector_codes(n, F, k)
                else:
                    for _ in range(grid.samples):
                        C = random_vector_code(n, min(k, n - k), F, rng)
                        yield C if k <= n - k else vdual(C)


# -- suites ----------------------------------------------------------------


def suite_fields(grid: Grid, mutant: str | None = None) -> SuiteResult:
    res = SuiteResult("fields")
    rng = np.random.default_rng(grid.seed)
    for F in _ext_fields(grid):
        tag = {"field": repr(F)}
        res.check("modulus irreducible").record(find_factor(F.modulus, F.p) is None, tag)
        els = np.arange(F.order)
        a, b = np.meshgrid(els, els)
        phi = lambda x: F.frobenius_codes(x, 1)  # noqa: E731
        ok = np.array_equal(phi(F.add(a, b)), F.add(phi(a), phi(b))) and np.array_equal(
            phi(F.mul(a, b)), F.mul(phi(a), phi(b)))
        fixed = set(int(x) for x in els[phi(els) == els])
        res.check("frobenius is an automorphism fixing GF(p)").record(
            ok and fixed == set(range(F.p)), tag)
        res.check("frobenius^m is the identity").record(
            np.array_equal(F.frobenius_codes(els, F.m), els), tag)
        x, y = rng.integers(0, F.order, 50), rng.integers(0, F.order, 50)
        s, t = rng.integers(0, F.p, 50), rng.integers(0, F.p, 50)
        lhs = F.trace_codes(F.add(F.mul(s, x), F.mul(t, y)))
        rhs = (s * F.trace_codes(x) + t * F.trace_codes(y)) % F.p
        res.check("trace is GF(p)-linear").record(np.array_equal(lhs, rhs), tag)
        bases = list(all_bases(F)) if F.order <= 8 else [FieldBasis.power(F)]
        for G in bases:
            H = orthogonal_basis(G)
            T = np.array([[int(F.trace_codes(F.mul(g, h))) for h in H.elements] for g in G.elements])
            res.check("orthogonal basis satisfies tr(g_i h_j) = delta_ij").record(
                np.array_equal(T, np.eye(F.m, dtype=np.int64)),
                lambda: {"field": repr(F), "basis": list(G.elements)})
            res.check("orthogonal basis is an involution").record(
                orthogonal_basis(H).elements == G.elements, {"basis": list(G.elements)})
    return res


def suite_bounds(grid: Grid, mutant: str | None = None) -> SuiteResult:
    res = SuiteResult("bounds")
    rng = np.random.default_rng(grid.seed + 1)
    for C in sample_codes(grid, rng):
        D = dual(C)
        lo, hi = C.lo, C.hi
        d, r = min_distance(C), max_rank(C)
        dd, rd = min_distance(D), max_rank(D)
        cl, cld, clt = classify(C), classify(D), classify(C.T)
        p = lambda: _mat_payload(C)  # noqa: E731
        res.check("dim C + dim C^perp = nm").record(C.dim + D.dim == C.n * C.m, p)
        res.check("dual is an involution").record(dual(D) == C, p)
        res.check("Singleton bound").record(C.dim <= hi * (lo - d + 1), p)
        res.check("Anticode bound").record(C.dim <= hi * r, p)
        res.check("dmin + dmin^perp <= min + 2, equality iff MRD").record(
            d + dd <= lo + 2 and ((d + dd == lo + 2) == cl.is_mrd), p)
        res.check("maxrk + maxrk^perp >= min, equality iff optimal anticode").record(
            r + rd >= lo and ((r + rd == lo) == cl.is_optimal_anticode), p)
        res.check("dmin <= maxrk^perp + 1").record(d <= rd + 1, p)
        res.check("MRD iff dual MRD").record(cl.is_mrd == cld.is_mrd, p)
        res.check("optimal anticode iff dual optimal anticode").record(
            cl.is_optimal_anticode == cld.is_optimal_anticode, p)
        res.check("MRD and anticode flags invariant under transposition").record(
            (cl.is_mrd, cl.is_optimal_anticode) == (clt.is_mrd, clt.is_optimal_anticode), p)
    return res


def suite_macwilliams(grid: Grid, mutant: str | None = None) -> SuiteResult:
    res = SuiteResult("macwilliams")
    rng = np.random.default_rng(grid.seed + 2)
    reading = "i" if mutant == "macwilliams-exponent" else "ell"
    mreading = "ell" if mutant == "moment-index" else "j"
    for C in sample_codes(grid, rng):
        D = dual(C)
        A, B = weight_distribution(C), weight_distribution(D)
        p = lambda: {"code": _mat_payload(C), "A": list(A), "A_dual": list(B)}  # noqa: E731
        try:
            T = mw.macwilliams_transform(A, C.n, C.m, C.q, C.size, reading=reading, strict=False)
        except mw.InvalidDistribution:
            T = None
        res.check("transform equals enumerated dual distribution").record(
            T is not None and tuple(T) == B, lambda: {**p(), "predicted": [str(x) for x in T or ()]})
        if T is not None and tuple(T) == B:
            back = mw.macwilliams_transform(B, C.n, C.m, C.q, D.size, reading=reading, strict=False)
            res.check("transform is an involution").record(tuple(back) == A, p)
        moments = mw.macwilliams_moments(A, B, C.n, C.m, C.q, C.size, reading=mreading)
        res.check("binomial moment identities").record(
            all(moments.values()), lambda: {**p(), "failing_ell": [k for k, v in moments.items() if not v]})
        cl = classify(C)
        if cl.is_mrd or cl.is_dually_quasi_mrd:
            pred = mw.mrd_weight_distribution(C.n, C.m, C.q, C.dim, min_distance(C))
            res.check("MRD / dually quasi-MRD distribution formula").record(
                pred == A, lambda: {**p(), "predicted": list(pred)})
    return res


def suite_duality(grid: Grid, mutant: str | None = None) -> SuiteResult:
    res = SuiteResult("duality")
    rng = np.random.default_rng(grid.seed + 3)
    for C in _vector_codes(grid, rng):
        F = C.field
        Cd = vdual(C)
        bases = list(all_bases(F)) if F.order <= 4 else [FieldBasis.power(F)] + [
            FieldBasis(F, tuple(int(x) for x in F.encode(G)))
            for G in gl_array(F.m, F.prime)[rng.choice(count_gl(F.m, F.p), 3, replace=False)]
        ]
        for G in bases:
            H = orthogonal_basis(G)
            res.check("Gamma(C)^perp = Gamma'(C^perp)").record(
                dual(expand(C, G)) == expand(Cd, H), lambda: {"code": _vec_payload(C), "basis": list(G.elements)})
        res.check("dim over GF(q^m) of C + C^perp = n").record(C.dim + Cd.dim == C.n, _vec_payload(C))
    return res


def suite_genweights(grid: Grid, mutant: str | None = None) -> SuiteResult:
    res = SuiteResult("genweights")
    rng = np.random.default_rng(grid.seed + 4)
    wei_reading = "literal" if mutant == "wei-literal" else "residue"
    strict_failures = 0
    for C in sample_codes(grid, rng):
        D = dual(C)
        p = lambda: _mat_payload(C)  # noqa: E731
        prof = gw.d_weights(C)
        wp = gw.weight_properties(C, prof)
        res.check("d_1 = dmin").record(wp.d1_is_dmin, p)
        res.check("d_dim <= min(m, n)").record(wp.last_bounded, p)
        res.check("d_i <= d_(i+1)").record(wp.nondecreasing, p)
        res.check("d_i <= d_(i+max(m,n))").record(wp.shift_monotone, p)
        strict_failures += wp.shift_strict is False
        cl = classify(C)
        forms = gw.matches_closed_forms(C)
        if C.dim % C.hi == 0:
            res.check("MRD iff closed-form MRD profile").record(cl.is_mrd == forms["mrd"], p)
            res.check("optimal anticode iff closed-form anticode profile").record(
                cl.is_optimal_anticode == forms["anticode"], p)
            res.check("optimal anticode iff d_dim = dim / max").record(
                cl.is_optimal_anticode == (C.dim == 0 or prof.weight(C.dim) == C.dim // C.hi), p)
        else:
            res.check("dually quasi-MRD iff endpoint conditions").record(
                cl.is_dually_quasi_mrd == gw.quasi_mrd_endpoints(C, prof), p)
            if cl.is_dually_quasi_mrd:
                res.check("dually quasi-MRD closed-form profile").record(forms["quasi_mrd"], p)
        res.check("MRD and optimal anticode iff zero or full").record(
            (cl.is_mrd and cl.is_optimal_anticode) == (C.dim in (0, C.n * C.m)), p)
        wei = gw.wei_duality(C, D, wei_reading)
        res.check("Wei-type duality of W sets").record(wei.holds, lambda: {"code": p(), "report": wei.as_dict()})
        for b in gw.theorem_bridges(C):
            if b.applicable:
                res.check(b.name).record(b.holds, lambda: {"code": p(), **b.detail})
        if 0 < C.dim < C.n * C.m and count_gl(C.n, C.q) * count_gl(C.m, C.q) <= 20000:
            A = gl_array(C.n, C.field)[rng.integers(count_gl(C.n, C.q))]
            B = gl_array(C.m, C.field)[rng.integers(count_gl(C.m, C.q))]
            t = bool(C.n == C.m and rng.integers(2))
            E = Isometry(A, B, t, C.q).image(C)
            res.check("d_i invariant under equivalence").record(gw.d_weights(E).values == prof.values, p)
    res.notes["d_i < d_(i+max) strictness failures"] = strict_failures
    return res


def suite_vector_weights(grid: Grid, mutant: str | None = None) -> SuiteResult:
    res = SuiteResult("vector_weights")
    rng = np.random.default_rng(grid.seed + 5)
    for C in _vector_codes(grid, rng, max_n=3, max_size=512):
        if C.dim == 0:
            continue
        p = lambda: _vec_payload(C)  # noqa: E731
        inside, outside = gw.vector_weight_checks(C)
        for name, ok in inside.items():
            res.check(f"w definitions: {name}").record(ok, p)
        for name, ok in outside.items():
            key = f"outside proven scope: {name} disagreements"
            res.notes[key] = res.notes.get(key, 0) + (not ok)
        G = FieldBasis.power(C.field)
        for b in gw.theorem_bridges(C, gamma=G):
            if b.applicable:
                res.check(b.name).record(b.holds, lambda: {"code": p(), **b.detail})
        if C.dim >= 2:
            D = VectorCode(C.n, C.field, C.gen[:1])
            for b in gw.theorem_bridges(C, D, gamma=G):
                if b.applicable and "C,D" in b.name:
                    res.check(b.name + " (D nonzero)").record(b.holds, lambda: {"code": p(), **b.detail})
    return res


def suite_qpolymatroid(grid: Grid, mutant: str | None = None) -> SuiteResult:
    res = SuiteResult("qpolymatroid")
    rng = np.random.default_rng(grid.seed + 6)
    for C in sample_codes(grid, rng):
        p = lambda: _mat_payload(C)  # noqa: E731
        P = qp.from_code(C)
        Ps = P if isinstance(P, tuple) else (P,)
        PD = qp.from_code(dual(C))
        PDs = PD if isinstance(PD, tuple) else (PD,)
        for X, XD in zip(Ps, PDs):
            ax = X.axioms()
            res.check("axioms P1-P3").record(ax.holds, lambda: {"code": p(), **(ax.counterexample or {})})
            res.check("P** = P").record(qp.pm_dual(qp.pm_dual(X)) == X, p)
            res.check("P(C)* = P(C^perp)").record(qp.pm_dual(X) == XD, p)
        rec = qp.recover(P)
        direct = (C.dim, min_distance(C), gw.d_weights(C).values)
        res.check("recover reproduces dim, dmin and d_i").record(
            (rec.dim, rec.d_min, rec.profile) == direct, lambda: {"code": p(), "recovered": rec.as_dict()})
        if C.n <= C.m:
            try:
                ok = qp.weight_enumerator(Ps[0], C.n, C.m, C.q).distribution(C.n) == weight_distribution(C)
            except mw.InvalidDistribution:
                ok = False
            res.check("enumerator from P(C) equals enumeration").record(ok, p)
        if C.lo <= 3:
            ch = qp.pm_characterize(P)
            cl = classify(C)
            res.check("MRD characterization").record(ch.mrd == cl.is_mrd and (ch.mrd_form or not ch.mrd), p)
            res.check("optimal anticode characterization").record(ch.anticode == cl.is_optimal_anticode, p)
    for F in _ext_fields(grid):
        if F.order > 8:
            continue
        for C in all_vector_codes(2, F):
            ref = qp.from_code(expand(C, FieldBasis.power(F)))
            refs = ref if isinstance(ref, tuple) else (ref,)
            for G in all_bases(F):
                other = qp.from_code(expand(C, G))
                others = other if isinstance(other, tuple) else (other,)
                ok = all(qp.pm_equivalent(a, b) is not None for a, b in zip(refs, others)) or (
                    len(refs) == 2 and all(qp.pm_equivalent(a, b) is not None for a, b in zip(refs, others[::-1])))
                res.check("P(Gamma(C)) ~ P(Gamma'(C))").record(ok, lambda: {"code": _vec_payload(C)})
    return res


def suite_classification(grid: Grid, mutant: str | None = None) -> SuiteResult:
    """Optimal anticodes of Mat_2x2(GF(2)) and optimal vector anticodes of GF(4)^3."""
    res = SuiteResult("classification")
    F = PrimeField(2)
    mats = {}
    for V in (Subspace(F, 2, S.gen) for S in _all_subspaces(2, F)):
        A = subspace_anticode(2, 2, V)
        mats[A] = ("Mat(V)", V)
        mats[A.T] = ("Mat(V)^T", V)
    count = 0
    for C in all_codes(2, 2, F):
        if C.dim != 2 * max_rank(C):
            continue
        count += 1
        p = lambda: _mat_payload(C)  # noqa: E731
        res.check("every optimal anticode is Mat(V) or Mat(V)^T").record(C in mats, p)
        k = max_rank(C)
        ok = any(are_equivalent(C, S) is not None for S in (standard_anticode(2, 2, k, F),))
        res.check("every optimal anticode is equivalent to a standard one").record(ok, p)
    res.notes["optimal anticodes in Mat_2x2(GF(2))"] = count
    F4 = ExtField(2, 2)
    vcount = 0
    for k in (0, 1, 2):
        std = standard_vector_anticode(3, k, F4)
        for C in all_vector_codes(3, F4, k):
            if not vclassify(C).is_optimal_vector_anticode:
                continue
            vcount += 1
            equiv = v_equivalent(C, std) is not None
            if k < F4.m:
                res.check("optimal vector anticode equivalent to <e_1..e_k>").record(equiv, _vec_payload(C))
            else:
                fixed = frobenius_closure(C).dim == C.dim
                res.check("dim m: equivalent to <e_1..e_m> iff Frobenius-fixed").record(
                    equiv == fixed, _vec_payload(C))
                if not equiv:
                    res.notes.setdefault("dim-m optimal vector anticodes not equivalent to <e_1,e_2>", 0)
                    res.notes["dim-m optimal vector anticodes not equivalent to <e_1,e_2>"] += 1
                    res.notes.setdefault("first non-standard optimal vector anticode", _vec_payload(C))
    res.notes["optimal vector anticodes of GF(4)^3 with dim <= 2"] = vcount
    return res


def _all_subspaces(ell, F):
    from .linalg import all_subspaces

    return all_subspaces(ell, F)


def extension_counterexample() -> dict:
    """The code {(A 0)} in Mat_2x3(GF(2)) with the map (A 0) -> (A^T 0)."""
    F = PrimeField(2)
    C = load_fixture("extension_2x3.json")
    imgs = np.zeros_like(C.matrices)
    imgs[:, :, :2] = C.matrices[:, :, :2].transpose(0, 2, 1)
    iso = is_isometry_on(C, imgs)
    found = extension_exists(C, imgs)
    return {
        "map_is_isometry_on_C": iso,
        "isometries_searched": isometry_count(2, 3, F),
        "extension": None if found is None else found.as_dict(),
    }


def suite_extension(grid: Grid, mutant: str | None = None) -> SuiteResult:
    res = SuiteResult("extension")
    out = extension_counterexample()
    res.check("map is an isometry on C").record(out["map_is_isometry_on_C"], out)
    res.check("no global isometry restricts to the map").record(out["extension"] is None, out)
    res.notes.update(out)
    return res


def load_fixture(name: str):
    from .codefile import parse_code

    text = resources.files("rml.fixtures").joinpath(name).read_text(encoding="utf-8")
    return parse_code(text, name)


def shiromoto_example_report() -> dict:
    """Unnormalized rank functions of the (a a; b b) code and its transpose."""
    C = load_fixture("equal_columns_2x2.json")
    P, PT = qp.from_code(C)
    rows = []
    for V in P.subspaces:
        claimed = V.dim if V.dim != 1 or V.gen.tolist() == [[1, 1]] else 2
        rows.append({
            "V": repr(V),
            "rho_1": int(C.hi * P(V)),
            "rho_2": int(C.hi * PT(V)),
            "claimed_rho_2": claimed,
        })
    mismatches = [r for r in rows if r["rho_2"] != r["claimed_rho_2"]]
    return {
        "rows": rows,
        "mismatches": mismatches,
        "rho_1_is_dim": all(r["rho_1"] == int(V.dim) for r, V in zip(rows, P.subspaces)),
        "equivalent": qp.pm_equivalent(P, PT) is not None,
    }


def suite_examples(grid: Grid, mutant: str | None = None) -> SuiteResult:
    """Worked examples with their exact reference values."""
    res = SuiteResult("examples")
    F8 = ExtField(2, 3)
    C = load_fixture("expansion_gf8.json")
    G = FieldBasis.power(F8)
    res.check("expansion of <(1, a)> equals the reference matrices").record(
        expand(C, G) == load_fixture("expansion_matrices.json"))
    res.check("dual of the expansion equals the reference span").record(
        dual(expand(C, G)) == load_fixture("dual_matrices.json"))
    H = orthogonal_basis(G)
    res.check("orthogonal basis of {1, a, a^2} is {1, a^2, a}").record(
        H.elements == (1, 4, 2), {"got": list(H.elements)})
    res.check("vector dual is <(1, a^2 + 1)>").record(vdual(C) == load_fixture("dual_vector_gf8.json"))
    res.check("Gamma(C)^perp = Gamma'(C^perp)").record(dual(expand(C, G)) == expand(vdual(C), H))
    M = expand(C, G)
    res.check("distribution (1, 0, 7), dmin 2, MRD").record(
        weight_distribution(M) == (1, 0, 7) and min_distance(M) == 2 and classify(M).is_mrd)
    E2 = load_fixture("equal_columns_2x2.json")
    res.check("(a a; b b): d_2 = 1, delta_2 = 2, delta_2(C^T) = 1").record(
        gw.d_weights(E2).weight(2) == 1 and gw.delta_weights(E2).weight(2) == 2
        and gw.delta_weights(E2.T).weight(2) == 1)
    res.check("(a a; b b) is equivalent to its transpose").record(are_equivalent(E2, E2.T) is not None)
    E3 = load_fixture("equal_columns_3x2.json")
    res.check("(a a; b b; c c): d_3 = 1, delta_3 = 3").record(
        gw.d_weights(E3).weight(3) == 1 and gw.delta_weights(E3).weight(3) == 3)
    R = load_fixture("first_row_3x2.json")
    res.check("<E11, E12>: (d_1, d_2) = (1, 2), delta_2 = 1").record(
        gw.d_weights(R).values == (1, 2) and gw.delta_weights(R).weight(2) == 1)
    U = load_fixture("unit_vector_gf4.json")
    w1 = gw.w_weights(U).weight(1)
    d2 = gw.d_weights(expand(U, FieldBasis.power(U.field))).weight(2)
    res.check("<(1,0,0)> in GF(4)^3: w_1 = 1 but d_2(Gamma(C)) = 2").record(w1 == 1 and d2 == 2)
    sh = shiromoto_example_report()
    res.check("rho_1(V) = dim V for (a a; b b)").record(sh["rho_1_is_dim"], sh)
    res.check("rank functions of C and C^T are not equivalent").record(not sh["equivalent"], sh)
    res.notes["claimed rho_2 values that disagree with the definition"] = sh["mismatches"]
    res.notes["readings passing the transform on the grid"] = _unique_readings(grid)
    return res


def _unique_readings(grid: Grid) -> dict:
    """Which exponent / moment-index readings survive every code in a small sweep."""
    rng = np.random.default_rng(grid.seed + 7)
    codes = list(sample_codes(Grid(qs=grid.qs, ns=(2,), ms=(2, 3), samples=2, seed=grid.seed), rng))
    exp_ok = {r: True for r in mw.EXPONENT_READINGS}
    mom_ok = {r: True for r in mw.MOMENT_READINGS}
    for C in codes:
        A, B = weight_distribution(C), weight_distribution(dual(C))
        for r in exp_ok:
            T = mw.macwilliams_transform(A, C.n, C.m, C.q, C.size, reading=r, strict=False)
            exp_ok[r] &= tuple(T) == B
        for r in mom_ok:
            mom_ok[r] &= all(mw.macwilliams_moments(A, B, C.n, C.m, C.q, C.size, reading=r).values())
    return {"exponent": sorted(k for k, v in exp_ok.items() if v), "moment": sorted(k for k, v in mom_ok.items() if v)}


SUITES = {
    "fields": suite_fields,
    "bounds": suite_bounds,
    "macwilliams": suite_macwilliams,
    "duality": suite_duality,
    "genweights": suite_genweights,
    "vector_weights": suite_vector_weights,
    "qpolymatroid": suite_qpolymatroid,
    "classification": suite_classification,
    "extension": suite_extension,
    "examples": suite_examples,
}


def _run_one(args) -> dict:
    name, grid, mutant = args
    return SUITES[name](grid, mutant).as_dict()


def run_suites(grid: Grid, only: list[str] | None = None, mutant: str | None = None, jobs: int = 1) -> list[dict]:
    names = list(SUITES) if not only else only
    unknown = [n for n in names if n not in SUITES]
    if unknown:
        raise ValueError(f"unknown suites {unknown}; choose from {list(SUITES)}")
    if mutant is not None and mutant not in MUTANTS:
        raise ValueError(f"unknown mutant {mutant!r}; choose from {list(MUTANTS)}")
    work = [(n, grid, mutant) for n in names]
    if jobs > 1 and len(work) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            return list(ex.map(_run_one, work))
    return [_run_one(w) for w in work]
