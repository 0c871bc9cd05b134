"""Generalized weights of matrix and vector rank-metric codes.

Every profile is computed as a minimum over an exhaustive subspace stream.
Witnesses are the first minimizers in the canonical enumeration order of
:func:`rml.linalg.enumerate_subspaces`, so reports are reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from functools import lru_cache
from math import ceil
from typing import Sequence

from .errors import DEFAULT_BUDGET, InapplicableDefinition
from .fields import FieldBasis
from .linalg import Subspace, all_subspaces, enumerate_subspaces
from .matrix_codes import (
    MatrixCode,
    are_equivalent,
    column_restrict,
    max_rank,
    min_distance,
    row_restrict,
    shorten,
    all_codes,
)
from .vector_codes import (
    VectorCode,
    code_support as vcode_support,
    expand,
    fixed_space,
    frobenius_closure,
    subcodes,
    vmax_rank,
    vmin_distance,
)

KINDS = ("d", "delta", "w", "relative")
W_DEFINITIONS = ("oggier", "ducoat", "support", "anticode")


@dataclass(frozen=True)
class WeightProfile:
    """A weight hierarchy, indexed from 1 as in the definitions."""

    values: tuple[int, ...]
    kind: str
    witnesses: tuple = dc_field(default=(), compare=False, repr=False)

    def weight(self, i: int) -> int:
        if not 1 <= i <= len(self.values):
            raise IndexError(f"weights are defined for i = 1..{len(self.values)}, got {i}")
        return self.values[i - 1]

    def __len__(self):
        return len(self.values)

    def __iter__(self):
        return iter(self.values)


def _profile(dims: Sequence[tuple], length: int, kind: str) -> WeightProfile:
    """For each i, the least cost among (witness, value[, cost]) entries with value >= i.

    Cost defaults to the witness dimension; ties go to the earliest entry.
    """
    scored = [(e[2] if len(e) > 2 else e[0].dim, e[0], e[1]) for e in dims]
    vals, wits = [], []
    for i in range(1, length + 1):
        cost, V, _ = min((e for e in scored if e[2] >= i), key=lambda e: e[0])
        vals.append(cost)
        wits.append(V)
    return WeightProfile(tuple(vals), kind, tuple(wits))


# -- matrix codes ----------------------------------------------------------


def shortened_dims(C: MatrixCode) -> list[tuple[Subspace, int]]:
    """(V, dim C(V)) for every V in F_q^min(n,m); for n = m the max with C^T(V)."""
    out = []
    for V in all_subspaces(C.lo, C.field):
        k = shorten(C, V).dim
        if C.n == C.m:
            k = max(k, row_restrict(C, V).dim)
        out.append((V, k))
    return out


def d_weights(C: MatrixCode) -> WeightProfile:
    """d_i(C) = min{dim V : dim C(V) >= i} (with the transpose branch when n = m)."""
    return _profile(shortened_dims(C), C.dim, "d")


def optimal_anticodes(n: int, m: int, field, budget: int = DEFAULT_BUDGET) -> list[MatrixCode]:
    """Every optimal anticode of Mat_{n x m}(F_q), by exhaustive classification."""
    hi = max(n, m)
    return [A for A in all_codes(n, m, field, budget=budget) if A.dim == hi * max_rank(A)]


def d_weights_anticode(C: MatrixCode, budget: int = DEFAULT_BUDGET) -> WeightProfile:
    """Generalized weights straight from the anticode definition (small n, m only)."""
    anticodes = sorted(optimal_anticodes(C.n, C.m, C.field, budget), key=lambda A: A.dim)
    vals, wits = [], []
    for i in range(1, C.dim + 1):
        A = next(A for A in anticodes if (C & A).dim >= i)
        vals.append(A.dim // C.hi)
        wits.append(A)
    return WeightProfile(tuple(vals), "d", tuple(wits))


def _check_proper(C, D):
    if not D.is_subcode_of(C):
        raise ValueError("D is not a subcode of C")
    if D.dim == C.dim and C.dim > 0:
        raise ValueError("D must be a proper subcode of C")


def delta_weights(C: MatrixCode, D: MatrixCode | None = None) -> WeightProfile:
    """Generalized matrix weights: column-space supports for every shape."""
    if D is None:
        D = MatrixCode.zero(C.n, C.m, C.field)
    _check_proper(C, D)
    dims = [
        (V, column_restrict(C, V).dim - column_restrict(D, V).dim)
        for V in all_subspaces(C.n, C.field)
    ]
    return _profile(dims, C.dim - D.dim, "delta" if D.dim == 0 else "relative")


# -- vector codes ----------------------------------------------------------


def _max_support(D: VectorCode, budget: int) -> int:
    return vmax_rank(D, budget) if D.dim else 0


@lru_cache(maxsize=16)
def _vector_anticodes(n: int, F, budget: int) -> tuple[VectorCode, ...]:
    """Optimal vector anticodes of F^n in enumeration order."""
    codes = (VectorCode(n, F, S.gen) for S in enumerate_subspaces(n, None, F, budget))
    return tuple(A for A in codes if A.dim == _max_support(A, budget))


def w_weights(C: VectorCode, definition: str = "support", budget: int = DEFAULT_BUDGET) -> WeightProfile:
    """Generalized weights of a vector code under one of the equivalent definitions.

    ``oggier``: min over i-dim subcodes D of the largest rank in D (needs n <= m).
    ``ducoat``: the same with D replaced by its Frobenius closure.
    ``support``: min over i-dim subcodes of dim supp(D).
    ``anticode``: min dim of an optimal vector anticode meeting C in dim >= i
    (needs dim C <= m).
    """
    if definition not in W_DEFINITIONS:
        raise ValueError(f"unknown definition {definition!r}")
    F = C.field
    if definition == "oggier" and C.n > F.m:
        raise InapplicableDefinition(f"the oggier definition needs n <= m (n={C.n}, m={F.m})")
    if definition == "anticode":
        if C.dim > F.m:
            raise InapplicableDefinition(f"the anticode characterization needs dim C <= m (dim={C.dim}, m={F.m})")
        anticodes = _vector_anticodes(C.n, F, budget)
        vals, wits = [], []
        for i in range(1, C.dim + 1):
            A = next(A for A in anticodes if (C & A).dim >= i)
            vals.append(A.dim)
            wits.append(A)
        return WeightProfile(tuple(vals), "w", tuple(wits))

    def score(D: VectorCode) -> int:
        if definition == "oggier":
            return _max_support(D, budget)
        if definition == "ducoat":
            return _max_support(frobenius_closure(D), budget)
        return vcode_support(D).dim

    vals, wits = [], []
    for i in range(1, C.dim + 1):
        best = None
        for D in subcodes(C, i, budget):
            s = score(D)
            if best is None or s < best[0]:
                best = (s, D)
        vals.append(best[0])
        wits.append(best[1])
    return WeightProfile(tuple(vals), "w", tuple(wits))


def relative_w(C: VectorCode, D: VectorCode | None = None) -> WeightProfile:
    """w_i(C, D) over Frobenius-fixed spaces, i.e. spans of subspaces of F_q^n."""
    if D is None:
        D = VectorCode.zero(C.n, C.field)
    _check_proper(C, D)
    F = C.field
    dims = []
    for U in all_subspaces(C.n, F.prime):
        V = fixed_space(U, F)
        dims.append((V, (C & V).dim - (D & V).dim, vcode_support(V).dim))
    return _profile(dims, C.dim - D.dim, "w" if D.dim == 0 else "relative")


# -- closed forms ----------------------------------------------------------


def closed_form_weights(kind: str, n: int, m: int, dim: int) -> WeightProfile:
    """Profiles of MRD codes, optimal anticodes and dually quasi-MRD codes."""
    lo, hi = min(n, m), max(n, m)
    k, r = divmod(dim, hi)
    if not 0 <= dim <= n * m:
        raise ValueError(f"dimension {dim} out of range")
    if kind in ("mrd", "anticode"):
        if r:
            raise ValueError(f"{kind} codes have dimension divisible by {hi}")
        if kind == "mrd":
            vals = [lo - k + ceil(i / hi) for i in range(1, dim + 1)]
        else:
            vals = [ceil(i / hi) for i in range(1, dim + 1)]
    elif kind == "quasi_mrd":
        if r == 0:
            raise ValueError(f"dually quasi-MRD codes have dimension not divisible by {hi}")
        vals = []
        for t in range(1, dim + 1):
            if t <= r:
                vals.append(lo - k)
                continue
            i = (t - r - 1) // hi
            vals.append(lo + 1 + i - k if i <= k - 2 else lo)
    else:
        raise ValueError(f"unknown kind {kind!r}")
    return WeightProfile(tuple(vals), "d")


# -- relations -------------------------------------------------------------


@dataclass(frozen=True)
class BridgeResult:
    name: str
    applicable: bool
    holds: bool | None
    detail: dict

    def as_dict(self) -> dict:
        return {"name": self.name, "applicable": self.applicable, "holds": self.holds, "detail": self.detail}


def _expanded_index_check(w: WeightProfile, other: WeightProfile, m: int) -> tuple[bool, dict]:
    bad = []
    for i in range(1, len(w) + 1):
        for e in range(m):
            if w.weight(i) != other.weight(m * i - e):
                bad.append({"i": i, "e": e, "w": w.weight(i), "other": other.weight(m * i - e)})
    return not bad, {"w": list(w.values), "expanded": list(other.values), "failures": bad}


def theorem_bridges(C, D=None, gamma: FieldBasis | None = None) -> list[BridgeResult]:
    """Check the stated identities relating the weight notions.

    For a MatrixCode: d versus delta of C and of C^T, depending on the shape.
    For a VectorCode with a basis: w_i(C) = d_{mi-e}(gamma(C)) when n <= m, and
    the relative identity w_i(C, D) = delta_{mi-e}(gamma(C), gamma(D)).
    """
    out: list[BridgeResult] = []
    if isinstance(C, MatrixCode):
        d = d_weights(C)
        dl = delta_weights(C)
        dlt = delta_weights(C.T)
        detail = {"d": list(d.values), "delta": list(dl.values), "delta_T": list(dlt.values)}
        out.append(BridgeResult("d=delta (m>n)", C.m > C.n, d.values == dl.values if C.m > C.n else None, detail))
        sq = C.m == C.n
        out.append(BridgeResult(
            "d<=delta (m=n)", sq, all(a <= b for a, b in zip(d, dl)) if sq else None, detail))
        out.append(BridgeResult(
            "d=delta(C^T) (m<n)", C.m < C.n, d.values == dlt.values if C.m < C.n else None, detail))
        mins = tuple(min(a, b) for a, b in zip(dl, dlt))
        out.append(BridgeResult("d=min(delta, delta(C^T)) (m=n)", sq, d.values == mins if sq else None, detail))
        return out

    if not isinstance(C, VectorCode):
        raise TypeError("expected a MatrixCode or VectorCode")
    if gamma is None:
        gamma = FieldBasis.power(C.field)
    m = C.field.m
    GC = expand(C, gamma)
    w = w_weights(C, "support")
    if C.n <= m:
        ok, detail = _expanded_index_check(w, d_weights(GC), m)
        out.append(BridgeResult("w_i(C)=d_{mi-e}(Gamma(C)) (n<=m)", True, ok, detail))
    else:
        out.append(BridgeResult("w_i(C)=d_{mi-e}(Gamma(C)) (n<=m)", False, None,
                                {"w": list(w.values), "d": list(d_weights(GC).values)}))
    Dv = VectorCode.zero(C.n, C.field) if D is None else D
    if Dv.dim < C.dim:
        rw = relative_w(C, Dv)
        rd = delta_weights(GC, expand(Dv, gamma))
        ok, detail = _expanded_index_check(rw, rd, m)
        out.append(BridgeResult("w_i(C,D)=delta_{mi-e}(Gamma(C),Gamma(D))", True, ok, detail))
    return out


def equivalence_invariance(C: MatrixCode, D: MatrixCode, budget: int = DEFAULT_BUDGET) -> dict:
    """For equivalent codes, compare d and delta profiles (d must agree)."""
    witness = are_equivalent(C, D, budget)
    dC, dD = d_weights(C), d_weights(D)
    return {
        "equivalent": witness is not None,
        "d_equal": dC.values == dD.values,
        "delta_equal": delta_weights(C).values == delta_weights(D).values,
        "witness": None if witness is None else witness.as_dict(),
    }


@dataclass(frozen=True)
class WeightProperties:
    d1_is_dmin: bool
    last_bounded: bool
    nondecreasing: bool
    shift_monotone: bool
    shift_strict: bool | None  # None when no index pair exists

    @property
    def holds(self) -> bool:
        return self.d1_is_dmin and self.last_bounded and self.nondecreasing and self.shift_monotone


def weight_properties(C: MatrixCode, profile: WeightProfile | None = None) -> WeightProperties:
    """The four structural properties of the d-profile, plus whether the
    max(m, n)-shift inequality is strict everywhere it applies."""
    d = (profile or d_weights(C)).values
    ell, hi = C.dim, C.hi
    pairs = [(d[i - 1], d[i + hi - 1]) for i in range(1, ell - hi + 1)]
    return WeightProperties(
        d1_is_dmin=ell == 0 or d[0] == min_distance(C),
        last_bounded=ell == 0 or d[-1] <= C.lo,
        nondecreasing=all(a <= b for a, b in zip(d, d[1:])),
        shift_monotone=all(a <= b for a, b in pairs),
        shift_strict=all(a < b for a, b in pairs) if pairs else None,
    )


def matches_closed_forms(C: MatrixCode) -> dict[str, bool]:
    """Which closed-form profiles the code's d-profile matches (where defined)."""
    d = d_weights(C).values
    out = {}
    for kind in ("mrd", "anticode", "quasi_mrd"):
        try:
            out[kind] = closed_form_weights(kind, C.n, C.m, C.dim).values == d
        except ValueError:
            out[kind] = False
    return out


def quasi_mrd_endpoints(C: MatrixCode, profile: WeightProfile | None = None) -> bool:
    """d_1 = min - k and d_{r+1} = min + 1 - k, for dim = k max + r with 0 < r."""
    k, r = divmod(C.dim, C.hi)
    if r == 0:
        return False
    d = profile or d_weights(C)
    ok = d.weight(1) == C.lo - k
    if r + 1 <= C.dim:
        ok = ok and d.weight(r + 1) == C.lo + 1 - k
    return ok


# -- duality ---------------------------------------------------------------

WEI_READINGS = ("residue", "literal")


def _w_set(d: Sequence[int], i: int, hi: int, ell: int) -> set[int]:
    return {d[t - 1] for t in range(i, ell + 1, hi)} if i >= 1 else set()


def _wbar_set(d: Sequence[int], i: int, hi: int, ell: int, lo: int, reading: str) -> set[int]:
    if reading == "literal":
        idx = range(i, ell + 1, hi) if i >= 1 else range(0)
    else:
        idx = [t for t in range(1, ell + 1) if (t - i) % hi == 0]
    return {lo + 1 - d[t - 1] for t in idx}


@dataclass(frozen=True)
class WeiReport:
    reading: str
    rows: tuple  # (i, W_i(C^perp), expected) per i

    @property
    def holds(self) -> bool:
        return all(a == b for _, a, b in self.rows)

    def as_dict(self) -> dict:
        return {
            "reading": self.reading,
            "holds": self.holds,
            "rows": [{"i": i, "dual": sorted(a), "predicted": sorted(b)} for i, a, b in self.rows],
        }


def wei_duality(C: MatrixCode, dual_code: MatrixCode, reading: str = "residue") -> WeiReport:
    """Compare W_i(C^perp) with {1..min} minus Wbar_{i+l}(C) for i = 1..max(m, n).

    ``literal`` takes j >= 0 in Wbar exactly as written, which makes every
    index i + l + j max exceed l, so Wbar is empty.  ``residue`` lets j range
    over all integers, i.e. uses every index congruent to i + l mod max(m, n).
    """
    if reading not in WEI_READINGS:
        raise ValueError(f"unknown reading {reading!r}")
    lo, hi, ell = C.lo, C.hi, C.dim
    d = d_weights(C).values
    dp = d_weights(dual_code).values
    full = set(range(1, lo + 1))
    rows = []
    for i in range(1, hi + 1):
        lhs = _w_set(dp, i, hi, dual_code.dim)
        rhs = full - _wbar_set(d, i + ell, hi, ell, lo, reading)
        rows.append((i, frozenset(lhs), frozenset(rhs)))
    return WeiReport(reading, tuple(rows))


def agrees_with_support(definition: str, n: int, m: int, dim: int) -> bool:
    """Whether a w definition is known to match the support definition.

    Exhaustive search over GF(4)^3 shows two boundary failures when n > m:
    the Frobenius-closure definition is capped at m while dim supp(C) can
    reach n, and every code of dimension m is an optimal vector anticode
    although only the Frobenius-fixed ones are equivalent to <e_1..e_m>.
    """
    if definition in ("oggier", "ducoat"):
        return n <= m
    if definition == "anticode":
        return dim < m or n <= m
    return True


def vector_weight_checks(C: VectorCode, budget: int = DEFAULT_BUDGET) -> tuple[dict[str, bool], dict[str, bool]]:
    """Cross-agreement of the w definitions with the support one, and w_1 = d_min.

    Returns (checks inside the proven scope, comparisons outside it).
    """
    profiles = {}
    for name in W_DEFINITIONS:
        try:
            profiles[name] = w_weights(C, name, budget).values
        except InapplicableDefinition:
            pass
    ref = profiles["support"]
    inside, outside = {}, {}
    for name, vals in profiles.items():
        if name == "support":
            continue
        target = inside if agrees_with_support(name, C.n, C.field.m, C.dim) else outside
        target[f"{name}=support"] = vals == ref
    inside["relative(C,0)=support"] = relative_w(C).values == ref
    if C.dim:
        inside["w1=dmin"] = ref[0] == vmin_distance(C, budget)
    return inside, outside
