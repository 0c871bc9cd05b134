"""q-polymatroids as complete rank tables, and the ones attached to matrix codes."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from math import lcm
from typing import Callable, Mapping

import numpy as np

from .errors import DEFAULT_BUDGET, BudgetExceeded, InvalidDistribution
from .fields import PrimeField
from .linalg import Subspace, all_subspaces, count_gl, gl_array, rref
from .matrix_codes import MatrixCode, row_restrict, shorten


class Lattice:
    """All subspaces of F_q^ell with index tables for perp, sum and intersection."""

    def __init__(self, ell: int, field: PrimeField):
        self.ell = ell
        self.field = field
        self.subspaces = all_subspaces(ell, field)
        self.index = {S: i for i, S in enumerate(self.subspaces)}
        self.dims = np.array([S.dim for S in self.subspaces], dtype=np.int64)
        self.perp = np.array([self.index[S.perp()] for S in self.subspaces], dtype=np.int64)

    def __len__(self):
        return len(self.subspaces)

    @cached_property
    def vector_masks(self) -> np.ndarray:
        """(S, q^ell) membership of every vector (lexicographic index) in every subspace."""
        q, ell = self.field.p, self.ell
        place = q ** np.arange(ell - 1, -1, -1, dtype=np.int64)
        masks = np.zeros((len(self), q**ell), dtype=bool)
        for i, S in enumerate(self.subspaces):
            masks[i, S.vectors() @ place] = True
        return masks

    @cached_property
    def join(self) -> np.ndarray:
        """join[i, j] = index of S_i + S_j."""
        S = len(self)
        out = np.empty((S, S), dtype=np.int64)
        for i in range(S):
            out[i, i] = i
            for j in range(i + 1, S):
                U, V = self.subspaces[i], self.subspaces[j]
                g = np.vstack([U.gen, V.gen])
                key = Subspace(self.field, self.ell, rref(g, self.field)[0] if g.shape[0] else g)
                out[i, j] = out[j, i] = self.index[key]
        return out

    @cached_property
    def meet(self) -> np.ndarray:
        """meet[i, j] = index of S_i & S_j, as (S_i^perp + S_j^perp)^perp."""
        return self.perp[self.join[np.ix_(self.perp, self.perp)]]

    @cached_property
    def leq(self) -> np.ndarray:
        """leq[i, j] iff S_i is contained in S_j."""
        return self.join == np.arange(len(self))[None, :]

    def image_indices(self, mats: np.ndarray) -> np.ndarray:
        """(N, S) indices of the images V -> {vA : v in V} for each A in mats."""
        q, ell = self.field.p, self.ell
        Q = q**ell
        place = q ** np.arange(ell - 1, -1, -1, dtype=np.int64)
        vecs = (np.arange(Q)[:, None] // place[None, :]) % q  # (Q, ell)
        perms = ((vecs @ mats) % q) @ place  # (N, Q)
        if Q <= 63:
            weights = np.left_shift(np.uint64(1), np.arange(Q, dtype=np.uint64))
            base = self.vector_masks.astype(np.uint64) @ weights
            order = np.argsort(base)
            img = self.vector_masks.astype(np.uint64) @ weights[perms].T  # (S, N)
            pos = np.searchsorted(base[order], img)
            return order[pos].T
        lookup = {self.vector_masks[i].tobytes(): i for i in range(len(self))}
        out = np.empty((len(mats), len(self)), dtype=np.int64)
        for a, perm in enumerate(perms):
            for i in range(len(self)):
                img = np.zeros(Q, dtype=bool)
                img[perm[self.vector_masks[i]]] = True
                out[a, i] = lookup[img.tobytes()]
        return out


@lru_cache(maxsize=64)
def lattice(ell: int, field: PrimeField) -> Lattice:
    return Lattice(ell, field)


@dataclass(frozen=True)
class AxiomReport:
    p1: bool
    p2: bool
    p3: bool
    counterexample: dict | None = None

    @property
    def holds(self) -> bool:
        return self.p1 and self.p2 and self.p3


class QPolymatroid:
    """(F_q^ell, rho) with rho stored as an exact Fraction for every subspace."""

    def __init__(self, field: PrimeField, ell: int, rho: Mapping[Subspace, Fraction] | Callable, scale: int = 1):
        self.field = field
        self.ell = ell
        self.lattice = lattice(ell, field)
        get = rho if callable(rho) else rho.__getitem__
        self.values = tuple(Fraction(get(S)) for S in self.lattice.subspaces)
        self.scale = scale  # max(m, n) for code polymatroids, used by recover()

    @property
    def subspaces(self) -> tuple[Subspace, ...]:
        return self.lattice.subspaces

    def __call__(self, V: Subspace) -> Fraction:
        return self.values[self.lattice.index[V]]

    def table(self) -> dict[Subspace, Fraction]:
        return dict(zip(self.subspaces, self.values))

    @property
    def rank(self) -> Fraction:
        """rho of the whole ground space."""
        return self.values[-1]

    def __eq__(self, other):
        return (
            isinstance(other, QPolymatroid)
            and (self.field, self.ell) == (other.field, other.ell)
            and self.values == other.values
        )

    def __hash__(self):
        return hash((self.field, self.ell, self.values))

    def __repr__(self):
        return f"QPolymatroid(GF({self.field.p})^{self.ell}, rank={self.rank})"

    def scaled(self) -> tuple[np.ndarray, int]:
        """Integer numerators over a common denominator."""
        den = lcm(*(v.denominator for v in self.values))
        return np.array([int(v * den) for v in self.values], dtype=np.int64), den

    def axioms(self) -> AxiomReport:
        """(P1) 0 <= rho <= dim, (P2) monotone, (P3) submodular, all pairs."""
        L = self.lattice
        r, den = self.scaled()
        subs = L.subspaces
        p1 = bool(np.all(r >= 0) and np.all(r <= L.dims * den))
        bad1 = np.nonzero((r < 0) | (r > L.dims * den))[0]
        viol2 = L.leq & (r[:, None] > r[None, :])
        lhs = r[L.join] + r[L.meet]
        viol3 = lhs > r[:, None] + r[None, :]
        cex = None
        if bad1.size:
            cex = {"axiom": "P1", "V": repr(subs[bad1[0]])}
        elif viol2.any():
            i, j = map(int, np.argwhere(viol2)[0])
            cex = {"axiom": "P2", "U": repr(subs[i]), "V": repr(subs[j])}
        elif viol3.any():
            i, j = map(int, np.argwhere(viol3)[0])
            cex = {"axiom": "P3", "U": repr(subs[i]), "V": repr(subs[j])}
        return AxiomReport(p1, not viol2.any(), not viol3.any(), cex)


def from_code(C: MatrixCode) -> QPolymatroid | tuple[QPolymatroid, QPolymatroid]:
    """P(C) on F_q^min(n,m); the pair (P(C), P(C^T)) when n = m."""
    hi, lo = C.hi, C.lo
    L = lattice(lo, C.field)

    def rho_of(restrict) -> QPolymatroid:
        vals = {S: Fraction(C.dim - restrict(C, S.perp()).dim, hi) for S in L.subspaces}
        return QPolymatroid(C.field, lo, vals, scale=hi)

    P = rho_of(shorten)
    if C.n != C.m:
        return P
    return P, rho_of(row_restrict)


def pm_dual(P: QPolymatroid) -> QPolymatroid:
    """rho*(V) = dim V - rho(ambient) + rho(V^perp)."""
    L = P.lattice
    vals = {S: S.dim - P.rank + P.values[L.perp[i]] for i, S in enumerate(L.subspaces)}
    return QPolymatroid(P.field, P.ell, vals, scale=P.scale)


def pm_equivalent(P: QPolymatroid, Q: QPolymatroid, budget: int = DEFAULT_BUDGET) -> np.ndarray | None:
    """The first A in GL(ell) (enumeration order) with rho_P(V) = rho_Q(VA) for all V."""
    if (P.field, P.ell) != (Q.field, Q.ell):
        return None
    total = count_gl(P.ell, P.field.p)
    if total > budget:
        raise BudgetExceeded(f"GL({P.ell}, {P.field.p})", total, budget)
    L = P.lattice
    if sorted(zip(L.dims, P.values)) != sorted(zip(L.dims, Q.values)):
        return None
    den = lcm(*(v.denominator for v in P.values + Q.values))
    rp = np.array([int(v * den) for v in P.values], dtype=np.int64)
    rq = np.array([int(v * den) for v in Q.values], dtype=np.int64)
    G = gl_array(P.ell, P.field)
    chunk = max(1, (1 << 20) // len(L))
    for start in range(0, len(G), chunk):
        imgs = L.image_indices(G[start : start + chunk])
        ok = (rq[imgs] == rp[None, :]).all(axis=1)
        if ok.any():
            return G[start + int(np.argmax(ok))].copy()
    return None


def _as_pair(P) -> tuple[QPolymatroid, ...]:
    return tuple(P) if isinstance(P, tuple) else (P,)


@dataclass(frozen=True)
class Recovered:
    dim: int
    d_min: int
    profile: tuple[int, ...]

    def as_dict(self) -> dict:
        return {"dim": self.dim, "d_min": self.d_min, "profile": list(self.profile)}


def _d_profile(P: QPolymatroid, dim: int, hi: int) -> list[int]:
    L = P.lattice
    vals = []
    for i in range(1, dim + 1):
        best = max(int(L.dims[k]) for k, v in enumerate(P.values) if dim - hi * v >= i)
        vals.append(P.ell - best)
    return vals


def recover(P, hi: int | None = None) -> Recovered:
    """Dimension, minimum distance and generalized weights from P(C) (or the pair)."""
    Ps = _as_pair(P)
    P0 = Ps[0]
    hi = P0.scale if hi is None else hi
    dim_f = hi * P0.rank
    if dim_f.denominator != 1:
        raise InvalidDistribution(f"max(m, n) * rho(ambient) = {dim_f} is not an integer")
    dim = int(dim_f)
    L = P0.lattice
    full = Fraction(dim, hi)
    delta = min(
        k for k in range(P0.ell + 1)
        if all(v == full for v, d in zip(P0.values, L.dims) if d == k)
    )
    profiles = [_d_profile(Pi, dim, hi) for Pi in Ps]
    profile = tuple(min(col) for col in zip(*profiles)) if dim else ()
    return Recovered(dim, P0.ell + 1 - delta, profile)


@dataclass(frozen=True)
class Enumerator:
    """A bivariate polynomial sum c * x^i * y^j with integer exponents."""

    terms: tuple[tuple[int, int, int], ...]  # (i, j, c), c != 0, sorted by i

    def distribution(self, n: int) -> tuple[int, ...]:
        A = [0] * (n + 1)
        for i, j, c in self.terms:
            if i + j != n:
                raise InvalidDistribution(f"term x^{i} y^{j} is not homogeneous of degree {n}")
            A[i] = c
        return tuple(A)

    def __str__(self):
        def mono(i, j, c):
            parts = [] if c == 1 and (i or j) else [str(c)]
            parts += [f"x^{i}" if i > 1 else "x"] if i else []
            parts += [f"y^{j}" if j > 1 else "y"] if j else []
            return "".join(parts)

        return " + ".join(mono(*t) for t in sorted(self.terms, key=lambda t: (t[0], -t[1]))) or "0"


def weight_enumerator(P: QPolymatroid, n: int, m: int, q: int) -> Enumerator:
    """Rank weight enumerator recovered from P(C) for n <= m.

    The product over i < dim V is taken inside the sum over V.  x-exponents
    are carried as Fractions until the very end; any non-integral exponent or
    coefficient left after summation raises InvalidDistribution.
    """
    if n > m:
        raise ValueError("the enumerator formula needs n <= m")
    if P.ell != n:
        raise ValueError(f"expected a q-polymatroid on F_q^{n}")
    ell = m * P.rank  # dimension of the code
    acc: dict[tuple[Fraction, int], Fraction] = {}
    lead = n - ell / m
    for S, r in zip(P.subspaces, P.values):
        e_coef = m * (P.rank - r)
        if e_coef.denominator != 1:
            raise InvalidDistribution(f"q-power exponent {e_coef} is not an integer")
        coef = Fraction(q) ** int(e_coef)
        x_shift = lead + (P.rank - r) - (S.dim - r)
        # expand prod_{i<dim S} (y - q^i x) as sum over k of c_k x^k y^(dim-k)
        poly = {0: Fraction(1)}
        for i in range(S.dim):
            nxt: dict[int, Fraction] = {}
            for k, c in poly.items():
                nxt[k] = nxt.get(k, 0) + c
                nxt[k + 1] = nxt.get(k + 1, 0) - c * q**i
            poly = nxt
        for k, c in poly.items():
            key = (x_shift + k, S.dim - k)
            acc[key] = acc.get(key, 0) + coef * c
    terms = []
    for (xe, ye), c in acc.items():
        if c == 0:
            continue
        if xe.denominator != 1 or c.denominator != 1:
            raise InvalidDistribution(f"non-integral term {c} x^{xe} y^{ye} survives")
        terms.append((int(xe), ye, int(c)))
    return Enumerator(tuple(sorted(terms)))


def canonical_anticode_rho(ell: int, r: int, field: PrimeField, scale: int = 1) -> QPolymatroid:
    """rho(V) = dim(V + <e_1..e_{ell-r}>) - (ell - r)."""
    E = Subspace(field, ell, np.eye(ell, dtype=np.int64)[: ell - r])
    return QPolymatroid(field, ell, lambda V: (V + E).dim - (ell - r), scale=scale)


def canonical_mrd_rho(ell: int, d: int, field: PrimeField, scale: int = 1) -> QPolymatroid:
    """rho(V) = min(dim V, ell - d + 1)."""
    t = ell - d + 1
    return QPolymatroid(field, ell, lambda V: min(V.dim, t), scale=scale)


@dataclass(frozen=True)
class Characterization:
    mrd: bool
    mrd_form: bool  # table equals the canonical MRD rank function
    anticode: bool
    anticode_r: int | None
    witness: np.ndarray | None  # GL element carrying the canonical anticode rho onto P
    witness_on_transpose: bool

    def as_dict(self) -> dict:
        return {
            "mrd": self.mrd,
            "mrd_form": self.mrd_form,
            "anticode": self.anticode,
            "anticode_r": self.anticode_r,
            "witness": None if self.witness is None else self.witness.tolist(),
            "witness_on_transpose": self.witness_on_transpose,
        }


def pm_characterize(P, budget: int = DEFAULT_BUDGET) -> Characterization:
    """MRD and optimal-anticode tests phrased purely in terms of rho."""
    Ps = _as_pair(P)
    P0 = Ps[0]
    rec = recover(P)
    t = P0.ell - rec.d_min + 1
    mrd = all(v == d for v, d in zip(P0.values, P0.lattice.dims) if d <= t)
    mrd_form = P0 == canonical_mrd_rho(P0.ell, rec.d_min, P0.field, P0.scale)
    for idx, Pi in enumerate(Ps):
        r = Pi.rank
        if r.denominator != 1:
            continue
        canon = canonical_anticode_rho(Pi.ell, int(r), Pi.field, Pi.scale)
        A = pm_equivalent(canon, Pi, budget)
        if A is not None:
            return Characterization(mrd, mrd_form, True, int(r), A, idx == 1)
    return Characterization(mrd, mrd_form, False, None, None, False)
