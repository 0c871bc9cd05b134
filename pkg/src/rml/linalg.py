"""Exact linear algebra over GF(p) and GF(p^m).

Matrices are numpy int64 arrays of element codes together with a field
handle (see :mod:`rml.fields`).  Subspaces are kept in canonical form: the
reduced row echelon generator without zero rows, so two subspaces are equal
exactly when their generators are.
"""

from __future__ import annotations

import itertools
from functools import lru_cache
from typing import Iterator

import numpy as np

from .errors import DEFAULT_BUDGET, BudgetExceeded, FieldMismatch
from .fields import Field, PrimeField
from .kernels import rref_modp


def _as_matrix(M) -> np.ndarray:
    A = np.asarray(M, dtype=np.int64)
    if A.ndim == 1:
        A = A[None, :]
    return A


def rref(M, field: Field) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form, zero rows dropped, with the pivot columns."""
    A = _as_matrix(M)
    if isinstance(field, PrimeField):
        R, piv = rref_modp(A, field.p)
        return R[: len(piv)], piv
    R = A.copy()
    nrows, ncols = R.shape
    piv: list[int] = []
    row = 0
    for col in range(ncols):
        if row == nrows:
            break
        nz = np.nonzero(R[row:, col])[0]
        if nz.size == 0:
            continue
        pr = row + int(nz[0])
        if pr != row:
            R[[row, pr]] = R[[pr, row]]
        R[row] = field.mul(R[row], field.inv(R[row, col]))
        for i in range(nrows):
            if i != row and R[i, col]:
                R[i] = field.sub(R[i], field.mul(R[i, col], R[row]))
        piv.append(col)
        row += 1
    return R[: len(piv)], piv


def rank(M, field: Field) -> int:
    """Rank by row reduction; 0 for an empty or zero matrix."""
    A = _as_matrix(M)
    if A.size == 0:
        return 0
    return len(rref(A, field)[1])


def matmul(A, B, field: Field) -> np.ndarray:
    A = np.asarray(A, dtype=np.int64)
    B = np.asarray(B, dtype=np.int64)
    if isinstance(field, PrimeField):
        return (A @ B) % field.p
    out = np.zeros(A.shape[:-1] + B.shape[-1:], dtype=np.int64)
    for k in range(A.shape[-1]):
        out = field.add(out, field.mul(A[..., k, None], B[..., k : k + 1, :]))
    return out


def nullspace(M, field: Field, ncols: int | None = None) -> np.ndarray:
    """RREF basis of {x : M x^T = 0}; ``ncols`` is needed when M has no rows."""
    A = np.asarray(M, dtype=np.int64)
    if ncols is None:
        ncols = A.shape[-1]
    A = A.reshape(-1, ncols)
    if A.shape[0] == 0:
        return np.eye(ncols, dtype=np.int64)
    R, piv = rref(A, field)
    free = [c for c in range(ncols) if c not in piv]
    N = np.zeros((len(free), ncols), dtype=np.int64)
    for k, f in enumerate(free):
        N[k, f] = 1
        for r, pc in enumerate(piv):
            N[k, pc] = field.neg(R[r, f])
    if len(free) == 0:
        return N
    return rref(N, field)[0]


def inverse(M, field: Field) -> np.ndarray:
    A = np.asarray(M, dtype=np.int64)
    n = A.shape[0]
    R, piv = rref(np.hstack([A, np.eye(n, dtype=np.int64)]), field)
    if piv[:n] != list(range(n)) or len(piv) < n:
        raise ZeroDivisionError("matrix is singular")
    return R[:, n:]


class Subspace:
    """A subspace of field^ambient held by its canonical RREF generator."""

    __slots__ = ("field", "ambient", "gen", "_key")

    def __init__(self, field: Field, ambient: int, gen):
        g = np.asarray(gen, dtype=np.int64).reshape(-1, ambient)
        g.setflags(write=False)
        self.field = field
        self.ambient = ambient
        self.gen = g
        self._key = (field, ambient, g.shape[0], g.tobytes())

    @classmethod
    def span(cls, field: Field, ambient: int, vectors) -> Subspace:
        V = np.asarray(vectors, dtype=np.int64).reshape(-1, ambient)
        if V.shape[0] == 0:
            return cls(field, ambient, V)
        return cls(field, ambient, rref(V, field)[0])

    @classmethod
    def zero(cls, field: Field, ambient: int) -> Subspace:
        return cls(field, ambient, np.zeros((0, ambient), dtype=np.int64))

    @classmethod
    def full(cls, field: Field, ambient: int) -> Subspace:
        return cls(field, ambient, np.eye(ambient, dtype=np.int64))

    @property
    def dim(self) -> int:
        return self.gen.shape[0]

    def __eq__(self, other):
        return isinstance(other, Subspace) and self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        rows = ", ".join("(" + ",".join(str(int(x)) for x in r) + ")" for r in self.gen)
        return f"<{rows}> in {self.field!r}^{self.ambient}"

    def _same(self, other: Subspace):
        if self.field != other.field or self.ambient != other.ambient:
            raise FieldMismatch("subspaces live in different ambient spaces")

    def __add__(self, other: Subspace) -> Subspace:
        self._same(other)
        return Subspace.span(self.field, self.ambient, np.vstack([self.gen, other.gen]))

    def __and__(self, other: Subspace) -> Subspace:
        self._same(other)
        return (self.perp() + other.perp()).perp()

    def perp(self) -> Subspace:
        """Orthogonal complement for the standard (bilinear) dot product."""
        return Subspace(self.field, self.ambient, nullspace(self.gen, self.field, self.ambient))

    def contains(self, other) -> bool:
        """Containment of a subspace, or membership of a vector / stack of vectors."""
        if isinstance(other, Subspace):
            self._same(other)
            vecs = other.gen
        else:
            vecs = np.asarray(other, dtype=np.int64).reshape(-1, self.ambient)
        if vecs.shape[0] == 0:
            return True
        return rank(np.vstack([self.gen, vecs]), self.field) == self.dim

    __le__ = lambda self, other: other.contains(self)  # noqa: E731

    def vectors(self) -> np.ndarray:
        """All field^dim elements, in odometer order of their coordinates."""
        Q = self.field.order
        coords = _odometer(Q, self.dim)
        return matmul(coords, self.gen, self.field)


@lru_cache(maxsize=256)
def _odometer(Q: int, k: int) -> np.ndarray:
    """All of range(Q)^k as rows, last coordinate fastest."""
    place = Q ** np.arange(k - 1, -1, -1, dtype=np.int64)
    out = (np.arange(Q**k, dtype=np.int64)[:, None] // place[None, :]) % Q
    out.flags.writeable = False
    return out


def rowsp(M, field: Field) -> Subspace:
    A = _as_matrix(M)
    return Subspace.span(field, A.shape[1], A)


def colsp(M, field: Field) -> Subspace:
    A = _as_matrix(M)
    return Subspace.span(field, A.shape[0], A.T)


def subspace_ops(U: Subspace, V: Subspace, op: str):
    """Dispatch by name: ``sum``, ``intersect``, ``perp`` (of U), ``contains``."""
    U._same(V)
    if op == "sum":
        return U + V
    if op == "intersect":
        return U & V
    if op == "perp":
        return U.perp()
    if op == "contains":
        return U.contains(V)
    raise ValueError(f"unknown op {op!r}")


def gaussian(a: int, b: int, q: int) -> int:
    """q-ary Gaussian binomial coefficient, zero outside 0 <= b <= a."""
    if a < 0 or b < 0 or b > a:
        return 0
    if b == 0:
        return 1
    num = 1
    den = 1
    for i in range(b):
        num *= q ** (a - i) - 1
        den *= q ** (b - i) - 1
    return num // den


def count_gl(n: int, q: int) -> int:
    out = 1
    for i in range(n):
        out *= q**n - q**i
    return out


def enumerate_subspaces(
    ell: int, k: int | None, field: Field, budget: int = DEFAULT_BUDGET
) -> Iterator[Subspace]:
    """Every k-dimensional subspace of field^ell exactly once (all dims if k is None).

    Order: by dimension, then pivot columns in lexicographic order, then the
    free entries of the RREF generator in lexicographic order.
    """
    Q = field.order
    dims = range(ell + 1) if k is None else [k]
    total = sum(gaussian(ell, d, Q) for d in dims)
    if total > budget:
        raise BudgetExceeded(f"subspaces of GF({Q})^{ell}", total, budget)
    for d in dims:
        if d < 0 or d > ell:
            continue
        for piv in itertools.combinations(range(ell), d):
            free = [
                (r, c) for r, pc in enumerate(piv) for c in range(pc + 1, ell) if c not in piv
            ]
            base = np.zeros((d, ell), dtype=np.int64)
            for r, pc in enumerate(piv):
                base[r, pc] = 1
            for vals in itertools.product(range(Q), repeat=len(free)):
                g = base.copy()
                for (r, c), v in zip(free, vals):
                    g[r, c] = v
                yield Subspace(field, ell, g)


@lru_cache(maxsize=256)
def all_subspaces(ell: int, field: Field) -> tuple[Subspace, ...]:
    """Cached tuple of every subspace of field^ell, in enumeration order."""
    return tuple(enumerate_subspaces(ell, None, field))


def enumerate_gl(n: int, field: Field, budget: int = DEFAULT_BUDGET) -> Iterator[np.ndarray]:
    """Every invertible n x n matrix once, rows chosen in lexicographic order."""
    Q = field.order
    total = count_gl(n, Q)
    if total > budget:
        raise BudgetExceeded(f"GL({n}, {Q})", total, budget)
    if isinstance(field, PrimeField) and Q ** (n * n) <= 1 << 22:
        # filter all matrices in flattened lexicographic order (same order as below)
        from .kernels import batch_rank_modp

        place = Q ** np.arange(n * n - 1, -1, -1, dtype=np.int64)
        chunk = 1 << 16
        for start in range(0, Q ** (n * n), chunk):
            idx = np.arange(start, min(Q ** (n * n), start + chunk), dtype=np.int64)
            mats = ((idx[:, None] // place[None, :]) % Q).reshape(-1, n, n)
            yield from mats[batch_rank_modp(mats, Q) == n]
        return
    vecs = [tuple(v) for v in itertools.product(range(Q), repeat=n)]
    scalars = np.arange(Q, dtype=np.int64)

    def extend(rows: list[tuple], span: set):
        if len(rows) == n:
            yield np.array(rows, dtype=np.int64)
            return
        for v in vecs:
            if v in span:
                continue
            vv = np.array(v, dtype=np.int64)
            multiples = field.mul(scalars[:, None], vv[None, :])
            new = set(span)
            for s in span:
                sarr = np.array(s, dtype=np.int64)
                for row in field.add(sarr[None, :], multiples):
                    new.add(tuple(int(x) for x in row))
            yield from extend(rows + [v], new)

    yield from extend([], {tuple([0] * n)})


@lru_cache(maxsize=64)
def gl_array(n: int, field: Field, budget: int = DEFAULT_BUDGET) -> np.ndarray:
    """All of GL(n) stacked into an (N, n, n) read-only array."""
    arr = np.stack(list(enumerate_gl(n, field, budget))) if n else np.zeros((1, 0, 0), np.int64)
    arr.setflags(write=False)
    return arr
