"""Matrix rank-metric codes: F_q-linear subspaces of n x m matrices over GF(p)."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Iterator, Sequence

import numpy as np

from .errors import DEFAULT_BUDGET, BudgetExceeded, FieldMismatch
from .fields import PrimeField
from .kernels import batch_rank_modp, rank_distribution_modp
from .linalg import (
    Subspace,
    colsp,
    count_gl,
    enumerate_subspaces,
    gl_array,
    nullspace,
    rowsp,
    rref,
)


class MatrixCode:
    """An F_q-linear code in Mat_{n x m}(F_q), stored by the RREF of its
    row-major vectorized basis."""

    def __init__(self, n: int, m: int, field: PrimeField, basis=None):
        if n < 1 or m < 1:
            raise ValueError("matrix dimensions must be positive")
        if not isinstance(field, PrimeField):
            raise TypeError("matrix codes live over a prime field")
        self.n = n
        self.m = m
        self.field = field
        B = np.zeros((0, n * m), dtype=np.int64) if basis is None else np.asarray(basis, np.int64)
        B = B.reshape(-1, n * m) % field.p
        if B.shape[0]:
            B = rref(B, field)[0]
        B.setflags(write=False)
        self.basis = B

    @classmethod
    def from_matrices(cls, mats: Sequence, field: PrimeField, n: int | None = None, m: int | None = None):
        arr = np.asarray(mats, dtype=np.int64)
        if arr.size == 0:
            if n is None or m is None:
                raise ValueError("shape is required for an empty generator list")
            return cls(n, m, field)
        if arr.ndim == 2:
            arr = arr[None]
        return cls(arr.shape[1], arr.shape[2], field, arr.reshape(arr.shape[0], -1))

    @classmethod
    def zero(cls, n: int, m: int, field: PrimeField) -> MatrixCode:
        return cls(n, m, field)

    @classmethod
    def full(cls, n: int, m: int, field: PrimeField) -> MatrixCode:
        return cls(n, m, field, np.eye(n * m, dtype=np.int64))

    @property
    def q(self) -> int:
        return self.field.p

    @property
    def dim(self) -> int:
        return self.basis.shape[0]

    @property
    def size(self) -> int:
        return self.q**self.dim

    @property
    def matrices(self) -> np.ndarray:
        return self.basis.reshape(-1, self.n, self.m)

    @property
    def lo(self) -> int:
        return min(self.n, self.m)

    @property
    def hi(self) -> int:
        return max(self.n, self.m)

    def __eq__(self, other):
        return (
            isinstance(other, MatrixCode)
            and (self.n, self.m, self.field) == (other.n, other.m, other.field)
            and np.array_equal(self.basis, other.basis)
        )

    def __hash__(self):
        return hash((self.n, self.m, self.field, self.basis.tobytes()))

    def __repr__(self):
        return f"MatrixCode({self.n}x{self.m} over GF({self.q}), dim={self.dim})"

    def _check_budget(self, count: int, what: str, budget: int):
        if count > budget:
            raise BudgetExceeded(what, count, budget)

    def codewords(self, budget: int = DEFAULT_BUDGET) -> np.ndarray:
        """All codewords as an (q^dim, n, m) array, zero first."""
        self._check_budget(self.size, "codewords", budget)
        coeffs = np.array(list(itertools.product(range(self.q), repeat=self.dim)), dtype=np.int64)
        coeffs = coeffs.reshape(self.q**self.dim, self.dim)
        return ((coeffs @ self.basis) % self.q).reshape(-1, self.n, self.m)

    def contains(self, M) -> bool:
        v = np.asarray(M, dtype=np.int64).reshape(-1, self.n * self.m) % self.q
        if self.dim == 0:
            return not v.any()
        _, piv = rref(self.basis, self.field)
        resid = (v - v[:, piv] @ self.basis) % self.q
        return not resid.any()

    def is_subcode_of(self, other: MatrixCode) -> bool:
        return other.contains(self.basis) if self.dim else True

    def transpose(self) -> MatrixCode:
        mats = self.matrices.transpose(0, 2, 1)
        return MatrixCode(self.m, self.n, self.field, mats.reshape(self.dim, self.n * self.m))

    @property
    def T(self) -> MatrixCode:
        return self.transpose()

    def __add__(self, other: MatrixCode) -> MatrixCode:
        _same_space(self, other)
        return MatrixCode(self.n, self.m, self.field, np.vstack([self.basis, other.basis]))

    def __and__(self, other: MatrixCode) -> MatrixCode:
        _same_space(self, other)
        return dual(dual(self) + dual(other))

    @cached_property
    def _weight_distribution(self) -> tuple[int, ...]:
        counts = rank_distribution_modp(self.basis, self.n, self.m, self.q)
        return tuple(int(c) for c in counts)


def _same_space(C: MatrixCode, D: MatrixCode):
    if (C.n, C.m, C.field) != (D.n, D.m, D.field):
        raise FieldMismatch("codes live in different matrix spaces")


def weight_distribution(C: MatrixCode, budget: int = DEFAULT_BUDGET) -> tuple[int, ...]:
    """(A_0, ..., A_min(n,m)): number of codewords of each rank."""
    C._check_budget(C.size, "codewords", budget)
    return C._weight_distribution


def min_distance(C: MatrixCode, budget: int = DEFAULT_BUDGET) -> int:
    """Smallest nonzero rank; min(n, m) + 1 for the zero code."""
    A = weight_distribution(C, budget)
    for i in range(1, len(A)):
        if A[i]:
            return i
    return C.lo + 1


def max_rank(C: MatrixCode, budget: int = DEFAULT_BUDGET) -> int:
    A = weight_distribution(C, budget)
    return max(i for i, a in enumerate(A) if a)


def dual(C: MatrixCode) -> MatrixCode:
    """Dual under the trace product tr(M N^T), i.e. the dot product of vectorizations."""
    N = nullspace(C.basis, C.field, C.n * C.m)
    return MatrixCode(C.n, C.m, C.field, N)


def support(M, field: PrimeField) -> Subspace:
    """Column space if n <= m, row space otherwise."""
    A = np.asarray(M, dtype=np.int64)
    n, m = A.shape
    return colsp(A, field) if n <= m else rowsp(A, field)


def code_support(C: MatrixCode) -> Subspace:
    """Sum of the supports of all codewords (equivalently of a basis)."""
    mats = C.matrices
    if C.n <= C.m:
        if C.dim == 0:
            return Subspace.zero(C.field, C.n)
        return colsp(np.hstack(list(mats)), C.field)
    if C.dim == 0:
        return Subspace.zero(C.field, C.m)
    return rowsp(np.vstack(list(mats)), C.field)


def _subcode_from_conditions(C: MatrixCode, conds: np.ndarray) -> MatrixCode:
    """Subcode cut out by linear conditions; conds has shape (dim, k) of images."""
    if C.dim == 0 or conds.shape[1] == 0:
        return C
    coeffs = nullspace(conds.T, C.field, C.dim)
    if coeffs.shape[0] == 0:
        return MatrixCode(C.n, C.m, C.field)
    return MatrixCode(C.n, C.m, C.field, (coeffs @ C.basis) % C.q)


def column_restrict(C: MatrixCode, V: Subspace) -> MatrixCode:
    """{M in C : colsp(M) is contained in V}, for V in F_q^n."""
    if V.ambient != C.n or V.field != C.field:
        raise FieldMismatch("V must be a subspace of F_q^n")
    if C.dim == 0:
        return C
    H = V.perp().gen
    conds = np.einsum("hi,lij->lhj", H, C.matrices).reshape(C.dim, -1) % C.q
    return _subcode_from_conditions(C, conds)


def row_restrict(C: MatrixCode, V: Subspace) -> MatrixCode:
    """{M in C : rowsp(M) is contained in V}, for V in F_q^m."""
    if V.ambient != C.m or V.field != C.field:
        raise FieldMismatch("V must be a subspace of F_q^m")
    if C.dim == 0:
        return C
    H = V.perp().gen
    conds = np.einsum("lij,hj->lih", C.matrices, H).reshape(C.dim, -1) % C.q
    return _subcode_from_conditions(C, conds)


def shorten(C: MatrixCode, V: Subspace) -> MatrixCode:
    """C(V): the codewords whose support lies in V (V in F_q^min(n,m))."""
    if V.ambient != C.lo:
        raise FieldMismatch(f"V must live in F_q^{C.lo}")
    return column_restrict(C, V) if C.n <= C.m else row_restrict(C, V)


def subspace_anticode(n: int, m: int, V: Subspace) -> MatrixCode:
    """Mat_{n x m}(F_q)(V), all matrices supported on V."""
    return shorten(MatrixCode.full(n, m, V.field), V)


def standard_anticode(n: int, m: int, k: int, field: PrimeField, transposed: bool = False) -> MatrixCode:
    """Matrices supported on <e_1..e_k>: last n-k rows zero when n <= m,
    last m-k columns zero when n > m.  ``transposed`` gives the transpose of
    the standard anticode of Mat_{m x n}."""
    if not 0 <= k <= min(n, m):
        raise ValueError(f"k must lie in 0..{min(n, m)}")
    if transposed:
        return standard_anticode(m, n, k, field).transpose()
    E = Subspace(field, min(n, m), np.eye(min(n, m), dtype=np.int64)[:k])
    return subspace_anticode(n, m, E)


@dataclass(frozen=True)
class Classification:
    is_mrd: bool
    is_optimal_anticode: bool
    is_dually_quasi_mrd: bool


def classify(C: MatrixCode, budget: int = DEFAULT_BUDGET) -> Classification:
    d = min_distance(C, budget)
    r = max_rank(C, budget)
    d_dual = min_distance(dual(C), budget)
    return Classification(
        is_mrd=C.dim == C.hi * (C.lo - d + 1),
        is_optimal_anticode=C.dim == C.hi * r,
        is_dually_quasi_mrd=d + d_dual == C.lo + 1,
    )


@dataclass(frozen=True, eq=False)
class Isometry:
    """M -> A M B over GF(p), or M -> A M^T B when ``transposed`` (square case)."""

    A: np.ndarray
    B: np.ndarray
    transposed: bool
    p: int

    def apply(self, M) -> np.ndarray:
        M = np.asarray(M, dtype=np.int64)
        X = np.swapaxes(M, -1, -2) if self.transposed else M
        return (self.A @ X @ self.B) % self.p

    def image(self, C: MatrixCode) -> MatrixCode:
        imgs = self.apply(C.matrices)
        return MatrixCode(C.n, C.m, C.field, imgs.reshape(C.dim, C.n * C.m))

    def as_dict(self) -> dict:
        return {"A": self.A.tolist(), "B": self.B.tolist(), "transposed": self.transposed}


def isometry_count(n: int, m: int, field: PrimeField) -> int:
    """Number of (A, B[, transpose]) triples enumerated by the isometry searches."""
    q = field.order
    return count_gl(n, q) * count_gl(m, q) * (2 if n == m else 1)


def _isometry_triples(n: int, m: int, field: PrimeField, budget: int):
    total = count_gl(n, field.p) * count_gl(m, field.p)
    if total > budget:
        raise BudgetExceeded(f"GL({n}) x GL({m}) over GF({field.p})", total, budget)
    return gl_array(n, field), gl_array(m, field), ([False, True] if n == m else [False])


def are_equivalent(C: MatrixCode, D: MatrixCode, budget: int = DEFAULT_BUDGET) -> Isometry | None:
    """An isometry mapping C onto D, or None if none exists.

    The search covers every isometry M -> AMB (and AM^T B when n = m); the
    witness returned is the first in (transposed, A, B) enumeration order.
    """
    _same_space(C, D)
    if C.dim != D.dim:
        return None
    if C.dim == 0 or C.dim == C.n * C.m:
        return Isometry(np.eye(C.n, dtype=np.int64), np.eye(C.m, dtype=np.int64), False, C.q)
    if C.size <= budget and D.size <= budget:
        if weight_distribution(C) != weight_distribution(D):
            return None
    As, Bs, transposes = _isometry_triples(C.n, C.m, C.field, budget)
    p = C.q
    _, piv = rref(D.basis, D.field)
    R = D.basis
    for t in transposes:
        mats = np.swapaxes(C.matrices, 1, 2) if t else C.matrices
        for A in As:
            AM = (A @ mats) % p
            imgs = np.einsum("lij,bjk->blik", AM, Bs).reshape(len(Bs), C.dim, C.n * C.m) % p
            resid = (imgs - imgs[:, :, piv] @ R) % p
            ok = ~resid.reshape(len(Bs), -1).any(axis=1)
            if ok.any():
                b = int(np.argmax(ok))
                return Isometry(A.copy(), Bs[b].copy(), t, p)
    return None


def is_isometry_on(C: MatrixCode, images, budget: int = DEFAULT_BUDGET) -> bool:
    """Whether the linear map sending C's basis to ``images`` preserves rank on C."""
    imgs = np.asarray(images, dtype=np.int64).reshape(C.dim, C.n * C.m) % C.q
    C._check_budget(C.size, "codewords", budget)
    coeffs = np.array(list(itertools.product(range(C.q), repeat=C.dim)), dtype=np.int64)
    coeffs = coeffs.reshape(C.q**C.dim, C.dim)
    src = ((coeffs @ C.basis) % C.q).reshape(-1, C.n, C.m)
    dst = ((coeffs @ imgs) % C.q).reshape(-1, C.n, C.m)
    return bool(np.array_equal(batch_rank_modp(src, C.q), batch_rank_modp(dst, C.q)))


def extension_exists(C: MatrixCode, images, budget: int = DEFAULT_BUDGET) -> Isometry | None:
    """A global isometry of Mat_{n x m} restricting to the map f on C, or None.

    ``images`` lists f applied to the canonical basis ``C.matrices`` in order.
    Raises ValueError when f is not an isometry on C.
    """
    imgs = np.asarray(images, dtype=np.int64).reshape(C.dim, C.n, C.m) % C.q
    if not is_isometry_on(C, imgs, budget):
        raise ValueError("the given map is not an isometry on C")
    As, Bs, transposes = _isometry_triples(C.n, C.m, C.field, budget)
    p = C.q
    target = imgs.reshape(1, C.dim, C.n * C.m)
    for t in transposes:
        mats = np.swapaxes(C.matrices, 1, 2) if t else C.matrices
        for A in As:
            AM = (A @ mats) % p
            out = np.einsum("lij,bjk->blik", AM, Bs).reshape(len(Bs), C.dim, C.n * C.m) % p
            ok = (out == target).reshape(len(Bs), -1).all(axis=1)
            if ok.any():
                b = int(np.argmax(ok))
                return Isometry(A.copy(), Bs[b].copy(), t, p)
    return None


def all_codes(n: int, m: int, field: PrimeField, dim: int | None = None, budget: int = DEFAULT_BUDGET) -> Iterator[MatrixCode]:
    """Every code in Mat_{n x m}(F_q) (of a given dimension, if specified)."""
    for S in enumerate_subspaces(n * m, dim, field, budget):
        yield MatrixCode(n, m, field, S.gen)


def random_code(n: int, m: int, dim: int, field: PrimeField, rng: np.random.Generator) -> MatrixCode:
    """A uniformly random generator matrix of full rank ``dim``."""
    while True:
        G = rng.integers(0, field.p, size=(dim, n * m))
        C = MatrixCode(n, m, field, G)
        if C.dim == dim:
            return C
