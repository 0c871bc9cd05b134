"""Vector rank-metric codes: GF(q^m)-linear subspaces of GF(q^m)^n."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator

import numpy as np

from .errors import DEFAULT_BUDGET, BudgetExceeded, FieldMismatch
from .fields import ExtField, FieldBasis
from .kernels import batch_rank_modp
from .linalg import Subspace, colsp, count_gl, enumerate_subspaces, gl_array, matmul, nullspace, rref
from .matrix_codes import MatrixCode


class VectorCode:
    """A GF(q^m)-linear code of length n, stored by its RREF generator."""

    def __init__(self, n: int, field: ExtField, gen=None):
        if not isinstance(field, ExtField):
            raise TypeError("vector codes live over an extension field")
        self.n = n
        self.field = field
        G = np.zeros((0, n), dtype=np.int64) if gen is None else np.asarray(gen, dtype=np.int64)
        G = G.reshape(-1, n)
        if G.shape[0]:
            G = rref(G, field)[0]
        G.setflags(write=False)
        self.gen = G

    @classmethod
    def from_rows(cls, rows, field: ExtField) -> VectorCode:
        arr = np.asarray(rows, dtype=np.int64)
        if arr.ndim == 1:
            arr = arr[None]
        return cls(arr.shape[1], field, arr)

    @classmethod
    def zero(cls, n: int, field: ExtField) -> VectorCode:
        return cls(n, field)

    @classmethod
    def full(cls, n: int, field: ExtField) -> VectorCode:
        return cls(n, field, np.eye(n, dtype=np.int64))

    @property
    def dim(self) -> int:
        return self.gen.shape[0]

    @property
    def m(self) -> int:
        return self.field.m

    @property
    def q(self) -> int:
        return self.field.p

    @property
    def size(self) -> int:
        return self.field.order**self.dim

    def __eq__(self, other):
        return (
            isinstance(other, VectorCode)
            and (self.n, self.field) == (other.n, other.field)
            and np.array_equal(self.gen, other.gen)
        )

    def __hash__(self):
        return hash((self.n, self.field, self.gen.tobytes()))

    def __repr__(self):
        return f"VectorCode(n={self.n}, GF({self.q}^{self.m}), dim={self.dim})"

    def as_subspace(self) -> Subspace:
        return Subspace(self.field, self.n, self.gen)

    def codewords(self, budget: int = DEFAULT_BUDGET) -> np.ndarray:
        if self.size > budget:
            raise BudgetExceeded("vector codewords", self.size, budget)
        return self.as_subspace().vectors()

    def contains(self, v) -> bool:
        return self.as_subspace().contains(v)

    def is_subcode_of(self, other: VectorCode) -> bool:
        return other.contains(self.gen)

    def fq_basis(self) -> np.ndarray:
        """A basis over the prime field: every power-basis multiple of every generator."""
        F = self.field
        rows = [F.mul(F.p**j, g) for g in self.gen for j in range(F.m)]
        return np.array(rows, dtype=np.int64).reshape(-1, self.n)

    def __add__(self, other: VectorCode) -> VectorCode:
        _same(self, other)
        return VectorCode(self.n, self.field, np.vstack([self.gen, other.gen]))

    def __and__(self, other: VectorCode) -> VectorCode:
        _same(self, other)
        S = self.as_subspace() & other.as_subspace()
        return VectorCode(self.n, self.field, S.gen)


def _same(C: VectorCode, D: VectorCode):
    if (C.n, C.field) != (D.n, D.field):
        raise FieldMismatch("codes live in different ambient spaces")


def expansion(v, gamma: FieldBasis) -> np.ndarray:
    """Gamma(v): row i holds the coordinates of v_i in the basis gamma."""
    return gamma.coordinates(np.asarray(v, dtype=np.int64))


def rank_weight(v, field: ExtField) -> int:
    """Dimension over GF(q) of the span of the entries of v."""
    d = field.digits[np.asarray(v, dtype=np.int64).reshape(1, -1)]
    return int(batch_rank_modp(d, field.p)[0])


def _rank_weights(words: np.ndarray, field: ExtField) -> np.ndarray:
    return batch_rank_modp(field.digits[words], field.p)


def support(v, field: ExtField) -> Subspace:
    """colsp of the expansion of v in the power basis (basis-independent)."""
    v = np.asarray(v, dtype=np.int64)
    return colsp(field.digits[v], field.prime)


def code_support(D: VectorCode) -> Subspace:
    """Sum of the supports of the codewords of D."""
    F = D.field
    if D.dim == 0:
        return Subspace.zero(F.prime, D.n)
    mats = F.digits[D.fq_basis()]  # (mk, n, m)
    return colsp(np.hstack(list(mats)), F.prime)


def expand(C: VectorCode, gamma: FieldBasis) -> MatrixCode:
    """The matrix code Gamma(C) in Mat_{n x m}(F_q)."""
    if gamma.field != C.field:
        raise FieldMismatch("basis belongs to a different field")
    F = C.field
    if C.dim == 0:
        return MatrixCode(C.n, F.m, F.prime)
    mats = expansion(C.fq_basis(), gamma)
    return MatrixCode(C.n, F.m, F.prime, mats.reshape(mats.shape[0], -1))


def vdual(C: VectorCode) -> VectorCode:
    """Dual under the standard bilinear inner product of GF(q^m)^n."""
    return VectorCode(C.n, C.field, nullspace(C.gen, C.field, C.n))


def frobenius_image(D: VectorCode, times: int = 1) -> VectorCode:
    return VectorCode(D.n, D.field, D.field.frobenius_codes(D.gen, times))


def frobenius_closure(D: VectorCode) -> VectorCode:
    """D* = D + phi(D) + ... + phi^(m-1)(D), the smallest Frobenius-fixed code containing D."""
    F = D.field
    parts = [F.frobenius_codes(D.gen, t) for t in range(F.m)]
    return VectorCode(D.n, F, np.vstack(parts))


def is_frobenius_fixed(D: VectorCode) -> bool:
    return frobenius_image(D) == D


def fixed_space(U: Subspace, field: ExtField) -> VectorCode:
    """The Frobenius-fixed code spanned over GF(q^m) by a subspace U of F_q^n."""
    return VectorCode(U.ambient, field, U.gen)


def vweight_distribution(C: VectorCode, budget: int = DEFAULT_BUDGET) -> tuple[int, ...]:
    words = C.codewords(budget)
    ranks = _rank_weights(words, C.field)
    return tuple(int(x) for x in np.bincount(ranks, minlength=min(C.n, C.m) + 1))


def vmin_distance(C: VectorCode, budget: int = DEFAULT_BUDGET) -> int:
    """Smallest nonzero rank weight; n + 1 for the zero code."""
    A = vweight_distribution(C, budget)
    return next((i for i in range(1, len(A)) if A[i]), C.n + 1)


def vmax_rank(C: VectorCode, budget: int = DEFAULT_BUDGET) -> int:
    A = vweight_distribution(C, budget)
    return max(i for i, a in enumerate(A) if a)


@dataclass(frozen=True)
class VClassification:
    is_mrd: bool
    is_optimal_vector_anticode: bool


def vclassify(C: VectorCode, budget: int = DEFAULT_BUDGET) -> VClassification:
    return VClassification(
        is_mrd=C.dim == C.n - vmin_distance(C, budget) + 1,
        is_optimal_vector_anticode=C.dim == vmax_rank(C, budget),
    )


def standard_vector_anticode(n: int, k: int, field: ExtField) -> VectorCode:
    """<e_1, ..., e_k>."""
    if not 0 <= k <= min(n, field.m):
        raise ValueError(f"k must lie in 0..{min(n, field.m)}")
    return VectorCode(n, field, np.eye(n, dtype=np.int64)[:k])


@dataclass(frozen=True, eq=False)
class VIsometry:
    """v -> alpha * v * B with alpha in GF(q^m)^* and B in GL_n(F_q)."""

    alpha: int
    B: np.ndarray
    field: ExtField

    def apply(self, v) -> np.ndarray:
        F = self.field
        return F.mul(self.alpha, matmul(np.asarray(v, dtype=np.int64), self.B, F))

    def image(self, C: VectorCode) -> VectorCode:
        return VectorCode(C.n, C.field, self.apply(C.gen))

    def as_dict(self) -> dict:
        return {"alpha": list(self.field.digits[self.alpha].tolist()), "B": self.B.tolist()}


def _residual(vecs: np.ndarray, R: np.ndarray, piv: list[int], F: ExtField) -> np.ndarray:
    """vecs minus their projection onto the RREF rows R (zero iff in the span)."""
    out = vecs.copy()
    for r, c in enumerate(piv):
        out = F.sub(out, F.mul(vecs[..., c, None], R[r]))
    return out


def v_equivalent(C: VectorCode, D: VectorCode, budget: int = DEFAULT_BUDGET) -> VIsometry | None:
    """An isometry alpha*v*B carrying C onto D, or None; every alpha is searched."""
    _same(C, D)
    F = C.field
    total = (F.order - 1) * count_gl(C.n, F.p)
    if total > budget:
        raise BudgetExceeded("alpha x GL_n search", total, budget)
    if C.dim != D.dim:
        return None
    Bs = gl_array(C.n, F.prime)
    R, piv = (D.gen, rref(D.gen, F)[1]) if D.dim else (D.gen, [])
    for alpha in range(1, F.order):
        scaled = F.mul(alpha, C.gen)
        imgs = matmul(scaled[None], Bs, F)  # (NB, k, n)
        resid = _residual(imgs, R, piv, F)
        ok = ~resid.reshape(len(Bs), -1).any(axis=1)
        if ok.any():
            b = int(np.argmax(ok))
            return VIsometry(alpha, Bs[b].copy(), F)
    return None


def all_vector_codes(n: int, field: ExtField, dim: int | None = None, budget: int = DEFAULT_BUDGET) -> Iterator[VectorCode]:
    for S in enumerate_subspaces(n, dim, field, budget):
        yield VectorCode(n, field, S.gen)


def random_vector_code(n: int, dim: int, field: ExtField, rng: np.random.Generator) -> VectorCode:
    while True:
        C = VectorCode(n, field, rng.integers(0, field.order, size=(dim, n)))
        if C.dim == dim:
            return C


def subcodes(C: VectorCode, dim: int, budget: int = DEFAULT_BUDGET) -> Iterator[VectorCode]:
    """Every GF(q^m)-subspace of C of the given dimension."""
    F = C.field
    for S in enumerate_subspaces(C.dim, dim, F, budget):
        yield VectorCode(C.n, F, matmul(S.gen, C.gen, F) if dim else None)


def coefficient_vectors(k: int, Q: int) -> np.ndarray:
    return np.array(list(itertools.product(range(Q), repeat=k)), dtype=np.int64).reshape(Q**k, k)
