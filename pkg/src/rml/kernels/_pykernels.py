"""Pure numpy implementations of the GF(p) hot loops.

Same signatures and results as the compiled module; used when the extension
is not built or when ``RML_PURE_PYTHON`` is set.
"""

from __future__ import annotations

import numpy as np


def _inverse_table(p: int) -> np.ndarray:
    inv = np.zeros(p, dtype=np.int64)
    for x in range(1, p):
        inv[x] = pow(x, p - 2, p)
    return inv


def rref_modp(M, p: int):
    """Reduced row echelon form of ``M`` over GF(p).

    Returns ``(R, pivots)``; ``R`` has the shape of ``M`` with zero rows last.
    """
    R = np.array(M, dtype=np.int64) % p
    if R.ndim != 2:
        raise ValueError("rref_modp expects a 2-d array")
    nrows, ncols = R.shape
    inv = _inverse_table(p)
    pivots: list[int] = []
    row = 0
    for col in range(ncols):
        if row == nrows:
            break
        nz = np.nonzero(R[row:, col])[0]
        if nz.size == 0:
            continue
        piv = row + int(nz[0])
        if piv != row:
            R[[row, piv]] = R[[piv, row]]
        R[row] = (R[row] * inv[R[row, col]]) % p
        factors = R[:, col].copy()
        factors[row] = 0
        R -= factors[:, None] * R[row][None, :]
        R %= p
        pivots.append(col)
        row += 1
    return R, pivots


def batch_rank_modp(mats, p: int) -> np.ndarray:
    """Rank over GF(p) of every matrix in a stack of shape (N, r, c)."""
    A = np.array(mats, dtype=np.int64) % p
    if A.ndim != 3:
        raise ValueError("batch_rank_modp expects a 3-d array")
    N, r, c = A.shape
    inv = _inverse_table(p)
    rank = np.zeros(N, dtype=np.int64)
    rows = np.arange(r)
    for col in range(c):
        mask = (A[:, :, col] != 0) & (rows[None, :] >= rank[:, None])
        has = mask.any(axis=1)
        if not has.any():
            continue
        sel = np.nonzero(has)[0]
        pr = np.argmax(mask[sel], axis=1)
        tr = rank[sel]
        prow = A[sel, pr].copy()
        A[sel, pr] = A[sel, tr]
        prow = (prow * inv[prow[:, col]][:, None]) % p
        A[sel, tr] = prow
        factors = A[sel, :, col].copy()
        factors[np.arange(sel.size), tr] = 0
        A[sel] = (A[sel] - factors[:, :, None] * prow[:, None, :]) % p
        rank[sel] += 1
    return rank


def rank_distribution_modp(basis, r: int, c: int, p: int, chunk: int = 1 << 15) -> np.ndarray:
    """Count the codewords of each rank in the span of ``basis``.

    ``basis`` holds k row-major vectorized r x c matrices; all p**k linear
    combinations are enumerated.
    """
    B = np.array(basis, dtype=np.int64).reshape(-1, r * c) % p
    k = B.shape[0]
    counts = np.zeros(min(r, c) + 1, dtype=np.int64)
    total = p**k
    powers = p ** np.arange(k, dtype=np.int64)
    for start in range(0, total, chunk):
        idx = np.arange(start, min(total, start + chunk), dtype=np.int64)
        coeffs = (idx[:, None] // powers[None, :]) % p
        words = (coeffs @ B) % p
        ranks = batch_rank_modp(words.reshape(-1, r, c), p)
        counts += np.bincount(ranks, minlength=counts.size)
    return counts
