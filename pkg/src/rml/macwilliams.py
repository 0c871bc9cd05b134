"""Closed-form duality for rank distributions.

All arithmetic is exact (ints and Fractions).  The transform's exponent and
the moment identity's summand index are parameterized by a ``reading`` so
that alternative interpretations can be compared against enumeration; the
defaults are the ones that agree with it.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb
from typing import Sequence

from .errors import InvalidDistribution
from .linalg import gaussian

# exponent multiplier of max(m, n) in the transform kernel, as a function of
# (i, j, ell): target rank, source rank, inner summation index
EXPONENT_READINGS = {
    "ell": lambda i, j, ell: ell,
    "i": lambda i, j, ell: i,
    "j": lambda i, j, ell: j,
    "zero": lambda i, j, ell: 0,
}

# which dual coefficient enters the moment identity at inner index j
MOMENT_READINGS = {
    "j": lambda j, ell: j,
    "ell": lambda j, ell: ell,
    "zero": lambda j, ell: 0,
}


def _check_distribution(A: Sequence[int], lo: int, size: int):
    if len(A) != lo + 1:
        raise InvalidDistribution(f"expected {lo + 1} entries, got {len(A)}")
    if A[0] != 1 or sum(A) != size or any(a < 0 for a in A):
        raise InvalidDistribution(f"{list(A)} is not a weight distribution of a code of size {size}")


def _choose2(x: int) -> int:
    return x * (x - 1) // 2


def macwilliams_transform(
    A: Sequence[int],
    n: int,
    m: int,
    q: int,
    size: int,
    reading: str = "ell",
    strict: bool = True,
) -> tuple:
    """Weight distribution of the dual code from that of the code.

    With ``strict`` a non-integral entry raises InvalidDistribution; otherwise
    Fractions are returned so alternative readings can be inspected.
    """
    lo, hi = min(m, n), max(m, n)
    _check_distribution(A, lo, size)
    expo = EXPONENT_READINGS[reading]
    out = []
    for i in range(lo + 1):
        total = Fraction(0)
        for j in range(lo + 1):
            if not A[j]:
                continue
            inner = Fraction(0)
            for ell in range(lo + 1):
                g = gaussian(lo - ell, lo - i, q) * gaussian(lo - j, ell, q)
                if g:
                    e = hi * expo(i, j, ell) + _choose2(i - ell)
                    inner += (-1) ** ((i - ell) % 2) * Fraction(q) ** e * g
            total += A[j] * inner
        total /= size
        if strict:
            if total.denominator != 1 or total < 0:
                raise InvalidDistribution(f"A_{i} of the dual evaluates to {total}")
            out.append(int(total))
        else:
            out.append(total)
    return tuple(out)


def macwilliams_moments(
    A: Sequence[int],
    A_dual: Sequence[int],
    n: int,
    m: int,
    q: int,
    size: int,
    reading: str = "j",
) -> dict[int, bool]:
    """Check the binomial-moment form of the identities for every ell."""
    lo, hi = min(m, n), max(m, n)
    pick = MOMENT_READINGS[reading]
    result = {}
    for ell in range(lo + 1):
        lhs = sum(A[i] * gaussian(lo - i, ell, q) for i in range(lo - ell + 1))
        rhs = Fraction(size, q ** (hi * ell)) * sum(
            A_dual[pick(j, ell)] * gaussian(lo - j, ell - j, q) for j in range(ell + 1)
        )
        result[ell] = lhs == rhs
    return result


def mrd_weight_distribution(n: int, m: int, q: int, dim: int, d: int) -> tuple[int, ...]:
    """Rank distribution of an MRD or dually quasi-MRD code with these parameters."""
    lo, hi = min(m, n), max(m, n)
    if not 1 <= d <= lo + 1:
        raise InvalidDistribution(f"minimum distance {d} out of range")
    out = [1] + [0] * lo
    for i in range(d, lo + 1):
        s = Fraction(0)
        for j in range(i - d + 1):
            s += (
                (-1) ** j
                * q ** comb(j, 2)
                * gaussian(i, j, q)
                * (Fraction(q) ** (dim - hi * (lo + j - i)) - 1)
            )
        val = gaussian(lo, i, q) * s
        if val.denominator != 1 or val < 0:
            raise InvalidDistribution(
                f"A_{i} = {val}: parameters are not those of an MRD or dually quasi-MRD code"
            )
        out[i] = int(val)
    if sum(out) != q**dim:
        raise InvalidDistribution("distribution does not sum to the code size")
    return tuple(out)


def rank_counts(n: int, m: int, q: int) -> tuple[int, ...]:
    """Number of n x m matrices of each rank over GF(q), by the product formula."""
    out = []
    for r in range(min(n, m) + 1):
        num = den = 1
        for i in range(r):
            num *= (q**n - q**i) * (q**m - q**i)
            den *= q**r - q**i
        out.append(num // den)
    return tuple(out)
