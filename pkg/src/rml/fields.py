"""Finite fields GF(p) and GF(p^m).

Extension-field elements are encoded as integers whose base-p digits are the
ascending coefficients of the representing polynomial, so ``a^2 + 1`` over
GF(2) is code ``0b101 = 5``.  The vectorized methods on the field objects
(``add``, ``mul``, ...) act on numpy arrays of such codes; ``FieldElement``
wraps a single code for interactive use.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence, Union

import numpy as np

from .errors import FieldMismatch, NotIrreducible
from .kernels import rref_modp

MAX_ORDER = 2**16
TABLE_ORDER = 256  # full add/mul tables up to this order

# ascending coefficients, leading 1
DEFAULT_MODULI = {
    (2, 2): (1, 1, 1),
    (2, 3): (1, 1, 0, 1),
    (2, 4): (1, 1, 0, 0, 1),
    (3, 2): (2, 2, 1),
    (3, 3): (1, 2, 0, 1),
}


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    return all(n % d for d in range(2, int(n**0.5) + 1))


@dataclass(frozen=True)
class PrimeField:
    """GF(p) for a prime 2 <= p <= 251."""

    p: int

    def __post_init__(self):
        if not (2 <= self.p <= 251) or not is_prime(self.p):
            raise ValueError(f"GF(p) needs a prime 2 <= p <= 251, got {self.p}")

    @property
    def order(self) -> int:
        return self.p

    @property
    def characteristic(self) -> int:
        return self.p

    @property
    def degree(self) -> int:
        return 1

    @property
    def prime(self) -> PrimeField:
        return self

    def __repr__(self):
        return f"GF({self.p})"

    @cached_property
    def _inv(self) -> np.ndarray:
        inv = np.zeros(self.p, dtype=np.int64)
        for x in range(1, self.p):
            inv[x] = pow(x, self.p - 2, self.p)
        return inv

    def add(self, a, b):
        return (np.asarray(a, dtype=np.int64) + b) % self.p

    def sub(self, a, b):
        return (np.asarray(a, dtype=np.int64) - b) % self.p

    def neg(self, a):
        return (-np.asarray(a, dtype=np.int64)) % self.p

    def mul(self, a, b):
        return (np.asarray(a, dtype=np.int64) * b) % self.p

    def inv(self, a):
        a = np.asarray(a, dtype=np.int64) % self.p
        if np.any(a == 0):
            raise ZeroDivisionError("inverse of zero in " + repr(self))
        return self._inv[a]

    def power(self, a, e: int):
        return pow(int(a) % self.p, e, self.p)

    def elements(self) -> range:
        return range(self.p)

    def __call__(self, x: int) -> FieldElement:
        return FieldElement(self, int(x) % self.p)


class ExtField:
    """GF(p^m) = GF(p)[a] / (modulus), with the modulus checked irreducible."""

    def __init__(self, p: int, m: int, modulus: Sequence[int] | None = None):
        self.prime = PrimeField(p)
        if m < 1:
            raise ValueError("extension degree must be >= 1")
        if p**m > MAX_ORDER:
            raise ValueError(f"GF({p}^{m}) exceeds the field size cap {MAX_ORDER}")
        if modulus is None:
            modulus = DEFAULT_MODULI.get((p, m)) or first_irreducible(p, m)
        modulus = tuple(int(c) % p for c in modulus)
        if len(modulus) != m + 1 or modulus[-1] != 1:
            raise ValueError("modulus must be monic of degree m, ascending coefficients")
        factor = find_factor(modulus, p)
        if factor is not None:
            raise NotIrreducible(modulus, factor)
        self.p = p
        self.m = m
        self.modulus = modulus
        self.order = p**m
        self._build_tables()

    def __repr__(self):
        return f"GF({self.p}^{self.m}; modulus={list(self.modulus)})"

    def __eq__(self, other):
        return (
            isinstance(other, ExtField)
            and (self.p, self.m, self.modulus) == (other.p, other.m, other.modulus)
        )

    def __hash__(self):
        return hash(("ext", self.p, self.m, self.modulus))

    def __reduce__(self):
        return (ExtField, (self.p, self.m, self.modulus))

    @property
    def characteristic(self) -> int:
        return self.p

    @property
    def degree(self) -> int:
        return self.m

    def _build_tables(self):
        p, m, Q = self.p, self.m, self.order
        codes = np.arange(Q, dtype=np.int64)
        self._place = p ** np.arange(m, dtype=np.int64)
        self.digits = (codes[:, None] // self._place[None, :]) % p
        self.digits.setflags(write=False)
        # discrete log tables from a primitive element
        for g in range(1, Q):
            powers = [1]
            x = g
            while x != 1:
                powers.append(x)
                x = self._mul_slow(x, g)
            if len(powers) == Q - 1:
                break
        self.exp = np.array(powers + powers, dtype=np.int64)
        self.log = np.zeros(Q, dtype=np.int64)
        self.log[np.array(powers, dtype=np.int64)] = np.arange(Q - 1)
        self.generator = powers[1] if Q > 2 else 1

    def _mul_slow(self, a: int, b: int) -> int:
        p, m = self.p, self.m
        da = [(a // p**i) % p for i in range(m)]
        db = [(b // p**i) % p for i in range(m)]
        prod = [0] * (2 * m - 1)
        for i, x in enumerate(da):
            if x:
                for j, y in enumerate(db):
                    prod[i + j] = (prod[i + j] + x * y) % p
        for deg in range(2 * m - 2, m - 1, -1):
            c = prod[deg]
            if c:
                for i in range(m + 1):
                    prod[deg - m + i] = (prod[deg - m + i] - c * self.modulus[i]) % p
        return sum(prod[i] * p**i for i in range(m))

    def encode(self, coeffs) -> np.ndarray:
        """Codes from coefficient arrays with last axis of length m."""
        return (np.asarray(coeffs, dtype=np.int64) % self.p) @ self._place

    @cached_property
    def _add_table(self) -> np.ndarray | None:
        if self.order > TABLE_ORDER:
            return None
        x = np.arange(self.order)
        return self.encode(self.digits[x][:, None, :] + self.digits[x][None, :, :])

    @cached_property
    def _mul_table(self) -> np.ndarray | None:
        if self.order > TABLE_ORDER:
            return None
        x = np.arange(self.order)
        out = self.exp[self.log[x][:, None] + self.log[x][None, :]]
        out[0, :] = out[:, 0] = 0
        return out

    def add(self, a, b):
        a = np.asarray(a, dtype=np.int64)
        if self.p == 2:
            return a ^ b
        if self._add_table is not None:
            return self._add_table[a, b]
        return self.encode(self.digits[a] + self.digits[b])

    def sub(self, a, b):
        a = np.asarray(a, dtype=np.int64)
        if self.p == 2:
            return a ^ b
        if self._add_table is not None:
            return self._add_table[a, self.neg(b)]
        return self.encode(self.digits[a] - self.digits[b])

    def neg(self, a):
        a = np.asarray(a, dtype=np.int64)
        if self.p == 2:
            return a
        return self.encode(-self.digits[a])

    def mul(self, a, b):
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if self._mul_table is not None:
            return self._mul_table[a, b]
        out = self.exp[self.log[a] + self.log[b]]
        return np.where((a == 0) | (b == 0), 0, out)

    def inv(self, a):
        a = np.asarray(a, dtype=np.int64)
        if np.any(a == 0):
            raise ZeroDivisionError("inverse of zero in " + repr(self))
        return self.exp[(self.order - 1 - self.log[a]) % (self.order - 1)]

    def power(self, a, e: int) -> int:
        a = int(a)
        if a == 0:
            return 1 if e == 0 else 0
        return int(self.exp[(int(self.log[a]) * e) % (self.order - 1)])

    def frobenius_codes(self, a, times: int = 1):
        """Elementwise ``a -> a^(p^times)`` on an array of codes."""
        a = np.asarray(a, dtype=np.int64)
        e = self.p**times % (self.order - 1) if self.order > 2 else 1
        out = self.exp[(self.log[a] * e) % (self.order - 1)]
        return np.where(a == 0, 0, out)

    def trace_codes(self, a):
        """Absolute trace to GF(p) on an array of codes; results are residues."""
        a = np.asarray(a, dtype=np.int64)
        acc = np.zeros_like(a)
        for i in range(self.m):
            acc = self.add(acc, self.frobenius_codes(a, i))
        # constants have code equal to their residue
        return acc

    def elements(self) -> range:
        return range(self.order)

    def __call__(self, x) -> FieldElement:
        if isinstance(x, (list, tuple, np.ndarray)):
            if len(x) != self.m:
                raise ValueError(f"expected {self.m} coefficients")
            return FieldElement(self, int(self.encode(x)))
        return FieldElement(self, int(x) % self.p)

    @property
    def alpha(self) -> FieldElement:
        """The class of the indeterminate."""
        return FieldElement(self, self.p if self.m > 1 else int((-self.modulus[0]) % self.p))


Field = Union[PrimeField, ExtField]


def GF(q: int, modulus: Sequence[int] | None = None) -> Field:
    """Field of order q (prime or prime power); prime powers use a default modulus."""
    for p in range(2, q + 1):
        if q % p == 0:
            break
    else:
        raise ValueError(f"invalid field order {q}")
    m = 0
    r = q
    while r % p == 0:
        r //= p
        m += 1
    if r != 1 or not is_prime(p):
        raise ValueError(f"{q} is not a prime power")
    if m == 1 and modulus is None:
        return PrimeField(p)
    return ExtField(p, m, modulus)


def _polydivmod_remainder(f: Sequence[int], g: Sequence[int], p: int) -> list[int]:
    r = list(f)
    dg = len(g) - 1
    inv_lead = pow(g[-1], p - 2, p)
    for deg in range(len(r) - 1, dg - 1, -1):
        c = r[deg] * inv_lead % p
        if c:
            for i in range(dg + 1):
                r[deg - dg + i] = (r[deg - dg + i] - c * g[i]) % p
    return r[:dg]


def find_factor(modulus: Sequence[int], p: int) -> tuple[int, ...] | None:
    """First monic factor of degree 1..deg/2 found by exhaustive trial division."""
    m = len(modulus) - 1
    for d in range(1, m // 2 + 1):
        for tail in itertools.product(range(p), repeat=d):
            g = tuple(tail) + (1,)
            if not any(_polydivmod_remainder(modulus, g, p)):
                return g
    return None


def first_irreducible(p: int, m: int) -> tuple[int, ...]:
    for tail in itertools.product(range(p), repeat=m):
        f = tuple(reversed(tail)) + (1,)
        if f[0] != 0 or m == 1:
            if find_factor(f, p) is None:
                return f
    raise AssertionError("unreachable: irreducible polynomials exist in every degree")


@dataclass(frozen=True)
class FieldElement:
    field: Field
    code: int

    def _check(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise FieldMismatch(f"{self.field!r} vs {other.field!r}")
            return other.code
        if isinstance(other, (int, np.integer)):
            return int(other) % self.field.characteristic
        return NotImplemented

    def _wrap(self, code) -> FieldElement:
        return FieldElement(self.field, int(code))

    def __add__(self, other):
        c = self._check(other)
        return NotImplemented if c is NotImplemented else self._wrap(self.field.add(self.code, c))

    __radd__ = __add__

    def __sub__(self, other):
        c = self._check(other)
        return NotImplemented if c is NotImplemented else self._wrap(self.field.sub(self.code, c))

    def __rsub__(self, other):
        c = self._check(other)
        return NotImplemented if c is NotImplemented else self._wrap(self.field.sub(c, self.code))

    def __neg__(self):
        return self._wrap(self.field.neg(self.code))

    def __mul__(self, other):
        c = self._check(other)
        return NotImplemented if c is NotImplemented else self._wrap(self.field.mul(self.code, c))

    __rmul__ = __mul__

    def __truediv__(self, other):
        c = self._check(other)
        if c is NotImplemented:
            return NotImplemented
        if c == 0:
            raise ZeroDivisionError("division by zero field element")
        return self._wrap(self.field.mul(self.code, self.field.inv(c)))

    def __pow__(self, e: int):
        if e < 0:
            return (FieldElement(self.field, 1) / self) ** (-e)
        return self._wrap(self.field.power(self.code, e))

    def __bool__(self):
        return self.code != 0

    @property
    def coeffs(self) -> tuple[int, ...]:
        if isinstance(self.field, PrimeField):
            return (self.code,)
        return tuple(int(c) for c in self.field.digits[self.code])

    def __repr__(self):
        if isinstance(self.field, PrimeField):
            return f"{self.code} in {self.field!r}"
        terms = []
        for i, c in enumerate(self.coeffs):
            if c:
                mono = "1" if i == 0 else ("a" if i == 1 else f"a^{i}")
                terms.append(mono if c == 1 else f"{c}*{mono}")
        return " + ".join(terms) or "0"


def field_arith(a: FieldElement, b: FieldElement, op: str) -> FieldElement:
    """Binary arithmetic by name: one of ``add``, ``sub``, ``mul``, ``div``."""
    if a.field != b.field:
        raise FieldMismatch(f"{a.field!r} vs {b.field!r}")
    ops = {"add": a.__add__, "sub": a.__sub__, "mul": a.__mul__, "div": a.__truediv__}
    if op not in ops:
        raise ValueError(f"unknown op {op!r}")
    return ops[op](b)


def trace(x: FieldElement, sub: Field) -> FieldElement:
    """Relative trace of x down to the subfield ``sub``."""
    F = x.field
    if sub == F:
        return x
    if isinstance(F, ExtField) and sub == F.prime:
        return FieldElement(sub, int(F.trace_codes(x.code)))
    raise FieldMismatch(f"{sub!r} is not a subfield of {F!r}")


def frobenius(x: FieldElement) -> FieldElement:
    """x -> x^p, the generator of Gal(GF(p^m)/GF(p))."""
    if isinstance(x.field, PrimeField):
        return x
    return FieldElement(x.field, int(x.field.frobenius_codes(x.code)))


@dataclass(frozen=True)
class FieldBasis:
    """An ordered basis of GF(p^m) over GF(p), stored as element codes."""

    field: ExtField
    elements: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "elements", tuple(int(e) for e in self.elements))
        if len(self.elements) != self.field.m:
            raise ValueError(f"a basis needs {self.field.m} elements")
        _, piv = rref_modp(self.matrix, self.field.p)
        if len(piv) != self.field.m:
            raise ValueError("basis elements are linearly dependent over the prime field")

    @classmethod
    def of(cls, field: ExtField, elements: Iterable) -> FieldBasis:
        codes = [e.code if isinstance(e, FieldElement) else e for e in elements]
        return cls(field, tuple(codes))

    @classmethod
    def power(cls, field: ExtField) -> FieldBasis:
        """{1, a, ..., a^(m-1)}."""
        return cls(field, tuple(field.p**i for i in range(field.m)))

    @property
    def matrix(self) -> np.ndarray:
        """Rows are the coefficient vectors of the basis elements."""
        return self.field.digits[list(self.elements)]

    @cached_property
    def _coord_matrix(self) -> np.ndarray:
        return inverse_modp(self.matrix, self.field.p)

    def coordinates(self, codes) -> np.ndarray:
        """Coordinates in this basis; appends a trailing axis of length m."""
        d = self.field.digits[np.asarray(codes, dtype=np.int64)]
        return (d @ self._coord_matrix) % self.field.p

    def combine(self, coords) -> np.ndarray:
        """Inverse of :meth:`coordinates`."""
        c = np.asarray(coords, dtype=np.int64)
        return self.field.encode(c @ self.matrix)

    def __iter__(self):
        return (FieldElement(self.field, e) for e in self.elements)


def inverse_modp(M, p: int) -> np.ndarray:
    M = np.asarray(M, dtype=np.int64)
    n = M.shape[0]
    R, piv = rref_modp(np.hstack([M, np.eye(n, dtype=np.int64)]), p)
    if piv[:n] != list(range(n)):
        raise ZeroDivisionError("singular matrix")
    return R[:, n:]


def orthogonal_basis(gamma: FieldBasis) -> FieldBasis:
    """The basis dual to ``gamma`` under the trace form tr(xy)."""
    F = gamma.field
    power = [F.p**k for k in range(F.m)]
    T = np.array(
        [[int(F.trace_codes(F.mul(g, b))) for b in power] for g in gamma.elements],
        dtype=np.int64,
    )
    coeffs = inverse_modp(T, F.p).T
    return FieldBasis(F, tuple(int(c) for c in F.encode(coeffs)))


def all_bases(field: ExtField):
    """Every ordered basis of the field over its prime field."""
    from .linalg import enumerate_gl

    for G in enumerate_gl(field.m, field.prime):
        yield FieldBasis(field, tuple(int(c) for c in field.encode(G)))
