from __future__ import annotations

import itertools

import numpy as np
import pytest

from oracle import poly_mulmod
from rml.errors import FieldMismatch, NotIrreducible
from rml.fields import (
    GF,
    DEFAULT_MODULI,
    ExtField,
    FieldBasis,
    FieldElement,
    PrimeField,
    all_bases,
    field_arith,
    find_factor,
    first_irreducible,
    frobenius,
    orthogonal_basis,
    trace,
)

EXT = [(2, 2), (2, 3), (2, 4), (3, 2), (3, 3), (5, 2)]


@pytest.mark.parametrize("p,m", EXT)
def test_multiplication_matches_polynomial_oracle(p, m):
    F = ExtField(p, m)
    a, b = np.meshgrid(np.arange(F.order), np.arange(F.order), indexing="ij")
    got = F.mul(a, b)
    for x, y in itertools.product(range(F.order), repeat=2):
        want = poly_mulmod(list(F.digits[x]), list(F.digits[y]), F.modulus, p)
        assert list(F.digits[got[x, y]]) == want


@pytest.mark.parametrize("p,m", EXT)
def test_field_axioms(p, m):
    F = ExtField(p, m)
    x = np.arange(F.order)
    nz = x[1:]
    assert np.all(F.mul(nz, F.inv(nz)) == 1)
    assert np.all(F.add(x, F.neg(x)) == 0)
    assert np.all(F.sub(F.add(x[:, None], x[None, :]), x[None, :]) == x[:, None])
    # distributivity on every triple
    a, b, c = np.meshgrid(x, x, x, indexing="ij")
    assert np.array_equal(F.mul(a, F.add(b, c)), F.add(F.mul(a, b), F.mul(a, c)))


def test_default_moduli_are_the_shipped_ones():
    assert DEFAULT_MODULI[(2, 3)] == (1, 1, 0, 1)
    assert ExtField(2, 3).modulus == (1, 1, 0, 1)
    assert ExtField(3, 2).modulus == (2, 2, 1)


@pytest.mark.parametrize("p,m", EXT)
def test_default_modulus_irreducible(p, m):
    assert find_factor(ExtField(p, m).modulus, p) is None
    assert find_factor(first_irreducible(p, m), p) is None


def test_reducible_modulus_names_its_factor():
    # x^4 + x^2 + 1 = (x^2 + x + 1)^2 over GF(2)
    with pytest.raises(NotIrreducible) as e:
        ExtField(2, 4, (1, 0, 1, 0, 1))
    assert e.value.factor == (1, 1, 1)
    assert "[1, 1, 1]" in str(e.value)
    # x^2 + 2 = (x + 1)(x + 2) over GF(3); x^2 + 1 has no root mod 3
    with pytest.raises(NotIrreducible) as e:
        ExtField(3, 2, (2, 0, 1))
    assert e.value.factor == (1, 1)
    assert ExtField(3, 2, (1, 0, 1)).order == 9


def test_gf_dispatch():
    assert GF(7) == PrimeField(7)
    assert GF(8) == ExtField(2, 3)
    with pytest.raises(ValueError):
        GF(12)
    with pytest.raises(ValueError):
        PrimeField(4)


@pytest.mark.parametrize("p,m", EXT)
def test_frobenius_is_an_automorphism_of_order_m(p, m):
    F = ExtField(p, m)
    x = np.arange(F.order)
    phi = F.frobenius_codes(x)
    assert sorted(phi.tolist()) == x.tolist()
    assert np.array_equal(phi[:p], x[:p])
    y = x
    for _ in range(m):
        y = F.frobenius_codes(y)
    assert np.array_equal(y, x)


@pytest.mark.parametrize("p,m", EXT)
def test_trace_is_sum_of_conjugates(p, m):
    F = ExtField(p, m)
    for c in range(F.order):
        total, y = 0, c
        for _ in range(m):
            total = int(F.add(total, y))
            y = int(F.frobenius_codes(y))
        assert int(F.trace_codes(c)) == total < p


def test_orthogonal_basis_of_power_basis_gf8():
    F = ExtField(2, 3)
    a = F.p  # code of the generator a
    a2 = int(F.mul(a, a))
    dual = orthogonal_basis(FieldBasis.power(F))
    assert dual.elements == (1, a2, a)


@pytest.mark.parametrize("p,m", [(2, 2), (2, 3), (3, 2)])
def test_orthogonal_basis_is_dual_and_involutive(p, m):
    F = ExtField(p, m)
    for G in itertools.islice(all_bases(F), 40):
        H = orthogonal_basis(G)
        T = [[int(F.trace_codes(F.mul(g, h))) for h in H.elements] for g in G.elements]
        assert T == np.eye(m, dtype=int).tolist()
        assert orthogonal_basis(H) == G


def test_number_of_bases():
    # |GL_m(F_p)| ordered bases
    assert sum(1 for _ in all_bases(ExtField(2, 3))) == 168
    assert sum(1 for _ in all_bases(ExtField(3, 2))) == 48


def test_coordinates_round_trip():
    F = ExtField(3, 3)
    G = next(itertools.islice(all_bases(F), 17, None))
    codes = np.arange(F.order)
    assert np.array_equal(G.combine(G.coordinates(codes)), codes)


def test_dependent_basis_rejected():
    F = ExtField(2, 3)
    with pytest.raises(ValueError):
        FieldBasis(F, (1, 2, 3))


def test_element_wrapper():
    F = ExtField(2, 3)
    a = FieldElement(F, 2)
    assert a**7 == FieldElement(F, 1)
    assert (a * a + a) / a == a + 1
    assert frobenius(a) == a * a
    assert trace(a, F.prime).code == 0
    assert repr(a**3) == "1 + a"
    assert field_arith(a, a, "add").code == 0
    with pytest.raises(FieldMismatch):
        a + FieldElement(ExtField(2, 2), 1)
    with pytest.raises(ZeroDivisionError):
        a / 0
