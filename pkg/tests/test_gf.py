import itertools

import pytest
from sympy.polys.domains import ZZ
from sympy.polys.galoistools import gf_add, gf_mul, gf_rem

from mubkit.gf import (
    FieldElement,
    GFError,
    add,
    enumerate_field,
    galois_field,
    inv,
    is_irreducible,
    mul,
    prime_power,
    trace_to_prime,
)

ORDERS = [2, 3, 4, 5, 7, 8, 9, 11, 13, 16]


def test_inverse_gf3():
    gf = galois_field(3)
    assert inv(gf(2)).value == 2


def test_x_squared_gf4():
    gf = galois_field(4)
    x = gf([1, 0])
    assert mul(x, x).coeffs == (1, 1)


def test_add_gf5():
    gf = galois_field(5)
    assert add(gf(3), gf(4)).value == 2


def test_inverse_of_zero():
    with pytest.raises(ZeroDivisionError):
        galois_field(7)(0).inv()


def test_mixed_fields():
    with pytest.raises(GFError):
        galois_field(5)(1) + galois_field(7)(1)


def test_trace_examples():
    assert trace_to_prime(galois_field(3)(2)) == 2
    assert trace_to_prime(galois_field(9)([1, 0])) == 0
    assert trace_to_prime(galois_field(4).one) == 0


def test_enumerate():
    assert [e.value for e in enumerate_field(galois_field(2))] == [0, 1]
    e4 = enumerate_field(galois_field(4))
    assert len({e.coeffs for e in e4}) == 4
    e9 = enumerate_field(galois_field(9))
    assert e9[0].value == 0
    assert all((a - b).value != 0 for a, b in itertools.permutations(e9, 2))
    assert [e.coeffs for e in e9] == sorted(e.coeffs for e in e9)


def test_default_moduli():
    assert galois_field(4).modulus == (1, 1, 1)
    assert galois_field(8).modulus == (1, 0, 1, 1)
    assert galois_field(9).modulus == (1, 0, 1)


def test_modulus_override_and_reducible_rejected():
    gf = galois_field(8, modulus=[1, 1, 0, 1])
    assert gf.modulus == (1, 1, 0, 1)
    with pytest.raises(GFError):
        galois_field(9, modulus=[1, 0, 2])  # x^2 + 2 = (x + 1)(x + 2) over F_3
    with pytest.raises(GFError):
        galois_field(9, moduli={9: [1, 1]})


@pytest.mark.parametrize("q", [6, 10, 12, 1])
def test_not_prime_power(q):
    assert prime_power(q) is None
    with pytest.raises(GFError):
        galois_field(q)


def test_irreducibility_matches_root_count_for_degree_two_and_three():
    # a degree 2/3 polynomial is reducible iff it has a root
    for p in (2, 3, 5):
        for k in (2, 3):
            for tail in itertools.product(range(p), repeat=k):
                poly = (1,) + tail
                has_root = any(sum(c * x ** (k - i) for i, c in enumerate(poly)) % p == 0 for x in range(p))
                assert is_irreducible(poly, p) == (not has_root)


def _value(desc, p):
    v = 0
    for c in desc:
        v = v * p + int(c) % p
    return v


@pytest.mark.parametrize("q", [4, 8, 9, 16, 25, 27])
def test_arithmetic_matches_sympy_reduction(q):
    gf = galois_field(q)
    p = gf.p
    mod = [ZZ(c) for c in gf.modulus]
    for a, b in itertools.product(gf.enumerate(), repeat=2):
        pa, pb = [ZZ(c) for c in a.coeffs], [ZZ(c) for c in b.coeffs]
        assert (a * b).value == _value(gf_rem(gf_mul(pa, pb, p, ZZ), mod, p, ZZ), p)
        assert (a + b).value == _value(gf_add(pa, pb, p, ZZ), p)


@pytest.mark.parametrize("q", ORDERS)
def test_multiplicative_group_latin(q):
    gf = galois_field(q)
    table = gf.mul_table[1:, 1:]
    for row in table:
        assert sorted(row) == list(range(1, q))
    for col in table.T:
        assert sorted(col) == list(range(1, q))


@pytest.mark.parametrize("q", ORDERS)
def test_field_axioms(q):
    gf = galois_field(q)
    els = gf.enumerate()
    for a in els:
        if a:
            assert a * a.inv() == gf.one
        assert a + (-a) == gf.zero
    for a, b, c in itertools.product(els[: min(q, 9)], repeat=3):
        assert a * (b + c) == a * b + a * c
        assert (a * b) * c == a * (b * c)


@pytest.mark.parametrize("q", ORDERS)
def test_frobenius_is_a_field_map(q):
    gf = galois_field(q)
    p = gf.p
    for a, b in itertools.product(gf.enumerate(), repeat=2):
        assert (a + b) ** p == a**p + b**p
        assert (a * b) ** p == a**p * b**p


@pytest.mark.parametrize("q", ORDERS)
def test_trace_additive_and_balanced(q):
    gf = galois_field(q)
    els = gf.enumerate()
    for a, b in itertools.product(els, repeat=2):
        assert (a + b).trace() == (a.trace() + b.trace()) % gf.p
    counts = [0] * gf.p
    for a in els:
        counts[a.trace()] += 1
    assert counts == [q // gf.p] * gf.p


def test_trace_gf9_bruteforce():
    # x + x^3 with x^2 = -1: x^3 = -x, so the sum is 0
    gf = galois_field(9)
    x = gf([1, 0])
    assert (x + x**3).value == 0
