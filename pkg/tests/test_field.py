import itertools
import random

import pytest

from fqdigraph.errors import BadModulus, DivisionByZero, IndexOutOfRange, NotADivisor, NotPrime
from fqdigraph.field import GF, FieldElem, arith, default_modulus, field_new, is_irreducible

SMALL = [(2, 1), (3, 1), (2, 2), (5, 1), (7, 1), (2, 3), (3, 2), (2, 4), (5, 2)]


def brute_order(F, a):
    k, x = 1, a
    while x != 1:
        x = F.mul(x, a)
        k += 1
    return k


def test_prime_field_modulus_is_x():
    F = field_new(5, 1)
    assert F.q == 5
    assert F.modulus == (0, 1)


def test_golden_field_modulus(f25):
    assert f25.modulus == (2, 4, 1)
    assert f25.q == 25


def test_composite_characteristic():
    with pytest.raises(NotPrime):
        GF(4, 1)


@pytest.mark.parametrize(
    "modulus",
    # wrong degree, not monic, (X+2)(X+3), (X+3)^2
    [[1, 1], [2, 4, 2], [1, 0, 1], [4, 1, 1]],
)
def test_bad_modulus(modulus):
    with pytest.raises(BadModulus):
        GF(5, 2, modulus)


def test_irreducibility_matches_root_search():
    # degree 2 and 3 polynomials are irreducible iff they have no root
    for p in (2, 3, 5):
        for deg in (2, 3):
            for low in itertools.product(range(p), repeat=deg):
                poly = list(low) + [1]
                has_root = any(sum(c * x**i for i, c in enumerate(poly)) % p == 0 for x in range(p))
                assert is_irreducible(poly, p) == (not has_root)


def test_default_modulus_is_smallest():
    assert default_modulus(2, 2) == (1, 1, 1)
    assert default_modulus(5, 2) == (1, 1, 1)
    assert default_modulus(3, 2) == (1, 0, 1)


def test_small_arith():
    F = GF(5)
    assert F.add(3, 4) == 2
    # X^2 = -4X - 2 = X + 3 modulo X^2 + 4X + 2
    E = GF(5, 2, [2, 4, 1])
    assert E.mul(5, 5) == E.index([3, 1])
    assert E.pow(5, 24) == 1


def test_division_by_zero():
    F = GF(3, 2)
    with pytest.raises(DivisionByZero):
        F.inv(0)
    with pytest.raises(DivisionByZero):
        F.div(4, 0)
    with pytest.raises(DivisionByZero):
        F.pow(0, -1)


def test_index_codec(f25):
    assert f25.index([3, 2]) == 13
    assert f25.coeffs(13) == (3, 2)
    assert f25.index([0, 0]) == 0
    assert all(f25.index(f25.coeffs(i)) == i for i in range(25))
    with pytest.raises(IndexOutOfRange):
        f25.coeffs(25)


@pytest.mark.parametrize("p,e", SMALL)
def test_field_axioms_exhaustive(p, e):
    F = GF(p, e)
    els = range(F.q)
    for a, b in itertools.product(els, repeat=2):
        assert F.add(a, b) == F.add(b, a)
        assert F.mul(a, b) == F.mul(b, a)
        assert F.sub(F.add(a, b), b) == a
    for a, b, c in itertools.product(els, repeat=3):
        assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
        assert F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c))
    for a in els:
        assert F.add(a, F.neg(a)) == 0
        assert F.pow(a, F.q) == a
        if a:
            assert F.mul(a, F.inv(a)) == 1
            assert F.pow(a, F.q - 1) == 1
            assert F.pow(a, -1) == F.inv(a)


@pytest.mark.parametrize("p,e", [(2, 6), (3, 4), (7, 2), (2, 8)])
def test_field_axioms_sampled(p, e):
    F = GF(p, e)
    rng = random.Random(p * 100 + e)
    for _ in range(300):
        a, b, c = (rng.randrange(F.q) for _ in range(3))
        assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
        assert F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c))
        if a:
            assert F.mul(a, F.inv(a)) == 1


def test_primitive_elements():
    assert GF(2).primitive_element == 1
    # orders in F_5^*: 1 -> 1, 2 -> 4
    assert brute_order(GF(5), 2) == 4
    assert GF(5).primitive_element == 2
    F4 = GF(2, 2)
    assert brute_order(F4, 2) == brute_order(F4, 3) == 3
    assert F4.primitive_element == 2


@pytest.mark.parametrize("p,e", SMALL + [(2, 6), (3, 3)])
def test_primitive_element_order(p, e):
    F = GF(p, e)
    g = F.primitive_element
    assert brute_order(F, g) == F.q - 1
    assert all(brute_order(F, a) < F.q - 1 for a in range(1, g))


def test_subfields():
    F16 = GF(2, 4)
    K = F16.subfield_elements(2)
    assert len(K) == 4
    assert all(F16.pow(x, 4) == x for x in K)
    assert F16.subfield_elements(4) == frozenset(range(16))
    F25 = GF(5, 2)
    assert F25.subfield_elements(1) == frozenset(range(5))
    with pytest.raises(NotADivisor):
        F16.subfield_elements(3)


@pytest.mark.parametrize("p,e", [(2, 4), (2, 6), (3, 2), (2, 2), (3, 3), (5, 2), (7, 2)])
def test_subfields_closed(p, e):
    F = GF(p, e)
    for e_i in (k for k in range(1, e + 1) if e % k == 0):
        K = F.subfield_elements(e_i)
        assert len(K) == p**e_i
        for a, b in itertools.product(K, repeat=2):
            assert F.add(a, b) in K
            assert F.mul(a, b) in K


@pytest.mark.parametrize("p,e", SMALL)
def test_dense_tables_match_scalar_ops(p, e):
    F = GF(p, e)
    for a in range(F.q):
        assert F.neg_array[a] == F.neg(a)
        for b in range(F.q):
            assert F.add_table[a, b] == F.add(a, b)
            assert F.sub_table[a, b] == F.sub(a, b)
            assert F.mul_table[a, b] == F.mul(a, b)


def test_field_elem_wrapper(f25):
    xi = f25.elem(5)
    assert (xi * xi).index == f25.index([3, 1])
    assert (xi ** 24).index == 1
    assert (xi - xi).index == 0
    assert (xi / xi).index == 1
    assert (xi + 1).coeffs == (1, 1)
    assert arith(f25, "mul", xi, xi) == xi * xi
    assert arith(f25, "add", 3, 4) == 2
    assert arith(f25, "pow", 5, -1) == f25.inv(5)
