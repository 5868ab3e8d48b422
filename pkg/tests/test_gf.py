import itertools

import pytest
from hypothesis import given, settings, strategies as st

from qmatcount.errors import DivisionByZero, EvenCharacteristic, NotAPrimePower, ZeroArgument
from qmatcount.gf import (Character, arith, factor_prime_power, is_irreducible, least_irreducible,
                          legendre_symbol, make_field)

SMALL_Q = [2, 3, 4, 5, 7, 8, 9, 11, 13, 16]


def test_make_field_examples():
    f9 = make_field(9)
    assert (f9.p, f9.e) == (3, 2)
    assert (make_field(7).p, make_field(7).e) == (7, 1)
    with pytest.raises(NotAPrimePower):
        make_field(6)
    with pytest.raises(NotAPrimePower):
        make_field(1)


def test_factor_prime_power():
    assert factor_prime_power(32) == (2, 5)
    assert factor_prime_power(49) == (7, 2)
    with pytest.raises(NotAPrimePower):
        factor_prime_power(12)


def test_arith_examples():
    assert arith(make_field(5), "mul", 3, 4) == 2
    f4 = make_field(4)
    assert all(arith(f4, "add", x, x) == 0 for x in range(4))
    assert arith(make_field(7), "inv", 3) == 5
    with pytest.raises(DivisionByZero):
        arith(make_field(7), "inv", 0)


@pytest.mark.parametrize("p,e", [(2, 2), (2, 3), (2, 4), (3, 2), (5, 2), (3, 3)])
def test_modulus_is_least_irreducible(p, e):
    mod = least_irreducible(p, e)
    assert is_irreducible(mod, p)
    # nothing lexicographically smaller is irreducible
    for tail in itertools.product(range(p), repeat=e):
        cand = tuple(reversed(tail)) + (1,)
        if tuple(reversed(cand[:-1])) >= tuple(reversed(mod[:-1])):
            continue
        assert not is_irreducible(cand, p)


@pytest.mark.parametrize("q", SMALL_Q)
def test_field_axioms_exhaustive(q):
    f = make_field(q)
    els = range(q)
    for x in els:
        assert f.add(x, 0) == x and f.mul(x, 1) == x
        assert f.add(x, f.neg(x)) == 0
        if x:
            assert f.mul(x, f.inv(x)) == 1
        for y in els:
            assert f.add(x, y) == f.add(y, x)
            assert f.mul(x, y) == f.mul(y, x)
            for z in els:
                assert f.mul(x, f.add(y, z)) == f.add(f.mul(x, y), f.mul(x, z))
                assert f.add(f.add(x, y), z) == f.add(x, f.add(y, z))
                assert f.mul(f.mul(x, y), z) == f.mul(x, f.mul(y, z))


def test_legendre_examples():
    assert legendre_symbol(make_field(5), 4) is Character.PLUS
    assert legendre_symbol(make_field(3), 2) is Character.MINUS
    f9 = make_field(9)
    z = next(x for x in range(1, 9) if f9.power(x, 4) == f9.minus_one)
    assert legendre_symbol(f9, z) is Character.MINUS
    with pytest.raises(EvenCharacteristic):
        legendre_symbol(make_field(4), 1)
    with pytest.raises(ZeroArgument):
        legendre_symbol(make_field(5), 0)


@pytest.mark.parametrize("q", [3, 5, 7, 9, 11, 13, 25, 27, 49])
def test_legendre_multiplicative_and_balanced(q):
    f = make_field(q)
    chars = {x: legendre_symbol(f, x) for x in range(1, q)}
    assert sum(1 for c in chars.values() if c is Character.PLUS) == (q - 1) // 2
    squares = {f.mul(y, y) for y in range(1, q)}
    for x in range(1, q):
        assert (chars[x] is Character.PLUS) == (x in squares)
        assert chars[x] * chars[f.inv(x)] is Character.PLUS
        for y in range(1, q):
            assert chars[f.mul(x, y)] == chars[x] * chars[y]


@settings(max_examples=200, deadline=None)
@given(st.sampled_from([27, 32, 81, 121, 125, 128, 243]), st.data())
def test_field_axioms_random_large(q, data):
    f = make_field(q)
    x, y, z = (data.draw(st.integers(0, q - 1)) for _ in range(3))
    assert f.mul(x, f.add(y, z)) == f.add(f.mul(x, y), f.mul(x, z))
    assert f.mul(f.mul(x, y), z) == f.mul(x, f.mul(y, z))
    if x:
        assert f.mul(x, f.inv(x)) == 1


def test_character_group():
    P, M = Character.PLUS, Character.MINUS
    assert P * P is P and P * M is M and M * M is P
    assert Character.parse("-") is M and Character.parse(1) is P
    assert str(P) == "+"
