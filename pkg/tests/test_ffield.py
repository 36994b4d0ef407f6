from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from quandle_homotopy.ffield import (CompositeP, DivisionByZero, ReducibleModulus, ZeroElement,
                                     all_monic, default_modulus, field, is_irreducible,
                                     p_power_exponents, parse_field)


def brute_irreducible(f, p):
    """No monic factor of degree 1..deg/2 divides f (trial division over all monics)."""
    deg = len(f) - 1
    for d in range(1, deg // 2 + 1):
        for g in all_monic(p, d):
            r = list(f)
            for i in range(deg - d, -1, -1):
                c = r[i + d]
                for j in range(d + 1):
                    r[i + j] = (r[i + j] - c * g[j]) % p
            if not any(r[:d]):
                return False
    return True


def test_prime_field_modulus():
    F = field(3, 1)
    assert F.modulus == (0, 1) and F.q == 3


def test_default_moduli():
    assert field(3, 2).modulus == (1, 0, 1)  # t^2 + 1
    assert field(2, 3).modulus == (1, 1, 0, 1)  # t^3 + t + 1


@pytest.mark.parametrize("p,h", [(2, 2), (2, 3), (2, 4), (3, 2), (3, 3), (5, 2), (7, 2)])
def test_default_is_first_irreducible_in_enumeration(p, h):
    first = next(f for f in all_monic(p, h) if brute_irreducible(f, p))
    assert tuple(first) == default_modulus(p, h)


@pytest.mark.parametrize("p,h", [(2, 3), (3, 2), (3, 3), (5, 2)])
def test_irreducibility_matches_trial_division(p, h):
    for f in all_monic(p, h):
        assert is_irreducible(f, p) == brute_irreducible(f, p)


def test_errors():
    with pytest.raises(CompositeP):
        field(4, 1)
    with pytest.raises(ReducibleModulus):
        field(3, 2, "t^2+2")  # (t+1)(t+2)
    F = field(5)
    with pytest.raises(DivisionByZero):
        F.inv(0)
    with pytest.raises(ZeroElement):
        F.element_order(0)


def test_small_arithmetic():
    F3 = field(3)
    assert F3.add(2, 2) == 1
    F9 = field(3, 2)
    t = F9.generator_t
    assert F9.mul(t, t) == F9.neg(1) == 2
    assert field(5).inv(2) == 3


def test_element_orders():
    for p in (3, 5, 7, 11):
        F = field(p)
        assert F.element_order(F.neg(1)) == 2
    assert field(3, 2).element_order(field(3, 2).parse("t")) == 4
    assert field(7).element_order(2) == 3


def test_p_power_exponents():
    assert p_power_exponents(field(3, 2)) == [1, 3]
    assert p_power_exponents(field(3, 3)) == [1, 3, 9]
    assert p_power_exponents(field(5)) == [1]


def test_text_round_trip():
    F = parse_field("gf:3^2:t^2+1")
    assert str(F) == "gf:3^2:t^2+1"
    for c in F.elements():
        assert F.parse(F.format(c)) == c
    assert F.parse("-1") == 2


def test_tables_agree_with_scalar_ops():
    F = field(3, 2)
    for a, b in product(F.elements(), repeat=2):
        assert F.add_table[a, b] == F.add(a, b)
        assert F.mul_table[a, b] == F.mul(a, b)


FIELDS = [field(2, 3), field(3, 2), field(3, 3), field(5, 2), field(7)]


@settings(max_examples=200, deadline=None)
@given(st.sampled_from(FIELDS), st.data())
def test_field_axioms(F, data):
    a, b, c = (data.draw(st.integers(0, F.q - 1)) for _ in range(3))
    assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
    assert F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c))
    assert F.add(a, F.neg(a)) == 0
    if a:
        assert F.mul(a, F.inv(a)) == 1
        assert F.pow(a, F.q - 1) == 1
        assert (F.q - 1) % F.element_order(a) == 0


@settings(max_examples=50, deadline=None)
@given(st.sampled_from(FIELDS), st.data())
def test_frobenius_is_additive(F, data):
    a, b = (data.draw(st.integers(0, F.q - 1)) for _ in range(2))
    p = F.p
    assert F.pow(F.add(a, b), p) == F.add(F.pow(a, p), F.pow(b, p))


def test_field_element_wrapper():
    F = field(3, 2)
    t = F.element("t")
    assert str(t * t) == "2"
    assert (t + 1) * (t - 1) == t * t - 1
    assert t.inverse() * t == F.element(1)
    assert t.order() == 4
