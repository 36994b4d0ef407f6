from itertools import product

import numpy as np
import pytest
from hypothesis import given, strategies as st

from quandle_homotopy.abelian import (AbelianGroupClass as G, InfinitePart, NotASummand,
                                      exterior_square, split_complement)
from quandle_homotopy.snf import smith_normal_form


def test_canonical_form():
    assert G.from_diagonal(0, [2, 3]) == G(0, (6,))
    assert G.from_diagonal(0, [3, 9, 3]) == G(0, (3, 3, 9))
    assert G(0, (3, 1)).torsion == (3,)


@pytest.mark.parametrize("text,rank,torsion", [
    ("0", 0, ()), ("Z", 1, ()), ("Z^2+Z3+Z9", 2, (3, 9)), ("(Z3)^3", 0, (3, 3, 3)),
    ("Z + (Z3)^2", 1, (3, 3)), ("Z/5", 0, (5,)),
])
def test_parse(text, rank, torsion):
    g = G.parse(text)
    assert (g.rank, g.torsion) == (rank, torsion)


def test_str_round_trip():
    for text in ["0", "Z", "Z^3", "Z3", "(Z3)^3", "Z + Z3 + Z9", "Z^2 + (Z3)^2 + Z27"]:
        assert str(G.parse(text)) == text


def test_order_and_tensor():
    g = G.parse("Z3+Z9")
    assert g.order == 27 and g.dim_tensor_Fp(3) == 2 and g.dim_tensor_Fp(5) == 0
    with pytest.raises(InfinitePart):
        G.parse("Z").order


def exterior_square_brute(g: G) -> G:
    """Presentation of the exterior square: generators e_i ^ e_j (i < j), relations d_i e_i ^ e_j."""
    d = list(g.torsion)
    pairs = [(i, j) for i in range(len(d)) for j in range(i + 1, len(d))]
    if not pairs:
        return G()
    rows = []
    for k, (i, j) in enumerate(pairs):
        for m in (d[i], d[j]):
            r = [0] * len(pairs)
            r[k] = m
            rows.append(r)
    res = smith_normal_form(np.array(rows))
    return G.from_diagonal(len(pairs) - res.rank, res.torsion)


@pytest.mark.parametrize("text,expected", [("Z3", "0"), ("Z3+Z3", "Z3"), ("Z3+Z9", "Z3"),
                                           ("(Z3)^3", "(Z3)^3"), ("Z2+Z4+Z8", "(Z2)^2+Z4")])
def test_exterior_square(text, expected):
    g = G.parse(text)
    assert exterior_square(g) == G.parse(expected)
    assert exterior_square(g) == exterior_square_brute(g)


@given(st.lists(st.sampled_from([2, 3, 4, 5, 9, 27, 25]), max_size=4))
def test_exterior_square_property(orders):
    g = G.from_diagonal(0, orders)
    assert exterior_square(g) == exterior_square_brute(g)


def test_exterior_square_needs_finite():
    with pytest.raises(InfinitePart):
        exterior_square(G.parse("Z+Z3"))


def test_split_complement():
    assert split_complement(G.parse("(Z3)^3"), G()) == G.parse("(Z3)^3")
    assert split_complement(G.parse("Z3+Z9"), G.parse("Z3")) == G.parse("Z9")
    with pytest.raises(NotASummand):
        split_complement(G.parse("Z5"), G.parse("Z3"))
    with pytest.raises(NotASummand):
        split_complement(G.parse("Z9"), G.parse("Z3"))


@given(st.lists(st.sampled_from([2, 3, 4, 9, 5]), max_size=4),
       st.lists(st.sampled_from([2, 3, 4, 9, 5]), max_size=3))
def test_split_complement_inverts_sum(a, b):
    A, B = G.from_diagonal(0, a), G.from_diagonal(0, b)
    assert split_complement(A + B, B) == A


@given(st.lists(st.integers(1, 500), max_size=6))
def test_invariant_factors_match_prime_by_prime_form(diag):
    from quandle_homotopy.abelian import _elementary, _from_elementary, invariant_factors
    got = invariant_factors(diag)
    assert all(b % a == 0 for a, b in zip(got, got[1:]))
    assert got == tuple(d for d in _from_elementary(_elementary(diag)) if d > 1)
