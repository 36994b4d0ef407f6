import pytest

from quandle_homotopy.abelian import AbelianGroupClass as G, exterior_square
from quandle_homotopy.cache import ResultCache
from quandle_homotopy.fixtures import TABLE1
from quandle_homotopy.homotopy import (EvenOrderWithNonzeroH2, EvenP, HypothesisFailed,
                                       NotRegular, QuandleHomologyCache, dihedral_power_formula,
                                       pi2_BQ, pi2_BX, pi2_dim_mod_p, pi3Q, rational_ranks)


@pytest.mark.parametrize("ell,expected", [(1, (0, 0)), (2, (1, 0)), (3, (3, 2)), (4, (6, 8))])
def test_rational_ranks(ell, expected):
    assert rational_ranks(ell) == expected


def test_dihedral_power_formula():
    assert [dihedral_power_formula(h) for h in (1, 2, 3)] == [1, 5, 15]
    for h in range(1, 40):
        assert (h * h * (h * h + 11)) % 12 == 0


def test_pi2_dim_mod_p():
    assert pi2_dim_mod_p(0, 1, 5) == 1
    assert pi2_dim_mod_p(1, 3, 3) == 3
    assert pi2_dim_mod_p(1, 5, 3) == 5
    with pytest.raises(EvenP):
        pi2_dim_mod_p(0, 1, 2)


@pytest.mark.parametrize("spec,value,tag", [
    ("alex:9:T+1", "Z9", "vanishing-H2"),
    ("alex:3:T^2+1", "(Z3)^3", "odd-order-splitting"),
    ("alex:5:T-2", "0", "vanishing-H2"),
    ("alex:5:T-3", "0", "vanishing-H2"),
    ("alex:2:T^3+T+1", "Z2", "vanishing-H2"),
])
def test_pi2_BQ(spec, value, tag):
    r = pi2_BQ(spec)
    assert r.value == G.parse(value) and r.derivation == tag


def test_pi2_BX():
    assert pi2_BX("dihedral:3").value == G.parse("Z+Z3")
    assert pi2_BX("dihedral:5").value == G.parse("Z+Z5")
    assert pi2_BX("trivial:1").value == G.parse("Z")


@pytest.mark.parametrize("spec,value", [("dihedral:3", "Z3"), ("alex:5:T-2", "0"),
                                        ("dihedral:5", "Z5")])
def test_pi3Q(spec, value):
    r = pi3Q(spec)
    assert r.value == G.parse(value)
    assert r.extra["pi3(BX)"] == G.parse(value) + G.cyclic(2)


def test_refusals():
    with pytest.raises(NotRegular):
        pi2_BQ("dihedral:4")
    with pytest.raises(NotRegular):
        pi2_BQ("alex:9:T-4")  # T-order 3 shares a factor with 9
    with pytest.raises(HypothesisFailed):
        pi3Q("alex:3:T^2+1")  # H2Q = Z3
    with pytest.raises(HypothesisFailed):
        pi3Q("alex:2:T^3+T+1")  # even order


def test_even_order_with_nonzero_h2_is_refused():
    # F_4 with omega of order 3: H2Q = Z2 and |X| = 4
    spec = "gf:2^2:omega=t"
    hc = QuandleHomologyCache(spec)
    if hc.H(2).is_trivial:
        pytest.skip("H2Q vanishes for this representative")
    with pytest.raises(EvenOrderWithNonzeroH2):
        pi2_BQ(spec, hc)


ODD_REGULAR = [spec for _, spec, *_ in TABLE1 if not spec.startswith("alex:2")] + ["pow:dihedral:3^2"]


@pytest.mark.parametrize("spec", ODD_REGULAR)
def test_split_sequence_and_annihilation(spec):
    hc = QuandleHomologyCache(spec)
    r = pi2_BQ(spec, hc)
    assert hc.H(3) == r.value + exterior_square(hc.H(2))
    size = hc.X.n
    assert all(size % d == 0 for d in r.value.torsion)
    assert r.value.is_finite


def test_cache_round_trip(tmp_path):
    store = ResultCache(tmp_path)
    a = QuandleHomologyCache("alex:3:T^2+1", store).H(3)
    assert list(tmp_path.iterdir())
    b = QuandleHomologyCache("alex:3:T^2+1", store).H(3)
    assert a == b == G.parse("(Z3)^3")
