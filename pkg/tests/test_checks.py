import pytest

from quandle_homotopy.abelian import AbelianGroupClass
from quandle_homotopy.checks import (ComplexFamily, HypothesisFailed, PreconditionNotRegular,
                                     certified_rack_rank, covering_shift_check,
                                     late_degenerate_check, quandle_shift_check,
                                     splitting_report, torsion_annihilation_check,
                                     u_coordinate_check, universal_coefficient_dim)
from quandle_homotopy.quandle import alexander, quandle_from_spec


def items(rep, prefix):
    return [it for it in rep.items if it["check"].startswith(prefix)]


def shift_items(rep, s):
    out = []
    for it in rep.items:
        label = it["check"]
        if "D =" in label:
            n = int(label[1:label.index("D")])
            m = int(label.split("= H")[1].split("Q")[0])
            if m - n == s:
                out.append(it)
    return out


@pytest.mark.parametrize("spec", ["dihedral:3", "dihedral:5", "alex:5:T-2", "trivial:2"])
def test_splitting(spec):
    rep = splitting_report(spec, n_max=4, primes=(2, 3, 5))
    assert all(it["ok"] for it in rep.items if it not in shift_items(rep, 1))
    assert shift_items(rep, -1) and all(it["ok"] for it in shift_items(rep, -1))
    assert items(rep, "H2R") and items(rep, "H3R")


def test_opposite_shift_fails_on_dihedral_three():
    rep = splitting_report("dihedral:3", n_max=4, degenerate_shifts=(1,))
    assert not rep.passed
    assert rep.witness.startswith("H2D = H3Q + H2L")


def test_universal_coefficient_dim():
    Z3 = AbelianGroupClass.parse("Z3")
    assert universal_coefficient_dim(AbelianGroupClass.parse("Z + Z3"), Z3, 3) == 3
    assert universal_coefficient_dim(Z3, Z3, 2) == 0


@pytest.mark.parametrize("spec", ["dihedral:3", "dihedral:5", "alex:5:T-2", "alex:3:T^2+1"])
def test_covering_and_quandle_shift(spec):
    assert covering_shift_check(spec).passed
    assert quandle_shift_check(spec).passed


def test_shifts_refuse_non_regular():
    with pytest.raises(PreconditionNotRegular):
        covering_shift_check("dihedral:4")
    with pytest.raises(PreconditionNotRegular):
        u_coordinate_check("dihedral:4")


@pytest.mark.parametrize("spec,n", [("dihedral:3", 2), ("dihedral:3", 3), ("dihedral:5", 2),
                                    ("alex:3:T^2+1", 2), ("alex:5:T-2", 3)])
def test_u_coordinates(spec, n):
    rep = u_coordinate_check(spec, n)
    assert rep.passed, rep.witness
    assert any(it["check"].startswith("chain map") for it in rep.items)


@pytest.mark.parametrize("spec", ["dihedral:3", "dihedral:5", "alex:5:T-2", "dihedral:9"])
def test_torsion_annihilation(spec):
    rep = torsion_annihilation_check(spec, degrees=(1, 2, 3))
    assert rep.passed, rep.witness


@pytest.mark.parametrize("spec", ["dihedral:3", "dihedral:5"])
def test_late_degenerate(spec):
    rep = late_degenerate_check(spec)
    assert rep.passed, rep.witness


def test_late_degenerate_needs_vanishing_H2():
    with pytest.raises(HypothesisFailed):
        late_degenerate_check(alexander("alex:3:T^2+1"), ComplexFamily(alexander("alex:3:T^2+1"), 3))


@pytest.mark.parametrize("spec", ["dihedral:3", "dihedral:5", "trivial:2", "dihedral:4"])
def test_certified_rank_brackets_the_true_rank(spec):
    X = quandle_from_spec(spec)
    cert = certified_rack_rank(X, 3)
    true = ComplexFamily(X, 4).H("R", 3).rank
    assert cert.lower <= true <= cert.upper
    if spec.startswith("dihedral:") and int(spec[9:]) % 2:
        assert cert.exact and cert.value == 1
    if spec == "trivial:2":
        assert cert.upper == true == 8


def test_report_json():
    rep = splitting_report("dihedral:3", n_max=3)
    js = rep.to_json()
    assert set(js) == {"check", "passed", "witness", "items"}
    assert all(set(it) == {"check", "ok", "lhs", "rhs"} for it in js["items"])
