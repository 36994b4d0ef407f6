"""Second and third homotopy groups of rack and quandle spaces from homology.

Everything here is derived from integral quandle homology of a regular
Alexander quandle; outside the hypotheses of the underlying theorems the
functions refuse instead of guessing.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from .abelian import AbelianGroupClass, exterior_square, split_complement
from .chains import build_complex, homology
from .ffield import is_prime
from .quandle import (AlexanderSpec, FiniteQuandle, alexander, parse_alexander_spec, regularity,
                      trivial)


class NotRegular(ValueError):
    pass


class EvenOrderWithNonzeroH2(ValueError):
    pass


class HypothesisFailed(ValueError):
    def __init__(self, reason: str, detail: str = ""):
        super().__init__(f"{reason}: {detail}" if detail else reason)
        self.reason = reason


class EvenP(ValueError):
    pass


@dataclass
class HomotopyResult:
    target: str
    value: AbelianGroupClass
    derivation: str
    preconditions: list[str] = dc_field(default_factory=list)
    extra: dict = dc_field(default_factory=dict)

    def to_json(self) -> dict:
        out = {"target": self.target, "value": str(self.value), **self.value.to_json(),
               "derivation": self.derivation, "preconditions": self.preconditions}
        out.update({k: str(v) if isinstance(v, AbelianGroupClass) else v for k, v in self.extra.items()})
        return out


def rational_ranks(ell: int) -> tuple[int, int]:
    """Ranks of pi_2(B^Q X) and pi_3^Q(BX) for a quandle with ``ell`` components."""
    if ell < 1:
        raise ValueError("need at least one component")
    return (ell * ell - ell) // 2, ell * (ell - 1) * (ell - 2) // 3


def dihedral_power_formula(h: int) -> int:
    """F_p-dimension of pi_2(B^Q X) tensor F_p for the h-fold product of D_p."""
    num = h * h * (h * h + 11)
    assert num % 12 == 0
    return num // 12


def pi2_dim_mod_p(b2: int, b3: int, p: int) -> int:
    if p == 2:
        raise EvenP("the formula is stated for odd p only")
    return b3 - b2 * (b2 - 1) // 2


class QuandleHomologyCache:
    """Quandle homology of one Alexander quandle, built lazily to the needed degree."""

    def __init__(self, spec: AlexanderSpec | str, store=None):
        if spec == "trivial:1":
            # the one-point quandle is not an Alexander module but is trivially regular
            self.spec, self.X, self.label = None, trivial(1), "trivial:1"
        else:
            self.spec = parse_alexander_spec(spec) if isinstance(spec, str) else spec
            self.X = alexander(self.spec)
            self.label = self.spec.label
        self.store = store  # optional ResultCache
        self._complex = None

    def _compute(self, n: int) -> AbelianGroupClass:
        if self._complex is None or self._complex.n_max < n + 1:
            self._complex = build_complex(self.X, variant="Q", n_max=n + 1)
        return homology(self._complex, n)

    def H(self, n: int) -> AbelianGroupClass:
        if self.store is None:
            return self._compute(n)
        data = self.store.get_or_compute(["HQ", self.label, n],
                                         lambda: self._compute(n).to_json())
        return AbelianGroupClass.from_diagonal(data["rank"], data["torsion"])


def _regular_or_raise(spec) -> list[str]:
    if spec is None:
        return ["|X| = 1"]
    reg = regularity(spec)
    if not reg.regular:
        raise NotRegular(f"{spec.label}: connected={reg.connected}, e={reg.e}, |X|={spec.size}")
    return [f"regular (e={reg.e}, |X|={spec.size})"]


def pi2_BQ(spec, cache: QuandleHomologyCache | None = None) -> HomotopyResult:
    cache = cache or QuandleHomologyCache(spec)
    spec = cache.spec
    pre = _regular_or_raise(spec)
    H2, H3 = cache.H(2), cache.H(3)
    extra = {"H2Q": H2, "H3Q": H3}
    if H2.is_trivial:
        pre.append("H2Q = 0")
        return HomotopyResult("pi2(BQX)", H3, "vanishing-H2", pre, extra)
    if cache.X.n % 2 == 0:
        raise EvenOrderWithNonzeroH2(f"{spec.label}: |X| even and H2Q = {H2}")
    pre.append("|X| odd")
    wedge = exterior_square(H2)
    extra["Lambda2(H2Q)"] = wedge
    return HomotopyResult("pi2(BQX)", split_complement(H3, wedge), "odd-order-splitting", pre, extra)


def pi2_BX(spec, cache: QuandleHomologyCache | None = None) -> HomotopyResult:
    r = pi2_BQ(spec, cache)
    return HomotopyResult("pi2(BX)", AbelianGroupClass(1) + r.value, r.derivation,
                          r.preconditions + ["connected"], r.extra)


def pi3Q(spec, cache: QuandleHomologyCache | None = None) -> HomotopyResult:
    cache = cache or QuandleHomologyCache(spec)
    spec = cache.spec
    if spec is None:
        raise HypothesisFailed("NotAlexander", cache.label)
    reg = regularity(spec)
    if not reg.regular:
        raise HypothesisFailed("NotRegular", spec.label)
    if spec.size % 2 == 0:
        raise HypothesisFailed("EvenOrder", spec.label)
    H2 = cache.H(2)
    if not H2.is_trivial:
        raise HypothesisFailed("H2Nonzero", f"H2Q = {H2}")
    H4 = cache.H(4)
    pre = [f"regular (e={reg.e}, |X|={spec.size})", "|X| odd", "H2Q = 0"]
    tag = "vanishing-H2-H4"
    if spec.d == 1 and is_prime(spec.m):
        tag = "vanishing-H2-H4-prime-field"
    return HomotopyResult("pi3Q(BX)", H4, tag, pre,
                          {"H4Q": H4, "pi3(BX)": H4 + AbelianGroupClass.cyclic(2)})
