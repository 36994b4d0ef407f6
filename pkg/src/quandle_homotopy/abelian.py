"""Finitely generated abelian groups up to isomorphism."""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from math import gcd

from .ffield import factorize


class NotASummand(ValueError):
    pass


class InfinitePart(ValueError):
    pass


def _elementary(factors) -> dict[int, list[int]]:
    """Prime -> sorted exponents of the prime-power cyclic summands."""
    out: dict[int, list[int]] = defaultdict(list)
    for d in factors:
        d = abs(int(d))
        if d in (0, 1):
            continue
        for p, k in factorize(d).items():
            out[p].append(k)
    return {p: sorted(ks) for p, ks in sorted(out.items())}


def invariant_factors(diagonal) -> tuple[int, ...]:
    """Invariant factors ``d1 | d2 | ...`` (all > 1) of a diagonal matrix, by gcd/lcm swaps.

    Avoids factoring, so huge entries are fine.
    """
    d = [abs(int(x)) for x in diagonal]
    d = [x for x in d if x > 1]
    for i in range(len(d)):
        for j in range(i + 1, len(d)):
            g = gcd(d[i], d[j])
            d[i], d[j] = g, d[i] // g * d[j]
    return tuple(x for x in d if x > 1)


def _from_elementary(parts: dict[int, list[int]]) -> tuple[int, ...]:
    """Reassemble prime-power summands into invariant factors d1 | d2 | ..."""
    longest = max((len(v) for v in parts.values()), default=0)
    factors = [1] * longest
    for p, ks in parts.items():
        ks = sorted(ks, reverse=True)
        for i, k in enumerate(ks):
            factors[longest - 1 - i] *= p**k
    return tuple(factors)


@dataclass(frozen=True)
class AbelianGroupClass:
    """``Z^rank`` plus cyclic summands with invariant factors ``d1 | d2 | ...``."""

    rank: int = 0
    torsion: tuple[int, ...] = ()

    def __post_init__(self):
        if self.rank < 0:
            raise ValueError("negative rank")
        t = tuple(int(d) for d in self.torsion)
        if any(d <= 1 for d in t) or any(b % a for a, b in zip(t, t[1:])):
            t = invariant_factors(t)
        object.__setattr__(self, "torsion", t)

    @classmethod
    def from_diagonal(cls, rank: int, diagonal) -> "AbelianGroupClass":
        """Group from a free rank and arbitrary (not necessarily dividing) cyclic orders."""
        return cls(rank, invariant_factors(diagonal))

    @classmethod
    def cyclic(cls, *orders) -> "AbelianGroupClass":
        return cls.from_diagonal(0, orders)

    @classmethod
    def parse(cls, text: str) -> "AbelianGroupClass":
        """Parse forms like ``0``, ``Z``, ``Z^2+Z3+Z9``, ``(Z3)^3``."""
        s = text.replace(" ", "").replace("⊕", "+")
        if s in ("0", ""):
            return cls()
        rank, diag = 0, []
        for term in s.split("+"):
            power = 1
            if term.startswith("("):
                inner, _, rest = term[1:].partition(")")
                term, power = inner, int(rest.lstrip("^")) if rest else 1
            base, _, exp = term.partition("^")
            power *= int(exp) if exp else 1
            if base == "Z":
                rank += power
            elif base.startswith("Z"):
                diag += [int(base[1:].lstrip("/_"))] * power
            else:
                raise ValueError(f"cannot parse group {text!r}")
        return cls.from_diagonal(rank, diag)

    def __str__(self):
        parts = []
        if self.rank:
            parts.append("Z" if self.rank == 1 else f"Z^{self.rank}")
        run: dict[int, int] = {}
        for d in self.torsion:
            run[d] = run.get(d, 0) + 1
        for d, k in run.items():
            parts.append(f"Z{d}" if k == 1 else f"(Z{d})^{k}")
        return " + ".join(parts) if parts else "0"

    def __add__(self, other: "AbelianGroupClass") -> "AbelianGroupClass":
        return AbelianGroupClass.from_diagonal(self.rank + other.rank, self.torsion + other.torsion)

    @property
    def is_trivial(self) -> bool:
        return self.rank == 0 and not self.torsion

    @property
    def is_finite(self) -> bool:
        return self.rank == 0

    @property
    def order(self) -> int:
        if self.rank:
            raise InfinitePart("group has a free part")
        out = 1
        for d in self.torsion:
            out *= d
        return out

    def elementary_divisors(self) -> dict[int, list[int]]:
        return _elementary(self.torsion)

    def p_count(self, p: int) -> int:
        """Number of cyclic summands of order divisible by ``p``."""
        return sum(1 for d in self.torsion if d % p == 0)

    def dim_tensor_Fp(self, p: int) -> int:
        return self.rank + self.p_count(p)

    def to_json(self) -> dict:
        return {"rank": self.rank, "torsion": list(self.torsion)}


def exterior_square(A: AbelianGroupClass) -> AbelianGroupClass:
    """Second exterior power of a finite abelian group.

    Per prime, ``Z_{p^a1} + ... + Z_{p^ak}`` gives ``sum_{i<j} Z_{p^min(ai,aj)}``.
    """
    if A.rank:
        raise InfinitePart("exterior square is only implemented for finite groups")
    diag = []
    for p, ks in A.elementary_divisors().items():
        for i in range(len(ks)):
            for j in range(i + 1, len(ks)):
                diag.append(p ** min(ks[i], ks[j]))
    return AbelianGroupClass.from_diagonal(0, diag)


def split_complement(whole: AbelianGroupClass, summand: AbelianGroupClass) -> AbelianGroupClass:
    """The unique ``C`` with ``whole = summand + C`` (finite groups)."""
    if whole.rank or summand.rank:
        raise InfinitePart("split complement is only implemented for finite groups")
    W = whole.elementary_divisors()
    for p, ks in summand.elementary_divisors().items():
        pool = list(W.get(p, []))
        for k in ks:
            if k not in pool:
                raise NotASummand(f"{summand} is not a direct summand of {whole}")
            pool.remove(k)
        W[p] = pool
    return AbelianGroupClass(0, _from_elementary(W))
