"""Explicit quandle 3-cocycles of ``X = F_q[T]/(T - omega)``.

Cocycles are polynomials in ``U0 = x1 - x2``, ``U1 = x2 - x3``, ``U2 = x3``
with coefficients in F_q, read as functions ``X^3 -> F_q`` (so ``U^q = U``).
The spanning set of the third cohomology is built from monomials ``F``,
the carry-polynomial families ``E0``/``E1`` and the quadruple family ``Gamma``;
only the first case of ``Gamma`` has an explicit polynomial here.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from itertools import product
from math import comb

import numpy as np

from .chains import rack_faces, rack_tuples, build_complex
from .ffield import FqSpec, p_power_exponents
from .quandle import FiniteQuandle, alexander, gf_spec, point_action
from .snf import IntegerMatrix, rank_mod_p


class GammaCaseUndefined(NotImplementedError):
    pass


class FieldMismatch(ValueError):
    pass


def reduce_exponent(e: int, q: int) -> int:
    return 0 if e == 0 else (e - 1) % (q - 1) + 1


class UPolynomial:
    """Sparse polynomial ``sum c * U0^e0 U1^e1 U2^e2`` over a finite field."""

    __slots__ = ("field", "terms")

    def __init__(self, field: FqSpec, terms: dict | None = None):
        self.field = field
        q = field.q
        clean: dict[tuple[int, int, int], int] = {}
        for e, c in (terms or {}).items():
            e = tuple(reduce_exponent(int(k), q) for k in e)
            s = field.add(clean.get(e, 0), c)
            if s:
                clean[e] = s
            else:
                clean.pop(e, None)
        self.terms = clean

    @classmethod
    def monomial(cls, field: FqSpec, e0=0, e1=0, e2=0, c: int = 1) -> "UPolynomial":
        return cls(field, {(e0, e1, e2): c})

    def __eq__(self, other):
        return isinstance(other, UPolynomial) and self.field == other.field and self.terms == other.terms

    def __hash__(self):
        return hash((self.field, tuple(sorted(self.terms.items()))))

    def __bool__(self):
        return bool(self.terms)

    def __add__(self, other: "UPolynomial") -> "UPolynomial":
        terms = dict(self.terms)
        F = self.field
        for e, c in other.terms.items():
            terms[e] = F.add(terms.get(e, 0), c)
        return UPolynomial(F, terms)

    def __neg__(self):
        F = self.field
        return UPolynomial(F, {e: F.neg(c) for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other: "UPolynomial") -> "UPolynomial":
        F = self.field
        out: dict = {}
        for e, c in self.terms.items():
            for f, d in other.terms.items():
                g = (e[0] + f[0], e[1] + f[1], e[2] + f[2])
                g = tuple(reduce_exponent(k, F.q) for k in g)
                out[g] = F.add(out.get(g, 0), F.mul(c, d))
        return UPolynomial(F, out)

    def scale(self, c: int) -> "UPolynomial":
        F = self.field
        return UPolynomial(F, {e: F.mul(c, v) for e, v in self.terms.items()})

    def frobenius(self, power: int) -> "UPolynomial":
        """``self ** power`` for a power of the characteristic."""
        F = self.field
        return UPolynomial(F, {tuple(k * power for k in e): F.pow(c, power) for e, c in self.terms.items()})

    def __pow__(self, n: int) -> "UPolynomial":
        result = UPolynomial.monomial(self.field)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __repr__(self):
        return f"UPolynomial({self})"

    def __str__(self):
        if not self.terms:
            return "0"
        F = self.field
        parts = []
        for e, c in sorted(self.terms.items(), reverse=True):
            mono = "*".join(f"U{i}" + (f"^{k}" if k > 1 else "") for i, k in enumerate(e) if k)
            coef = F.format(c)
            if not mono:
                parts.append(coef)
            elif c == 1:
                parts.append(mono)
            else:
                parts.append(f"({coef})*{mono}" if "+" in coef else f"{coef}*{mono}")
        return " + ".join(parts)

    def to_json(self) -> list[dict]:
        F = self.field
        return [{"e": list(e), "c": F.format(c)} for e, c in sorted(self.terms.items())]

    @classmethod
    def from_json(cls, field: FqSpec, data) -> "UPolynomial":
        return cls(field, {tuple(t["e"]): field.parse(t["c"]) for t in data})

    # evaluation -------------------------------------------------------------------
    def values(self, U0, U1, U2) -> np.ndarray:
        """Vectorized evaluation on arrays of field codes."""
        F = self.field
        q = F.q
        U = [np.asarray(U0), np.asarray(U1), np.asarray(U2)]
        out = np.zeros(U[0].shape, dtype=np.int64)
        if q == 1:
            return out
        log, exp, mul, add = F._log, F._exp, F.mul_table, F.add_table
        pow_cache: dict = {}

        def power(i, k):
            key = (i, k)
            if key not in pow_cache:
                u = U[i]
                if k == 0:
                    pow_cache[key] = np.ones_like(u)
                else:
                    pow_cache[key] = np.where(u == 0, 0, exp[(log[u] * k) % (q - 1)])
            return pow_cache[key]

        for e, c in self.terms.items():
            v = np.full(out.shape, c, dtype=np.int64)
            for i in range(3):
                if e[i]:
                    v = mul[v, power(i, e[i])]
            out = add[out, v]
        return out

    def table(self) -> np.ndarray:
        """Values on all triples, indexed by ``x1 + q*x2 + q^2*x3``."""
        F = self.field
        t = rack_tuples(1, F.q, 3)
        sub = F.add_table[:, F.neg_table]  # sub[a, b] = a - b
        return self.values(sub[t[:, 1], t[:, 2]], sub[t[:, 2], t[:, 3]], t[:, 3])


# --- building blocks ---------------------------------------------------------------

def chi_coefficients(p: int) -> list[tuple[int, int]]:
    """Pairs ``(i, c_i)`` with ``chi(U, V) = sum c_i U^(p-i) V^i`` over F_p."""
    return [(i, ((-1) ** (i - 1) * pow(i, -1, p)) % p) for i in range(1, p)]


def chi_oracle(p: int) -> list[tuple[int, int]]:
    """The same coefficients from ``((a+b)^p - a^p - b^p) / p``."""
    return [(i, (comb(p, i) // p) % p) for i in range(1, p)]


def chi(F: FqSpec, first: int, second: int, scale: int = 1) -> UPolynomial:
    """``chi(scale * U_first, U_second)``."""
    terms = {}
    for i, c in chi_coefficients(F.p):
        e = [0, 0, 0]
        e[first] += F.p - i
        e[second] += i
        coef = F.mul(F.from_int(c), F.pow(scale, F.p - i))
        terms[tuple(e)] = F.add(terms.get(tuple(e), 0), coef)
    return UPolynomial(F, terms)


def F_poly(F: FqSpec, a: int, b: int, c: int) -> UPolynomial:
    return UPolynomial.monomial(F, a, b, c)


def E0_poly(F: FqSpec, omega: int, q1: int, q2: int) -> UPolynomial:
    """``(chi(w U0, U1) - chi(U0, U1))^q1 * U2^q2`` (labelled ``E0(p*q1, q2)``)."""
    base = chi(F, 0, 1, omega) - chi(F, 0, 1)
    return base.frobenius(q1) * UPolynomial.monomial(F, 0, 0, q2)


def E1_poly(F: FqSpec, omega: int, q1: int, q2: int) -> UPolynomial:
    """``U0^q1 * (chi(U1, w^p U2) - chi(U1, U2))^q2`` (labelled ``E1(q1, q2*p)``).

    With ``x * y = w x + (1 - w) y`` and right actions this is the form that
    satisfies the cocycle identity; ``chi(U1, U2) - chi(w^-1 U1, U2)`` does not.
    """
    base = chi(F, 2, 1, F.pow(omega, F.p)) - chi(F, 1, 2)
    return UPolynomial.monomial(F, q1, 0, 0) * base.frobenius(q2)


def gamma_case1_poly(F: FqSpec, q1, q2, q3, q4) -> UPolynomial:
    return UPolynomial.monomial(F, q1, q2 + q3, q4)


def theta(p: int) -> UPolynomial:
    """The 3-cocycle ``E1(1, p)`` of the dihedral quandle of prime order ``p``."""
    from .ffield import field
    F = field(p)
    return E1_poly(F, F.neg(1), 1, 1)


# --- membership ---------------------------------------------------------------

@dataclass(frozen=True)
class Quadruple:
    q: tuple[int, int, int, int]
    case: int


def _case_of(F: FqSpec, omega: int, q1, q2, q3, q4) -> int | None:
    one = lambda k: F.pow(omega, k) == 1
    p2 = F.p == 2
    if one(q1 + q2):
        return 1
    if q3 > q4:
        return 2
    if not p2 and q3 == q4:
        return 3
    same = F.pow(omega, q1) == F.pow(omega, q2)
    if not p2 and q2 <= q1 < q3 < q4 and same:
        return 4
    if p2 and q2 < q1 < q3 < q4 and same:
        return 5
    return None


def enumerate_Q(F: FqSpec, omega: int) -> list[Quadruple]:
    """All admissible quadruples of p-powers below q, each with its case tag."""
    pw = p_power_exponents(F)
    one = lambda k: F.pow(omega, k) == 1
    out = []
    for q1, q2, q3, q4 in product(pw, repeat=4):
        if not (q2 <= q3 and q1 < q3 and q2 < q4):
            continue
        if not (one(q1 + q3) and one(q2 + q4)):
            continue
        if F.p == 2 and q2 == q3:
            continue
        case = _case_of(F, omega, q1, q2, q3, q4)
        if case is not None:
            out.append(Quadruple((q1, q2, q3, q4), case))
    return out


@dataclass
class Member:
    kind: str  # "F", "E0", "E1", "Gamma"
    label: str
    params: tuple
    case: int | None = None
    polynomial: UPolynomial | None = dc_field(default=None, repr=False)

    @property
    def explicit(self) -> bool:
        return self.polynomial is not None


@dataclass
class CocycleBasisReport:
    field: FqSpec
    omega: int
    members: list[Member]
    b2: int

    @property
    def size(self) -> int:
        return len(self.members)

    @property
    def b3(self) -> int:
        return self.size - self.b2

    def explicit_members(self) -> list[Member]:
        return [m for m in self.members if m.explicit]

    def to_json(self) -> dict:
        return {
            "field": str(self.field),
            "omega": self.field.format(self.omega),
            "b2": self.b2,
            "b3": self.b3,
            "size": self.size,
            "members": [
                {"label": m.label, "kind": m.kind, "case": m.case,
                 "polynomial": m.polynomial.to_json() if m.polynomial is not None else None}
                for m in self.members
            ],
        }


def dim_H2_pairs(F: FqSpec, omega: int) -> int:
    pw = p_power_exponents(F)
    return sum(1 for a in pw for b in pw if a < b and F.pow(omega, a + b) == 1)


def dim_H2_sum(F: FqSpec, omega: int) -> int:
    p, h = F.p, F.h
    return sum(h - i for i in range(1, h) if F.pow(omega, p**i + 1) == 1)


def dim_H2(F: FqSpec, omega: int) -> int:
    """F_q-dimension of the second quandle cohomology, by both counting forms."""
    a, b = dim_H2_pairs(F, omega), dim_H2_sum(F, omega)
    if a != b:
        raise AssertionError(f"pair count {a} != closed sum {b}")
    return a


def build_I(F: FqSpec, omega, explicit: bool = True) -> CocycleBasisReport:
    """The spanning set of the third cohomology with explicit polynomials where known."""
    if isinstance(omega, str):
        omega = F.parse(omega)
    if omega in (0, 1):
        raise ValueError("omega must differ from 0 and 1")
    p, q = F.p, F.q
    pw = p_power_exponents(F)
    one = lambda k: F.pow(omega, k) == 1
    members: list[Member] = []
    for q1, q2, q3 in product(pw, repeat=3):
        if q1 < q2 < q3 and one(q1 + q2 + q3):
            members.append(Member("F", f"F({q1},{q2},{q3})", (q1, q2, q3), None,
                                  F_poly(F, q1, q2, q3) if explicit else None))
    for q1, q2 in product(pw, repeat=2):
        if q1 < q2 and one(q1 + q2):
            members.append(Member("F", f"F({q1},{q2},0)", (q1, q2, 0), None,
                                  F_poly(F, q1, q2, 0) if explicit else None))
    for q1, q2 in product(pw, repeat=2):
        if q1 < q2 and one(p * q1 + q2):
            members.append(Member("E0", f"E0({p * q1},{q2})", (q1, q2), None,
                                  E0_poly(F, omega, q1, q2) if explicit else None))
    for q1, q2 in product(pw, repeat=2):
        if q1 <= q2 and one(q1 + p * q2):
            members.append(Member("E1", f"E1({q1},{q2 * p})", (q1, q2), None,
                                  E1_poly(F, omega, q1, q2) if explicit else None))
    for quad in enumerate_Q(F, omega):
        poly = gamma_case1_poly(F, *quad.q) if (explicit and quad.case == 1) else None
        label = "Gamma({},{},{},{})".format(*quad.q)
        members.append(Member("Gamma", label, quad.q, quad.case, poly))
    return CocycleBasisReport(F, omega, members, dim_H2(F, omega))


def family_polynomial(F: FqSpec, omega: int, kind: str, params) -> UPolynomial:
    """Polynomial for a descriptor; ``params`` are the p-powers ``q_i`` of the family."""
    if kind == "F":
        return F_poly(F, *params)
    if kind == "E0":
        return E0_poly(F, omega, *params)
    if kind == "E1":
        return E1_poly(F, omega, *params)
    if kind == "Gamma":
        case = _case_of(F, omega, *params)
        if case != 1:
            raise GammaCaseUndefined(
                f"Gamma{tuple(params)} falls in case {case}; only case 1 has an explicit polynomial here")
        return gamma_case1_poly(F, *params)
    raise ValueError(f"unknown family {kind!r}")


# --- checks on X = F_q[T]/(T - omega) -------------------------------------------

def field_quandle(F: FqSpec, omega: int) -> FiniteQuandle:
    return alexander(gf_spec(F, omega))


def _check_field(f: UPolynomial, X: FiniteQuandle):
    spec = X.alexander
    if spec is None or spec.fq is None or spec.fq != f.field:
        raise FieldMismatch("polynomial and quandle live over different fields")


def evaluate(f: UPolynomial, X: FiniteQuandle, triple) -> int:
    _check_field(f, X)
    F = f.field
    x1, x2, x3 = (int(v) for v in triple)
    return int(f.values(np.array([F.sub(x1, x2)]), np.array([F.sub(x2, x3)]), np.array([x3]))[0])


@dataclass
class CocycleCheck:
    ok: bool
    witness: tuple | None = None
    reason: str = ""


def is_cocycle(f: UPolynomial | np.ndarray, X: FiniteQuandle, F: FqSpec | None = None) -> CocycleCheck:
    """``f`` vanishes on degenerate triples and ``f o d_4 = 0`` on every 4-tuple.

    ``d_4`` is the rack boundary of :mod:`quandle_homotopy.chains`.
    """
    if isinstance(f, UPolynomial):
        _check_field(f, X)
        F = f.field
        vals = f.table()
    else:
        vals = np.asarray(f)
    n = X.n
    t3 = rack_tuples(1, n, 3)
    degenerate = (t3[:, 1] == t3[:, 2]) | (t3[:, 2] == t3[:, 3])
    bad = np.nonzero(degenerate & (vals != 0))[0]
    if bad.size:
        return CocycleCheck(False, tuple(int(v) for v in t3[bad[0], 1:]), "nonzero on a degenerate triple")
    add, neg = F.add_table, F.neg_table
    t4 = rack_tuples(1, n, 4)
    total = np.zeros(len(t4), dtype=np.int64)
    for s, face in rack_faces(X, point_action(X), t4):
        idx = face[:, 1] + n * face[:, 2] + n * n * face[:, 3]
        v = vals[idx]
        total = add[total, v if s > 0 else neg[v]]
    bad = np.nonzero(total)[0]
    if bad.size:
        return CocycleCheck(False, tuple(int(v) for v in t4[bad[0], 1:]), "cocycle identity fails")
    return CocycleCheck(True)


def coboundary_system(X: FiniteQuandle):
    """The quandle boundary ``d_3`` (rows: nondegenerate pairs, cols: triples)."""
    C = build_complex(X, variant="Q", n_max=3, check=False)
    return C


def is_coboundary(f: UPolynomial | np.ndarray, X: FiniteQuandle, F: FqSpec | None = None) -> bool:
    """Whether ``f = g o d_3`` for some ``g`` on nondegenerate pairs.

    F_q-valued functions are split into their h coordinates over F_p; each
    coordinate is an independent linear system over F_p.
    """
    if isinstance(f, UPolynomial):
        _check_field(f, X)
        F = f.field
        vals = f.table()
    else:
        vals = np.asarray(f)
    C = coboundary_system(X)
    basis3 = C.bases[3]
    fv = vals[basis3]
    D = C.boundaries[3].tocoo()  # shape (dim C2, dim C3)
    base = IntegerMatrix.from_coo(D.shape[0], D.shape[1], D.row, D.col, D.data)
    r0 = rank_mod_p(base, F.p)
    digits = F.digits[fv]  # (dim C3, h)
    for k in range(F.h):
        col = digits[:, k]
        if not col.any():
            continue
        rows = {i: dict(r) for i, r in base.rows.items()}
        extra = {int(j): int(v) for j, v in enumerate(col) if v}
        rows[base.nrows] = extra
        aug = IntegerMatrix(base.nrows + 1, base.ncols, rows)
        if rank_mod_p(aug, F.p) != r0:
            return False
    return True
