"""Consistency checks between the chain complexes.

Each check computes both sides of an identity from scratch and reports the
first counterexample it finds, so a failure always comes with a witness.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

import numpy as np
import scipy.sparse as sp

from .abelian import AbelianGroupClass
from .chains import ChainComplex, build_complex, homology, rack_tuples
from .quandle import (AlexanderSpec, FiniteQuandle, alexander, connected_components,
                      inner_action, inner_group, parse_alexander_spec, quandle_from_spec,
                      regularity, self_action)


class PreconditionNotRegular(ValueError):
    pass


class HypothesisFailed(ValueError):
    pass


@dataclass
class CheckReport:
    name: str
    passed: bool = True
    items: list = dc_field(default_factory=list)
    witness: str | None = None

    def record(self, label: str, ok: bool, lhs=None, rhs=None):
        self.items.append({"check": label, "ok": bool(ok),
                           "lhs": None if lhs is None else str(lhs),
                           "rhs": None if rhs is None else str(rhs)})
        if not ok and self.passed:
            self.passed = False
            self.witness = f"{label}: {lhs} != {rhs}"

    def to_json(self) -> dict:
        return {"check": self.name, "passed": self.passed, "witness": self.witness,
                "items": self.items}


def _as_spec(spec) -> AlexanderSpec:
    return parse_alexander_spec(spec) if isinstance(spec, str) else spec


def _quandle(X) -> FiniteQuandle:
    if isinstance(X, FiniteQuandle):
        return X
    if isinstance(X, str):
        return quandle_from_spec(X)
    return alexander(X)


class ComplexFamily:
    """R, D, Q and L complexes of one quandle with point coefficients, built on demand."""

    def __init__(self, X: FiniteQuandle, n_max: int | None = None):
        self.X = X
        self.n_max = n_max
        self._c: dict[str, ChainComplex] = {}

    def complex(self, variant: str) -> ChainComplex:
        if variant not in self._c:
            self._c[variant] = build_complex(self.X, variant=variant, n_max=self.n_max)
        return self._c[variant]

    def H(self, variant: str, n: int, p: int | None = None):
        return homology(self.complex(variant), n, p)

    @property
    def top(self) -> int:
        """Highest degree whose homology is available."""
        return self.complex("Q").n_max - 1


def universal_coefficient_dim(Hn: AbelianGroupClass, Hprev: AbelianGroupClass, p: int) -> int:
    """``dim H_n(C; F_p)`` predicted from the integral groups in degrees n and n-1."""
    return (Hn.rank + sum(1 for d in Hn.torsion if d % p == 0)
            + sum(1 for d in Hprev.torsion if d % p == 0))


def splitting_report(X, n_max: int | None = None, family: ComplexFamily | None = None,
                     primes: tuple[int, ...] = (), degenerate_shifts=(1, -1)) -> CheckReport:
    """Check the splittings of rack homology into quandle and degenerate parts.

    * ``H_2^R = H_2^Q + Z^l`` and ``H_3^R = H_3^Q + H_2^Q + Z^(l^2)``
    * ``H_n^R = H_n^Q + H_n^D``
    * ``H_n^D = H_{n+s}^Q + H_n^L`` for each shift ``s`` in ``degenerate_shifts``

    Only ``s = -1`` is a true identity (already ``H_2^D(D_3) = Z`` while
    ``H_3^Q(D_3) = Z3`` and ``C_2^L = 0``); ``s = +1`` is kept so that the
    form with the opposite shift can be checked and seen to fail.

    For each prime in ``primes`` the F_p homology is compared with the
    universal coefficient prediction as well.
    """
    X = _quandle(X)
    fam = family or ComplexFamily(X, n_max)
    ell = len(connected_components(X))
    top = fam.top
    rep = CheckReport("splitting")
    H = {v: {n: fam.H(v, n) for n in range(1, top + 1)} for v in "RQD"}
    H["L"] = {n: fam.H("L", n) for n in range(1, top + 1)}
    if top >= 2:
        rhs = H["Q"][2] + AbelianGroupClass(ell)
        rep.record("H2R = H2Q + Z^l", H["R"][2] == rhs, H["R"][2], rhs)
    if top >= 3:
        rhs = H["Q"][3] + H["Q"][2] + AbelianGroupClass(ell * ell)
        rep.record("H3R = H3Q + H2Q + Z^(l^2)", H["R"][3] == rhs, H["R"][3], rhs)
    for n in range(1, top + 1):
        rhs = H["Q"][n] + H["D"][n]
        rep.record(f"H{n}R = H{n}Q + H{n}D", H["R"][n] == rhs, H["R"][n], rhs)
    for s in degenerate_shifts:
        for n in range(1 if s > 0 else 2, top + 1 - max(s, 0)):
            rhs = H["Q"][n + s] + H["L"][n]
            rep.record(f"H{n}D = H{n + s}Q + H{n}L", H["D"][n] == rhs, H["D"][n], rhs)
    for p in primes:
        for v in "RQD":
            for n in range(1, top + 1):
                prev = H[v][n - 1] if n > 1 else fam.H(v, 0)
                want = universal_coefficient_dim(H[v][n], prev, p)
                got = fam.H(v, n, p)
                rep.record(f"dim H{n}{v}(F_{p}) = UCT", got == want, got, want)
    return rep


def _regular_spec(spec) -> AlexanderSpec:
    spec = _as_spec(spec)
    reg = regularity(spec)
    if not reg.regular:
        raise PreconditionNotRegular(f"{spec.label}: e={reg.e}, connected={reg.connected}")
    return spec


def covering_shift_check(spec, degrees=(1, 2)) -> CheckReport:
    """``H_n`` with coefficients in X and in Inn(X) against ``H_{n+1}^R(X; Z)``."""
    spec = _regular_spec(spec)
    X = alexander(spec)
    top = max(degrees)
    CR = build_complex(X, variant="R", n_max=top + 2)
    CX = build_complex(X, self_action(X), "R", n_max=top + 1)
    CI = build_complex(X, inner_action(X), "R", n_max=top + 1)
    rep = CheckReport("covering-shift")
    for n in degrees:
        target = homology(CR, n + 1)
        hx, hi = homology(CX, n), homology(CI, n)
        rep.record(f"H{n}(Y=X) = H{n + 1}R", hx == target, hx, target)
        rep.record(f"H{n}(Y=Inn) = H{n + 1}R", hi == target, hi, target)
    return rep


def quandle_shift_check(spec, degrees=(1, 2)) -> CheckReport:
    """Quandle homology with coefficients in X: ``H_n = H_{n+1}^Q + H_n^Q``."""
    spec = _regular_spec(spec)
    X = alexander(spec)
    top = max(degrees)
    CQ = build_complex(X, variant="Q", n_max=top + 2)
    CX = build_complex(X, self_action(X), "Q", n_max=top + 1)
    rep = CheckReport("quandle-shift")
    for n in degrees:
        rhs = homology(CQ, n + 1) + homology(CQ, n)
        lhs = homology(CX, n)
        rep.record(f"H{n}Q(Y=X) = H{n + 1}Q + H{n}Q", lhs == rhs, lhs, rhs)
    return rep


# --- translation coordinates on the Inn(X)-coefficient complex --------------------

class _Module:
    """Index arithmetic on the underlying module of an Alexander quandle."""

    def __init__(self, spec: AlexanderSpec):
        V = spec.vectors()
        self.spec = spec
        self.q = spec.size
        self.add = spec.encode(V[:, None, :] + V[None, :, :])
        self.neg = spec.encode(-V)
        self.T = spec.encode(spec.apply_T(V))
        self.one_minus_T = spec.encode(V - spec.apply_T(V))


def _inn_coordinates(spec: AlexanderSpec, X: FiniteQuandle, G, mod: _Module, e: int,
                     coordinate: str):
    """``(eps, u)`` for each element of Inn(X), where the element is ``y -> T^eps y + w``.

    ``coordinate="translation"`` takes ``u = w``; ``"scaled"`` takes ``u`` with
    ``w = (1 - T) u``.
    """
    V = spec.vectors()
    powers = [spec.encode(spec.apply_T(V, k)) for k in range(e)]
    scaled = np.argsort(mod.one_minus_T)
    eps = np.empty(G.order, dtype=np.int64)
    u = np.empty(G.order, dtype=np.int64)
    for i, g in enumerate(G.elements):
        g = np.asarray(g)
        w = int(g[0])
        for k in range(e):
            if np.array_equal(g, mod.add[powers[k], w]):
                eps[i] = k
                break
        else:
            raise ValueError("inner automorphism is not affine")
        u[i] = w if coordinate == "translation" else scaled[w]
    return eps, u


def _u_index(eps, U, e, q):
    code = np.zeros(len(eps), dtype=np.int64)
    for k in range(U.shape[1] - 1, -1, -1):
        code = code * q + U[:, k]
    return code * e + eps


def u_boundary(mod: _Module, e: int, n: int) -> sp.csr_matrix:
    """Boundary of the complex on ``(eps, U_0; U_1, ..., U_n)``.

    ``d = sum_{0<=i<n} (-1)^i [ (eps+1, TU_0; TU_1, ..., TU_i + U_{i+1}, U_{i+2}, ...)
                              - (eps, U_0; U_1, ..., U_i + U_{i+1}, U_{i+2}, ...) ]``
    """
    q = mod.q
    N = e * q ** (n + 1)
    idx = np.arange(N, dtype=np.int64)
    eps = idx % e
    rest = idx // e
    U = np.empty((N, n + 1), dtype=np.int64)
    for k in range(n + 1):
        U[:, k] = rest % q
        rest //= q
    rr, cc, vv = [np.zeros(0, np.int64)], [np.zeros(0, np.int64)], [np.zeros(0, np.int64)]
    for i in range(n):
        s = 1 if i % 2 == 0 else -1
        A = np.empty((N, n), dtype=np.int64)
        A[:, :i] = mod.T[U[:, :i]]
        A[:, i] = mod.add[mod.T[U[:, i]], U[:, i + 1]]
        A[:, i + 1:] = U[:, i + 2:]
        B = np.empty((N, n), dtype=np.int64)
        B[:, :i] = U[:, :i]
        B[:, i] = mod.add[U[:, i], U[:, i + 1]]
        B[:, i + 1:] = U[:, i + 2:]
        rr += [_u_index((eps + 1) % e, A, e, q), _u_index(eps, B, e, q)]
        cc += [idx, idx]
        vv += [np.full(N, s), np.full(N, -s)]
    M = sp.csr_matrix((np.concatenate(vv), (np.concatenate(rr), np.concatenate(cc))),
                      shape=(e * q ** n, N), dtype=np.int64)
    M.sum_duplicates()
    M.eliminate_zeros()
    return M


def u_coordinate_check(spec, n: int = 2, coordinate: str = "translation") -> CheckReport:
    """Compare the Inn(X)-coefficient rack complex with the translation-coordinate complex.

    Generators ``(g; x_1, ..., x_n)`` go to ``(eps, u - x_1; x_1 - x_2, ..., x_n)``
    where ``g = (eps, u)``.  The check asserts ``d' P_k = -P_{k-1} d`` for
    ``k <= n`` (so ``(-1)^k P_k`` is a chain isomorphism) and ``d' d' = 0``.
    """
    if n > 4:
        raise ValueError("degrees above 4 are not supported")
    spec = _as_spec(spec)
    reg = regularity(spec)
    if not reg.connected:
        raise PreconditionNotRegular(f"{spec.label} is not connected")
    X = alexander(spec)
    G = inner_group(X)
    e, q = reg.e, X.n
    if G.order != e * q:
        raise PreconditionNotRegular(f"|Inn(X)| = {G.order} differs from e|X| = {e * q}")
    mod = _Module(spec)
    eps_of, u_of = _inn_coordinates(spec, X, G, mod, e, coordinate)
    C = build_complex(X, inner_action(X, G), "R", n_max=n)

    def bijection(k):
        t = rack_tuples(G.order, q, k)
        xs = np.concatenate([u_of[t[:, 0]][:, None], t[:, 1:]], axis=1)
        U = np.empty((len(t), k + 1), dtype=np.int64)
        for j in range(k):
            U[:, j] = mod.add[xs[:, j], mod.neg[xs[:, j + 1]]]
        U[:, k] = xs[:, k]
        return _u_index(eps_of[t[:, 0]], U, e, q)

    rep = CheckReport(f"u-coordinates ({coordinate})")
    P = [bijection(k) for k in range(n + 1)]
    for k in range(n + 1):
        ok = len(np.unique(P[k])) == len(P[k]) == e * q ** (k + 1)
        rep.record(f"bijection in degree {k}", ok)
    prev = None
    for k in range(1, n + 1):
        Du = u_boundary(mod, e, k)
        if prev is not None:
            Z = prev @ Du
            Z.eliminate_zeros()
            rep.record(f"d'{k - 1} d'{k} = 0", Z.nnz == 0, Z.nnz, 0)
        prev = Du
        lhs = Du[:, P[k]].tocsc()
        perm = sp.csr_matrix((np.ones(len(P[k - 1]), dtype=np.int64),
                              (P[k - 1], np.arange(len(P[k - 1])))),
                             shape=(len(P[k - 1]),) * 2)
        diff = (lhs + perm @ C.boundaries[k]).tocsc()
        diff.eliminate_zeros()
        if diff.nnz:
            col = int(diff.nonzero()[1][0])
            gen = rack_tuples(G.order, q, k)[col]
            g = int(gen[0])
            label = f"(eps={eps_of[g]}, u={u_of[g]}; {', '.join(map(str, gen[1:]))})"
            rep.record(f"chain map in degree {k}", False, f"first mismatch at {label}", "match")
        else:
            rep.record(f"chain map in degree {k}", True, f"{lhs.shape[1]} generators", "match")
    return rep


def torsion_annihilation_check(spec, degrees=(1, 2, 3, 4), inn_degrees=(1, 2),
                               family: ComplexFamily | None = None,
                               rack_degrees=None) -> CheckReport:
    """Every invariant factor of ``H_n^R``, ``H_n^Q`` and ``H_n(Y=Inn)`` divides ``|X|``.

    ``rack_degrees`` (default: ``degrees``) limits the rack side, whose top
    boundary is much larger than the quandle one.
    """
    spec = _regular_spec(spec)
    X = alexander(spec)
    size = X.n
    rep = CheckReport("torsion-annihilation")
    rack_degrees = degrees if rack_degrees is None else rack_degrees
    if degrees or rack_degrees:
        fam = family or ComplexFamily(X, max((*degrees, *rack_degrees)) + 1)
        for v, degs in (("R", rack_degrees), ("Q", degrees)):
            for n in degs:
                Hn = fam.H(v, n)
                bad = [d for d in Hn.torsion if size % d]
                rep.record(f"|X| kills H{n}{v}", not bad, Hn, f"factors dividing {size}")
    if inn_degrees:
        CI = build_complex(X, inner_action(X), "R", n_max=max(inn_degrees) + 1)
        for n in inn_degrees:
            Hn = homology(CI, n)
            bad = [d for d in Hn.torsion if size % d]
            rep.record(f"|X| kills H{n}(Y=Inn)", not bad, Hn, f"factors dividing {size}")
    return rep


def late_degenerate_check(X, family: ComplexFamily | None = None) -> CheckReport:
    """``H_4^L(X; Z) = Z`` whenever ``H_2^Q(X; Z) = 0``."""
    X = _quandle(X)
    fam = family or ComplexFamily(X, 5)
    H2 = fam.H("Q", 2)
    if not H2.is_trivial:
        raise HypothesisFailed(f"H2Q = {H2} is not zero")
    rep = CheckReport("late-degenerate")
    H4 = fam.H("L", 4)
    rep.record("H4L = Z", H4 == AbelianGroupClass(1), H4, "Z")
    return rep


# --- certified ranks beyond the materialized degrees --------------------------------

LARGE_PRIME = 1_000_003


@dataclass
class RankCertificate:
    degree: int
    lower: int
    upper: int
    detail: dict

    @property
    def exact(self) -> bool:
        return self.lower == self.upper

    @property
    def value(self) -> int:
        if not self.exact:
            raise ValueError(f"rank only bounded: {self.lower} <= r <= {self.upper}")
        return self.lower

    def to_json(self) -> dict:
        return {"degree": self.degree, "lower": self.lower, "upper": self.upper,
                "detail": self.detail}


def certified_rack_rank(X, n: int, p: int = LARGE_PRIME,
                        family: ComplexFamily | None = None) -> RankCertificate:
    """Bracket ``rank H_n^R(X; Z)`` without reducing the full rack boundary ``d_{n+1}``.

    Upper bound: ``d_{n+1}^R`` has rank at least ``rank d_{n+1}^D + rank d_{n+1}^Q``
    (the degenerate part is a subcomplex and the quotient map only loses rank).
    The degenerate rank is taken mod ``p``, which never exceeds the rational
    rank; the quandle rank comes from the Smith form, which ``family`` may
    already hold.  Lower bound: the component indicator cocycles below.
    """
    X = _quandle(X)
    if family is not None and family.X == X and family.complex("Q").n_max >= n + 1:
        CR, CD, CQ = (family.complex(v) for v in "RDQ")
    else:
        CR = build_complex(X, variant="R", n_max=n)
        CD = build_complex(X, variant="D", n_max=n + 1)
        CQ = build_complex(X, variant="Q", n_max=n + 1)
    kernel = CR.dim(n) - CR.rank(n)
    rD, rQ = CD.rank(n + 1, p), CQ.rank(n + 1)
    upper = kernel - rD - rQ
    lower = _component_cocycle_bound(X, n)
    return RankCertificate(n, lower, upper, {
        "dim C_n": CR.dim(n), "rank d_n": CR.rank(n),
        f"rank_p d_{n + 1}^D": rD, f"rank d_{n + 1}^Q": rQ, "prime": p})


def _component_cocycle_bound(X: FiniteQuandle, n: int) -> int:
    """Number of independent classes seen by ``f_c(x_1..x_n) = [x_n in component c]``.

    Each ``f_c`` is a cocycle for point coefficients: the faces of
    ``(x_1..x_{n+1})`` end in ``x_{n+1}``, ``x_n`` or ``x_n * x_{n+1}``, and the
    two faces of each pair end in the same component.  The diagonal tuples
    ``(x, ..., x)`` are cycles because ``x * x = x``, and pairing them with the
    ``f_c`` gives an identity matrix.
    """
    return len(connected_components(X)) if n >= 1 else 1
