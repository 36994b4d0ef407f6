"""Finite quandles, Alexander quandles and their structural data.

Conventions: elements are ``0..n-1`` and ``table[x, y] == x * y`` (row is the
left argument).  Permutations are tuples ``g`` with ``g[i]`` the image of
``i``; groups act on the right, so ``g`` followed by ``h`` is ``h[g[i]]``.

Alexander modules are ``Z_m^d`` with ``T`` a ``d x d`` matrix over ``Z_m``.  A
coefficient vector ``(c_0, ..., c_{d-1})`` (constant term first) has index
``sum(c_i * m**i)``; for a field this agrees with the codes of
:mod:`quandle_homotopy.ffield`.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field as dc_field
from math import gcd
from pathlib import Path

import numpy as np

from ._polytext import format_poly, parse_poly
from .ffield import FqSpec, parse_field


class QuandleAxiomError(ValueError):
    """A table that violates one of the quandle axioms."""


class NotIdempotent(QuandleAxiomError):
    def __init__(self, x):
        super().__init__(f"x*x != x for x={x}")
        self.witness = (x,)


class NotRightInvertible(QuandleAxiomError):
    def __init__(self, y):
        super().__init__(f"column map x -> x*{y} is not a bijection")
        self.witness = (y,)


class NotDistributive(QuandleAxiomError):
    def __init__(self, x, y, z):
        super().__init__(f"(x*y)*z != (x*z)*(y*z) for (x,y,z)=({x},{y},{z})")
        self.witness = (x, y, z)


class InvalidAlexanderSpec(ValueError):
    pass


class GroupTooLarge(RuntimeError):
    pass


class FiniteQuandle:
    """A validated quandle operation table; immutable and hashable."""

    __slots__ = ("table", "tag", "alexander", "_key")

    def __init__(self, table, tag: str = "user-table", alexander: "AlexanderSpec | None" = None):
        t = np.array(table, dtype=np.int64)
        t.setflags(write=False)
        object.__setattr__(self, "table", t)
        object.__setattr__(self, "tag", tag)
        object.__setattr__(self, "alexander", alexander)
        object.__setattr__(self, "_key", (t.shape[0], t.tobytes()))

    def __setattr__(self, name, value):
        raise AttributeError("FiniteQuandle is immutable")

    @property
    def n(self) -> int:
        return self.table.shape[0]

    def __len__(self):
        return self.n

    def __eq__(self, other):
        return isinstance(other, FiniteQuandle) and self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        name = self.alexander.label if self.alexander else self.tag
        return f"FiniteQuandle({name}, n={self.n})"

    @property
    def name(self) -> str:
        return self.alexander.label if self.alexander else self.tag

    def op(self, x: int, y: int) -> int:
        return int(self.table[x, y])

    def right_translation(self, y: int) -> tuple[int, ...]:
        return tuple(int(v) for v in self.table[:, y])

    @property
    def right_division(self) -> np.ndarray:
        """``rdiv[x, y]`` is the unique ``w`` with ``w * y == x``."""
        n = self.n
        rdiv = np.empty_like(self.table)
        for y in range(n):
            rdiv[self.table[:, y], y] = np.arange(n)
        return rdiv


def validate(table, tag: str = "user-table", alexander=None) -> FiniteQuandle:
    """Check the three quandle axioms, raising on the first violation found."""
    t = np.asarray(table)
    if t.ndim != 2 or t.shape[0] != t.shape[1]:
        raise QuandleAxiomError("operation table must be square")
    n = t.shape[0]
    if n == 0:
        raise QuandleAxiomError("empty table")
    if not np.issubdtype(t.dtype, np.integer):
        raise QuandleAxiomError("table entries must be integers")
    if t.min() < 0 or t.max() >= n:
        raise QuandleAxiomError("table entry out of range")
    diag = t[np.arange(n), np.arange(n)]
    bad = np.nonzero(diag != np.arange(n))[0]
    if bad.size:
        raise NotIdempotent(int(bad[0]))
    for y in range(n):
        if np.unique(t[:, y]).size != n:
            raise NotRightInvertible(y)
    # (x*y)*z versus (x*z)*(y*z), indexed [x, y, z]
    lhs = t[t, :]  # lhs[x, y, z] = t[t[x, y], z]
    xz = t[:, None, :]
    yz = t[None, :, :]
    rhs = t[np.broadcast_to(xz, (n, n, n)), np.broadcast_to(yz, (n, n, n))]
    bad = np.argwhere(lhs != rhs)
    if bad.size:
        x, y, z = (int(v) for v in bad[0])
        raise NotDistributive(x, y, z)
    return FiniteQuandle(t, tag=tag, alexander=alexander)


def trivial(ell: int) -> FiniteQuandle:
    if ell < 1:
        raise ValueError("trivial quandle needs at least one element")
    t = np.tile(np.arange(ell)[:, None], (1, ell))
    return validate(t, tag=f"trivial:{ell}")


def product(X: FiniteQuandle, Y: FiniteQuandle) -> FiniteQuandle:
    """Coordinatewise product; the pair ``(x, y)`` has index ``x + |X|*y``."""
    nx, ny = X.n, Y.n
    idx = np.arange(nx * ny)
    xs, ys = idx % nx, idx // nx
    t = X.table[xs[:, None], xs[None, :]] + nx * Y.table[ys[:, None], ys[None, :]]
    alex = None
    if X.alexander is not None and Y.alexander is not None and X.alexander.m == Y.alexander.m:
        alex = X.alexander.direct_sum(Y.alexander)
    return validate(t, tag=f"product({X.name},{Y.name})", alexander=alex)


# --- integer matrices mod m ---------------------------------------------------

def _matmul_mod(a, b, m):
    return [[sum(a[i][k] * b[k][j] for k in range(len(b))) % m for j in range(len(b[0]))]
            for i in range(len(a))]


def _det(a) -> int:
    """Exact integer determinant (Bareiss)."""
    a = [list(r) for r in a]
    n = len(a)
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


@dataclass(frozen=True)
class AlexanderSpec:
    """An Alexander module ``Z_m^d`` with the linear action ``T``.

    ``label`` is the canonical spec string.  ``fq``/``omega`` are set for the
    field form ``F_q[T]/(T - omega)``.
    """

    m: int
    T: tuple[tuple[int, ...], ...]
    label: str
    fq: FqSpec | None = dc_field(default=None, compare=False)
    omega: int | None = dc_field(default=None, compare=False)

    @property
    def d(self) -> int:
        return len(self.T)

    @property
    def size(self) -> int:
        return self.m**self.d

    def vectors(self) -> np.ndarray:
        idx = np.arange(self.size)
        return np.stack([(idx // self.m**i) % self.m for i in range(self.d)], axis=1)

    def encode(self, vecs) -> np.ndarray:
        vecs = np.asarray(vecs) % self.m
        return (vecs * (self.m ** np.arange(self.d))).sum(axis=-1)

    def apply_T(self, vecs, power: int = 1) -> np.ndarray:
        M = np.array(self.T_power(power), dtype=np.int64)
        return (np.asarray(vecs) @ M.T) % self.m

    def T_power(self, k: int):
        d = self.d
        result = [[int(i == j) for j in range(d)] for i in range(d)]
        base = [list(r) for r in self.T]
        while k:
            if k & 1:
                result = _matmul_mod(result, base, self.m)
            base = _matmul_mod(base, base, self.m)
            k >>= 1
        return result

    def direct_sum(self, other: "AlexanderSpec") -> "AlexanderSpec":
        if other.m != self.m:
            raise InvalidAlexanderSpec("direct sum needs a common modulus")
        d1, d2 = self.d, other.d
        T = [[0] * (d1 + d2) for _ in range(d1 + d2)]
        for i in range(d1):
            for j in range(d1):
                T[i][j] = self.T[i][j]
        for i in range(d2):
            for j in range(d2):
                T[d1 + i][d1 + j] = other.T[i][j]
        if self == other or self.label == other.label:
            label = f"pow:{self.label}^2"
        else:
            label = f"sum({self.label},{other.label})"
        return AlexanderSpec(self.m, tuple(map(tuple, T)), label)


def dihedral_spec(m: int) -> AlexanderSpec:
    if m < 2:
        raise InvalidAlexanderSpec("dihedral quandle needs m >= 2")
    return AlexanderSpec(m, ((m - 1,),), f"dihedral:{m}")


def alex_spec(m: int, poly) -> AlexanderSpec:
    """``Z_m[T]/(poly)``; ``poly`` is text in ``T`` or a little-endian list."""
    text = poly if isinstance(poly, str) else format_poly(poly, "T")
    coeffs = parse_poly(poly, "T") if isinstance(poly, str) else list(poly)
    coeffs = [c % m for c in coeffs]
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    d = len(coeffs) - 1
    if d < 1:
        raise InvalidAlexanderSpec(f"polynomial {text!r} must have degree >= 1 mod {m}")
    lead = coeffs[-1]
    if gcd(lead, m) != 1:
        raise InvalidAlexanderSpec("leading coefficient must be a unit mod m")
    inv = pow(lead, -1, m)
    f = [c * inv % m for c in coeffs]
    # companion matrix of multiplication by T on the basis 1, T, ..., T^(d-1)
    T = [[0] * d for _ in range(d)]
    for j in range(d - 1):
        T[j + 1][j] = 1
    for i in range(d):
        T[i][d - 1] = (-f[i]) % m
    return AlexanderSpec(m, tuple(map(tuple, T)), f"alex:{m}:{text.replace(' ', '')}")


def gf_spec(fq: FqSpec, omega) -> AlexanderSpec:
    """``F_q[T]/(T - omega)``: multiplication by ``omega`` on coefficient vectors."""
    w = fq.parse(omega) if isinstance(omega, str) else int(omega)
    if w in (0, 1):
        raise InvalidAlexanderSpec("omega must differ from 0 and 1")
    h = fq.h
    T = [[0] * h for _ in range(h)]
    for j in range(h):
        col = fq.decode(fq.mul(w, fq.p**j))
        for i in range(h):
            T[i][j] = col[i]
    return AlexanderSpec(fq.p, tuple(map(tuple, T)), f"{fq}:omega={fq.format(w)}", fq=fq, omega=w)


def power_spec(base: AlexanderSpec, h: int) -> AlexanderSpec:
    if h < 1:
        raise InvalidAlexanderSpec("power needs h >= 1")
    spec = base
    for _ in range(h - 1):
        spec = spec.direct_sum(base)
    return AlexanderSpec(spec.m, spec.T, f"pow:{base.label}^{h}" if h > 1 else base.label)


def parse_alexander_spec(text: str) -> AlexanderSpec:
    """Parse ``dihedral:<m>``, ``alex:<m>:<poly in T>``,
    ``gf:<p>^<h>:<modulus>:omega=<elt>`` or ``pow:<spec>^<h>``."""
    text = text.strip()
    kind, _, rest = text.partition(":")
    if kind == "dihedral":
        return dihedral_spec(int(rest))
    if kind == "alex":
        m, _, poly = rest.partition(":")
        return alex_spec(int(m), poly)
    if kind == "gf":
        fpart, _, om = text.rpartition(":omega=")
        if not fpart:
            raise InvalidAlexanderSpec(f"missing omega in {text!r}")
        return gf_spec(parse_field(fpart), om)
    if kind == "pow":
        base, _, h = rest.rpartition("^")
        return power_spec(parse_alexander_spec(base), int(h))
    raise InvalidAlexanderSpec(f"unknown spec kind {kind!r}")


def alexander(spec: AlexanderSpec | str) -> FiniteQuandle:
    """The quandle ``x * y = T x + (1 - T) y`` on the module of ``spec``."""
    if isinstance(spec, str):
        spec = parse_alexander_spec(spec)
    if gcd(_det(spec.T) % spec.m, spec.m) != 1:
        raise InvalidAlexanderSpec(f"T is not invertible in {spec.label}")
    V = spec.vectors()
    TV = spec.apply_T(V)
    vals = (TV[:, None, :] - TV[None, :, :] + V[None, :, :]) % spec.m
    table = spec.encode(vals)
    tag = "dihedral" if spec.label.startswith("dihedral") else "alexander"
    return validate(table, tag=tag, alexander=spec)


def quandle_from_spec(text: str) -> FiniteQuandle:
    """Spec strings plus ``trivial:<l>`` and ``file:<path>``."""
    if text.startswith("trivial:"):
        return trivial(int(text.split(":", 1)[1]))
    if text.startswith("file:"):
        return read_table_file(text[5:])
    return alexander(text)


# --- table files ------------------------------------------------------------------

def read_table_file(path) -> FiniteQuandle:
    lines = [ln.strip() for ln in Path(path).read_text().splitlines() if ln.strip()]
    if not lines or lines[0] != "quandle v1":
        raise ValueError("missing 'quandle v1' header")
    if not lines[1].startswith("n="):
        raise ValueError("missing 'n=<count>' line")
    n = int(lines[1][2:])
    rows = [[int(v) for v in ln.split()] for ln in lines[2:]]
    if len(rows) != n or any(len(r) != n for r in rows):
        raise ValueError(f"expected {n} rows of {n} entries")
    return validate(rows, tag=f"file:{path}")


def write_table_file(X: FiniteQuandle, path) -> None:
    rows = "\n".join(" ".join(str(int(v)) for v in row) for row in X.table)
    Path(path).write_text(f"quandle v1\nn={X.n}\n{rows}\n")


# --- structure ----------------------------------------------------------------

def connected_components(X: FiniteQuandle) -> list[tuple[int, ...]]:
    """Orbits of Inn(X), each sorted, ordered by smallest element."""
    parent = list(range(X.n))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for x in range(X.n):
        for y in range(X.n):
            a, b = find(x), find(int(X.table[x, y]))
            if a != b:
                parent[max(a, b)] = min(a, b)
    parts: dict[int, list[int]] = {}
    for x in range(X.n):
        parts.setdefault(find(x), []).append(x)
    return [tuple(p) for _, p in sorted(parts.items())]


@dataclass(frozen=True)
class InnerGroup:
    generators: tuple[tuple[int, ...], ...]
    elements: tuple[tuple[int, ...], ...]

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def index(self) -> dict:
        return {g: i for i, g in enumerate(self.elements)}

    @staticmethod
    def compose(g, h):
        """``g`` followed by ``h``."""
        return tuple(h[i] for i in g)


def inner_group(X: FiniteQuandle, cap: int = 10**6) -> InnerGroup:
    """Breadth-first closure of the right translations."""
    gens = tuple(dict.fromkeys(X.right_translation(y) for y in range(X.n)))
    identity = tuple(range(X.n))
    seen = {identity: None}
    order = [identity]
    queue = deque([identity])
    while queue:
        g = queue.popleft()
        for s in gens:
            h = tuple(s[i] for i in g)
            if h not in seen:
                seen[h] = None
                order.append(h)
                if len(order) > cap:
                    raise GroupTooLarge(f"Inn(X) exceeds {cap} elements")
                queue.append(h)
    return InnerGroup(gens, tuple(order))


@dataclass(frozen=True)
class Regularity:
    e: int
    connected: bool
    regular: bool


def t_order(spec: AlexanderSpec, cap: int = 10**6) -> int:
    d = spec.d
    ident = [[int(i == j) for j in range(d)] for i in range(d)]
    P = [list(r) for r in spec.T]
    for k in range(1, cap + 1):
        if P == ident:
            return k
        P = _matmul_mod(P, [list(r) for r in spec.T], spec.m)
    raise GroupTooLarge("T-order exceeds cap")


def one_minus_T_invertible(spec: AlexanderSpec) -> bool:
    d = spec.d
    M = [[(int(i == j) - spec.T[i][j]) for j in range(d)] for i in range(d)]
    return gcd(_det(M) % spec.m, spec.m) == 1


def regularity(spec: AlexanderSpec | str) -> Regularity:
    if isinstance(spec, str):
        spec = parse_alexander_spec(spec)
    e = t_order(spec)
    connected = one_minus_T_invertible(spec)
    return Regularity(e, connected, connected and gcd(e, spec.size) == 1)


@dataclass
class InnReport:
    passed: bool
    order: int
    e: int
    n: int
    witness: str | None = None


def inn_structure_check(spec: AlexanderSpec | str) -> InnReport:
    """Compare the enumerated Inn(X) with ``Z/e`` acting on ``X`` by ``T``.

    ``(eps, x)`` is sent to ``y -> T^eps y + (1 - T) x``; with right actions the
    product is ``(e1, x1)(e2, x2) = (e1 + e2, T^e2 x1 + x2)``.
    """
    if isinstance(spec, str):
        spec = parse_alexander_spec(spec)
    X = alexander(spec)
    reg = regularity(spec)
    if not reg.connected:
        raise ValueError(f"{spec.label} is not connected")
    G = inner_group(X)
    e, n = reg.e, X.n
    V = spec.vectors()
    oneminusT = (V - spec.apply_T(V)) % spec.m
    perms = np.empty((e * n, n), dtype=np.int64)
    for eps in range(e):
        TeV = spec.apply_T(V, eps)
        perms[eps * n:(eps + 1) * n] = spec.encode(TeV[None, :, :] + oneminusT[:, None, :])
    report = InnReport(True, G.order, e, n)
    if G.order != e * n:
        report.passed, report.witness = False, f"|Inn|={G.order} but e*|X|={e * n}"
        return report
    images = {tuple(int(v) for v in row) for row in perms}
    if len(images) != e * n:
        report.passed, report.witness = False, "map (eps, x) -> permutation is not injective"
        return report
    if images != set(G.elements):
        report.passed, report.witness = False, "image differs from enumerated Inn(X)"
        return report
    # homomorphism: phi(a) followed by phi(b) equals phi(a*b)
    TV = [spec.apply_T(V, k) for k in range(e)]
    for e1 in range(e):
        for x1 in range(n):
            a = e1 * n + x1
            composed = perms[:, perms[a]]  # row b: phi(a) then phi(b)
            for e2 in range(e):
                x2s = np.arange(n)
                prod_x = spec.encode(TV[e2][x1][None, :] + V[x2s])
                rows = ((e1 + e2) % e) * n + prod_x
                if not np.array_equal(perms[rows], composed[e2 * n:(e2 + 1) * n]):
                    report.passed = False
                    report.witness = f"semidirect law fails at ({e1},{x1})*({e2},*)"
                    return report
    return report


# --- X-sets -----------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class XSetAction:
    """``action[x, y]`` is ``y . x`` for the generator ``x`` of As(X)."""

    action: np.ndarray
    kind: str = "custom"

    @property
    def size(self) -> int:
        return self.action.shape[1]

    def check(self, X: FiniteQuandle) -> bool:
        """``(y0 . x) . y == (y0 . y) . (x * y)`` for all ``x, y, y0``."""
        A = self.action
        for x in range(X.n):
            for y in range(X.n):
                if not np.array_equal(A[y][A[x]], A[X.table[x, y]][A[y]]):
                    return False
        return True


def point_action(X: FiniteQuandle) -> XSetAction:
    return XSetAction(np.zeros((X.n, 1), dtype=np.int64), "pt")


def self_action(X: FiniteQuandle) -> XSetAction:
    return XSetAction(np.ascontiguousarray(X.table.T), "X")


def inner_action(X: FiniteQuandle, G: InnerGroup | None = None) -> XSetAction:
    """Right multiplication of Inn(X) by the images of the generators."""
    G = G or inner_group(X)
    idx = G.index
    A = np.empty((X.n, G.order), dtype=np.int64)
    for x in range(X.n):
        r = X.right_translation(x)
        for i, g in enumerate(G.elements):
            A[x, i] = idx[InnerGroup.compose(g, r)]
    return XSetAction(A, "Inn")
