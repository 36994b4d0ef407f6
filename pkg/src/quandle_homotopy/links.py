"""Colourings of classical link diagrams and cocycle state sums.

PD conventions: ``X[a,b,c,d]`` lists the four edges counterclockwise starting
at the incoming under-edge ``a``, so ``c`` is the outgoing under-edge.  On a
positive crossing the over-strand runs ``d -> b``, on a negative one ``b -> d``.

Colouring rule: the edge on the left of the over-strand (looking along it)
gets ``x * y``, i.e. ``c = a * b`` at a positive crossing and ``a = c * b`` at
a negative one.  Regions obey the same rule, ``left = right * colour``.

At each crossing the weight is read in the source region (the quadrant both
normals point away from): ``+phi(a, b)`` / ``+theta(r, a, b)`` at a positive
crossing, ``-phi(c, b)`` / ``-theta(r, c, b)`` at a negative one.
"""

from __future__ import annotations

import re
from collections import Counter
from itertools import product as iter_product
from dataclasses import dataclass, field as dc_field
from pathlib import Path

import numpy as np

from .chains import rack_faces, rack_tuples
from .quandle import FiniteQuandle, connected_components, point_action
from .snf import IntegerMatrix, smith_normal_form


class DiagramError(ValueError):
    pass


class ArcCountMismatch(DiagramError):
    pass


class NonPlanar(DiagramError):
    pass


class InconsistentRegionSystem(RuntimeError):
    pass


class NotACocycle(ValueError):
    pass


class NotConnected(ValueError):
    pass


@dataclass(frozen=True)
class Crossing:
    edges: tuple[int, int, int, int]
    sign: int

    @property
    def over_in(self) -> int:
        return self.edges[3] if self.sign > 0 else self.edges[1]

    @property
    def over_out(self) -> int:
        return self.edges[1] if self.sign > 0 else self.edges[3]


class _UnionFind:
    def __init__(self, n):
        self.parent = list(range(n))

    def find(self, a):
        while self.parent[a] != a:
            self.parent[a] = self.parent[self.parent[a]]
            a = self.parent[a]
        return a

    def union(self, a, b):
        a, b = self.find(a), self.find(b)
        if a != b:
            self.parent[max(a, b)] = min(a, b)


@dataclass
class LinkDiagram:
    """A PD diagram.  ``free_loops`` counts crossingless circles (unknot, unlink)."""

    crossings: tuple[Crossing, ...]
    free_loops: int = 0
    name: str = ""
    edges: tuple[int, ...] = dc_field(init=False)
    regions: int = dc_field(init=False)
    # corner (v, k) is the quadrant between positions k and k+1 of crossing v
    corner_region: np.ndarray = dc_field(init=False, repr=False)
    # edge -> (region on its left, region on its right)
    sides: dict = dc_field(init=False, repr=False)
    components: int = dc_field(init=False)

    def __post_init__(self):
        if self.crossings and self.free_loops:
            raise DiagramError("free loops are only supported without crossings")
        slots: dict[int, list[tuple[int, int]]] = {}
        for v, x in enumerate(self.crossings):
            if x.sign not in (1, -1):
                raise DiagramError(f"crossing {v} has sign {x.sign}")
            for k, e in enumerate(x.edges):
                slots.setdefault(e, []).append((v, k))
        bad = [e for e, s in slots.items() if len(s) != 2]
        if bad:
            raise ArcCountMismatch(f"edge {bad[0]} appears {len(slots[bad[0]])} times")
        self.edges = tuple(sorted(slots))
        # orientation: each edge leaves one slot and enters the other
        out_slot, in_slot = {}, {}
        for v, x in enumerate(self.crossings):
            over_out = 1 if x.sign > 0 else 3
            for k, e in enumerate(x.edges):
                target = out_slot if k in (2, over_out) else in_slot
                if e in target:
                    raise DiagramError(f"edge {e} {'leaves' if target is out_slot else 'enters'} twice")
                target[e] = (v, k)
        if set(out_slot) != set(self.edges) or set(in_slot) != set(self.edges):
            raise DiagramError("inconsistent edge orientations")
        V = len(self.crossings)
        uf = _UnionFind(4 * V)
        for e in self.edges:
            (v1, p1), (v2, p2) = out_slot[e], in_slot[e]
            # left of e: corner (v1, p1) and corner (v2, p2 - 1)
            uf.union(4 * v1 + p1, 4 * v2 + (p2 - 1) % 4)
            uf.union(4 * v1 + (p1 - 1) % 4, 4 * v2 + p2)
        roots = sorted({uf.find(i) for i in range(4 * V)})
        index = {r: i for i, r in enumerate(roots)}
        self.corner_region = np.array([index[uf.find(i)] for i in range(4 * V)], dtype=np.int64)
        self.sides = {}
        for e in self.edges:
            v1, p1 = out_slot[e]
            self.sides[e] = (int(self.corner_region[4 * v1 + p1]),
                             int(self.corner_region[4 * v1 + (p1 - 1) % 4]))
        # connectivity of the underlying 4-valent graph
        guf = _UnionFind(max(V, 1))
        for e in self.edges:
            guf.union(out_slot[e][0], in_slot[e][0])
        pieces = len({guf.find(v) for v in range(V)}) if V else 0
        if V:
            self.regions = len(roots)
            if V - 2 * V + self.regions != 1 + pieces:
                raise NonPlanar(f"Euler count {V} - {2 * V} + {self.regions} != {1 + pieces}")
        else:
            self.regions = self.free_loops + 1
        self.components = self._count_components(out_slot) + self.free_loops

    def _count_components(self, out_slot) -> int:
        succ = {}
        for x in self.crossings:
            a, b, c, d = x.edges
            succ[a] = c
            succ[x.over_in] = x.over_out
        seen, comps = set(), 0
        for e in self.edges:
            if e in seen:
                continue
            comps += 1
            while e not in seen:
                seen.add(e)
                e = succ[e]
        return comps

    def mirror_reverse(self) -> "LinkDiagram":
        """The diagram of ``-L*``: crossings switched and every strand reversed."""
        out = []
        for x in self.crossings:
            a, b, c, d = x.edges
            if x.sign > 0:
                out.append(Crossing((b, c, d, a), -1))
            else:
                out.append(Crossing((d, a, b, c), 1))
        return LinkDiagram(tuple(out), self.free_loops, f"-({self.name})*" if self.name else "")

    def to_pd(self) -> str:
        if not self.crossings:
            return "\n".join(["O"] * self.free_loops) + "\n"
        lines = [f"X[{a},{b},{c},{d}] {'+' if x.sign > 0 else '-'}"
                 for x in self.crossings for a, b, c, d in [x.edges]]
        return "\n".join(lines) + "\n"


_X_LINE = re.compile(r"^X\[\s*(\d+)\s*,\s*(\d+)\s*,\s*(\d+)\s*,\s*(\d+)\s*\]\s*([+-])$")


def parse_pd(text: str, name: str = "") -> LinkDiagram:
    """Parse lines ``X[a,b,c,d] +`` / ``X[a,b,c,d] -``; ``O`` or ``unknot`` adds a free loop."""
    crossings, loops = [], 0
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line in ("O", "unknot"):
            loops += 1
            continue
        m = _X_LINE.match(line)
        if not m:
            raise DiagramError(f"cannot parse {raw!r}")
        crossings.append(Crossing(tuple(int(g) for g in m.groups()[:4]), 1 if m.group(5) == "+" else -1))
    if not crossings and not loops:
        raise DiagramError("empty diagram")
    return LinkDiagram(tuple(crossings), loops, name)


def braid_closure(word, strands: int | None = None, name: str = "") -> LinkDiagram:
    """PD code of the closure of a braid word (``i`` for sigma_i, ``-i`` for its inverse).

    Strands run upwards; sigma_i lets the strand from position i pass over
    the one from position i+1.
    """
    word = [int(g) for g in word]
    if not word:
        raise DiagramError("use a free loop for the trivial braid")
    n = strands or (max(abs(g) for g in word) + 1)
    touched = {abs(g) for g in word} | {abs(g) + 1 for g in word}
    if touched != set(range(1, n + 1)):
        raise DiagramError("every strand must take part in a crossing")
    fresh = iter(range(1, 10**9))
    bottom = [next(fresh) for _ in range(n)]
    cur = list(bottom)
    raw = []
    for g in word:
        i = abs(g) - 1
        lo, hi = cur[i], cur[i + 1]
        out_lo, out_hi = next(fresh), next(fresh)  # new labels at positions i, i+1
        if g > 0:
            raw.append(([hi, out_hi, out_lo, lo], 1))
        else:
            raw.append(([lo, hi, out_hi, out_lo], -1))
        cur[i], cur[i + 1] = out_lo, out_hi
    alias = {top: bot for top, bot in zip(cur, bottom)}
    used = sorted({alias.get(e, e) for edges, _ in raw for e in edges})
    relabel = {e: k + 1 for k, e in enumerate(used)}
    crossings = tuple(Crossing(tuple(relabel[alias.get(e, e)] for e in edges), s) for edges, s in raw)
    return LinkDiagram(crossings, 0, name)


def unknot(loops: int = 1) -> LinkDiagram:
    return LinkDiagram((), loops, "unknot" if loops == 1 else f"unlink{loops}")


# named braid words; the pairs below differ by a single Reidemeister move
BRAIDS = {
    "trefoil": ([1, 1, 1], 2),
    "trefoil-mirror": ([-1, -1, -1], 2),
    "figure-eight": ([1, -2, 1, -2], 3),
    "hopf": ([1, 1], 2),
    "cinquefoil": ([1, 1, 1, 1, 1], 2),
    "trefoil-r1": ([1, 1, 1, 2], 3),            # positive stabilization
    "trefoil-r1-neg": ([1, 1, 1, -2], 3),       # negative stabilization
    "trefoil-r2": ([1, 2, -2, 1, 1, 2], 3),
    "r3-left": ([1, 2, 1, 2], 3),
    "r3-right": ([2, 1, 2, 2], 3),
    "figure-eight-r2": ([1, -2, 2, -2, 1, -2], 3),
}

REIDEMEISTER_PAIRS = [
    ("R1+", "trefoil", "trefoil-r1"),
    ("R1-", "trefoil", "trefoil-r1-neg"),
    ("R2", "trefoil-r1", "trefoil-r2"),
    ("R2", "figure-eight", "figure-eight-r2"),
    ("R3", "r3-left", "r3-right"),
]


def builtin_diagram(name: str) -> LinkDiagram:
    if name == "unknot":
        return unknot()
    if name not in BRAIDS:
        raise KeyError(f"unknown diagram {name!r}; known: unknot, {', '.join(sorted(BRAIDS))}")
    word, n = BRAIDS[name]
    return braid_closure(word, n, name)


def load_diagram(ref: str) -> LinkDiagram:
    """A builtin name or a PD file path."""
    path = Path(ref)
    if path.exists():
        return parse_pd(path.read_text(), path.stem)
    return builtin_diagram(ref)


# --- colourings ---------------------------------------------------------------------

@dataclass(frozen=True)
class Coloring:
    arcs: dict  # edge -> element

    def __getitem__(self, e):
        return self.arcs[e]


@dataclass(frozen=True)
class ShadowColoring:
    coloring: Coloring
    regions: tuple[int, ...]


def _constraints(D: LinkDiagram):
    """Triples ``(left_in, over, left_out)`` meaning ``left_out = left_in * over``,
    plus the over-strand equalities."""
    rel, same = [], []
    for x in D.crossings:
        a, b, c, d = x.edges
        same.append((b, d))
        rel.append((a, b, c) if x.sign > 0 else (c, b, a))
    return rel, same


def colorings(X: FiniteQuandle, D: LinkDiagram, fixed: dict | None = None) -> list[Coloring]:
    """All colourings by backtracking with propagation; ``fixed`` pins edge colours."""
    if not D.crossings:
        # free loop k is keyed -1 - k
        out = []
        for colours in iter_product(range(X.n), repeat=D.free_loops):
            arcs = {-1 - k: x for k, x in enumerate(colours)}
            if not fixed or all(arcs.get(e) == x for e, x in fixed.items()):
                out.append(Coloring(arcs))
        return out
    T = X.table
    div = X.right_division  # div[z, y] = the x with x * y = z
    rel, same = _constraints(D)
    edges = list(D.edges)
    touching: dict[int, list] = {e: [] for e in edges}
    for k, (p, o, q) in enumerate(rel):
        for e in (p, o, q):
            touching[e].append(("r", k))
    for k, (u, v) in enumerate(same):
        touching[u].append(("s", k))
        touching[v].append(("s", k))

    def propagate(col, start):
        stack = list(start)
        while stack:
            e = stack.pop()
            for kind, k in touching[e]:
                if kind == "s":
                    u, v = same[k]
                    pairs = [(u, v), (v, u)]
                    for s_, t_ in pairs:
                        if s_ in col:
                            if t_ in col:
                                if col[t_] != col[s_]:
                                    return False
                            else:
                                col[t_] = col[s_]
                                stack.append(t_)
                else:
                    p, o, q = rel[k]
                    known = (p in col, o in col, q in col)
                    if known[0] and known[1]:
                        val = int(T[col[p], col[o]])
                        if q in col:
                            if col[q] != val:
                                return False
                        else:
                            col[q] = val
                            stack.append(q)
                    elif known[2] and known[1] and not known[0]:
                        col[p] = int(div[col[q], col[o]])
                        stack.append(p)
        return True

    out = []
    start = dict(fixed or {})
    if not propagate(start, list(start)):
        return []

    def search(col):
        free = [e for e in edges if e not in col]
        if not free:
            out.append(Coloring(dict(sorted(col.items()))))
            return
        # most constrained: the free edge touching the most coloured edges
        def score(e):
            return sum(1 for kind, k in touching[e]
                       for f in (same[k] if kind == "s" else rel[k]) if f in col)
        e = max(free, key=lambda f: (score(f), -f))
        for x in range(X.n):
            trial = dict(col)
            trial[e] = x
            if propagate(trial, [e]):
                search(trial)

    search(start)
    return out


def coloring_count(X: FiniteQuandle, D: LinkDiagram) -> int:
    return len(colorings(X, D))


def coloring_count_linear(X: FiniteQuandle, D: LinkDiagram) -> int:
    """Count colourings by an Alexander quandle as the kernel of a linear map over ``Z_m``."""
    spec = X.alexander
    if spec is None:
        raise ValueError("linear counting needs an Alexander quandle")
    m, d = spec.m, spec.d
    if not D.crossings:
        return X.n ** D.free_loops
    index = {e: k for k, e in enumerate(D.edges)}
    N = len(D.edges) * d
    T = np.array(spec.T, dtype=np.int64)
    I = np.eye(d, dtype=np.int64)
    rows = []
    rel, same = _constraints(D)
    for u, v in same:
        M = np.zeros((d, N), dtype=np.int64)
        M[:, index[u] * d:(index[u] + 1) * d] += I
        M[:, index[v] * d:(index[v] + 1) * d] -= I
        rows.append(M)
    for p, o, q in rel:
        # q - T p - (1 - T) o = 0
        M = np.zeros((d, N), dtype=np.int64)
        M[:, index[q] * d:(index[q] + 1) * d] += I
        M[:, index[p] * d:(index[p] + 1) * d] -= T
        M[:, index[o] * d:(index[o] + 1) * d] -= I - T
        rows.append(M)
    A = np.vstack(rows) % m
    snf = smith_normal_form(IntegerMatrix.from_dense(A.tolist()))
    count = m ** (N - snf.rank)
    from math import gcd
    for dv in snf.invariants:
        count *= gcd(dv, m)
    return count


def shadow_colorings(X: FiniteQuandle, D: LinkDiagram, base_region: int | None = None,
                     fixed: dict | None = None) -> list[ShadowColoring]:
    """Each colouring extended to regions by ``left = right * colour``."""
    out = []
    if not D.crossings:
        # the inside of a free loop is the outside acted on by the loop colour
        for c in colorings(X, D, fixed):
            for r0 in range(X.n) if base_region is None else [base_region]:
                inside = tuple(int(X.table[r0, c[-1 - k]]) for k in range(D.free_loops))
                out.append(ShadowColoring(c, (r0,) + inside))
        return out
    cols = colorings(X, D, fixed)
    T = X.table
    div = X.right_division
    adj: dict[int, list] = {r: [] for r in range(D.regions)}
    for e, (left, right) in D.sides.items():
        adj[right].append((left, e, True))
        adj[left].append((right, e, False))
    starts = range(X.n) if base_region is None else [base_region]
    for c in cols:
        for r0 in starts:
            reg = {0: r0}
            stack = [0]
            while stack:
                r = stack.pop()
                for s, e, forward in adj[r]:
                    val = int(T[reg[r], c[e]]) if forward else int(div[reg[r], c[e]])
                    if s in reg:
                        if reg[s] != val:
                            raise InconsistentRegionSystem(f"region {s} via edge {e}")
                    else:
                        reg[s] = val
                        stack.append(s)
            out.append(ShadowColoring(c, tuple(reg[r] for r in range(D.regions))))
    return out


# --- value groups and state sums ----------------------------------------------------

class CyclicValues:
    """``Z_n`` written additively."""

    def __init__(self, n: int):
        self.n = n

    def add(self, a, b):
        return (a + b) % self.n

    def neg(self, a):
        return (-a) % self.n

    def format(self, a) -> str:
        return str(a)

    def __eq__(self, other):
        return isinstance(other, CyclicValues) and other.n == self.n


class FieldValues:
    """The additive group of a finite field, elements by code."""

    def __init__(self, F):
        self.F = F

    def add(self, a, b):
        return self.F.add(a, b)

    def neg(self, a):
        return self.F.neg(a)

    def format(self, a) -> str:
        return self.F.format(a)

    def __eq__(self, other):
        return isinstance(other, FieldValues) and other.F == self.F


class StateSum:
    """A group-ring element ``sum n_g [g]``."""

    def __init__(self, group, counts: Counter | dict | None = None):
        self.group = group
        self.counts = Counter({g: n for g, n in (counts or {}).items() if n})

    @property
    def mass(self) -> int:
        return sum(self.counts.values())

    def involution(self) -> "StateSum":
        """``[g] -> [-g]``."""
        out = Counter()
        for g, n in self.counts.items():
            out[self.group.neg(g)] += n
        return StateSum(self.group, out)

    def scaled(self, k: int) -> "StateSum":
        return StateSum(self.group, {g: k * n for g, n in self.counts.items()})

    def is_trivial(self) -> bool:
        return set(self.counts) <= {0}

    def __eq__(self, other):
        return isinstance(other, StateSum) and self.counts == other.counts

    def __str__(self):
        if not self.counts:
            return "0"
        return " + ".join(f"{n}*[{self.group.format(g)}]" for g, n in sorted(self.counts.items()))

    __repr__ = __str__

    def to_json(self) -> dict:
        return {"terms": [[self.group.format(g), n] for g, n in sorted(self.counts.items())],
                "mass": self.mass}


def is_2_cocycle(phi: np.ndarray, X: FiniteQuandle, group) -> bool:
    """``phi(x, x) = 0`` and ``phi o d_3 = 0`` on every triple."""
    phi = np.asarray(phi)
    if any(phi[x, x] != 0 for x in range(X.n)):
        return False
    t = rack_tuples(1, X.n, 3)
    total = [0] * len(t)
    for s, face in rack_faces(X, point_action(X), t):
        vals = phi[face[:, 1], face[:, 2]]
        for k, v in enumerate(vals.tolist()):
            total[k] = group.add(total[k], v if s > 0 else group.neg(v))
    return not any(total)


def is_3_cocycle(theta: np.ndarray, X: FiniteQuandle, group) -> bool:
    """Quandle 3-cocycle condition for ``theta[x1, x2, x3]``."""
    theta = np.asarray(theta)
    t3 = rack_tuples(1, X.n, 3)[:, 1:]
    degenerate = (t3[:, 0] == t3[:, 1]) | (t3[:, 1] == t3[:, 2])
    if np.any(theta[t3[degenerate, 0], t3[degenerate, 1], t3[degenerate, 2]] != 0):
        return False
    t = rack_tuples(1, X.n, 4)
    total = [0] * len(t)
    for s, face in rack_faces(X, point_action(X), t):
        vals = theta[face[:, 1], face[:, 2], face[:, 3]]
        for k, v in enumerate(vals.tolist()):
            total[k] = group.add(total[k], v if s > 0 else group.neg(v))
    return not any(total)


def polynomial_table(f, X: FiniteQuandle | None = None) -> np.ndarray:
    """A three-variable cocycle polynomial as an array ``theta[x1, x2, x3]``."""
    q = f.field.q
    return f.table().reshape(q, q, q).transpose(2, 1, 0)


def polynomial_table_2(f) -> np.ndarray:
    """A polynomial in ``U0 = x1 - x2``, ``U1 = x2`` as ``phi[x1, x2]``."""
    F = f.field
    q = F.q
    x1, x2 = np.meshgrid(np.arange(q), np.arange(q), indexing="ij")
    sub = F.add_table[:, F.neg_table]
    return f.values(sub[x1, x2], x2, np.zeros_like(x1))


def cocycle_invariant_2(D: LinkDiagram, X: FiniteQuandle, phi, group, check: bool = True,
                        fixed: dict | None = None) -> StateSum:
    phi = np.asarray(phi)
    if check and not is_2_cocycle(phi, X, group):
        raise NotACocycle("phi fails the 2-cocycle condition")
    out = Counter()
    for c in colorings(X, D, fixed):
        w = 0
        for x in D.crossings:
            a, b, cc, d = x.edges
            if x.sign > 0:
                w = group.add(w, int(phi[c[a], c[b]]))
            else:
                w = group.add(w, group.neg(int(phi[c[cc], c[b]])))
        out[w] += 1
    return StateSum(group, out)


def shadow_invariant_3(D: LinkDiagram, X: FiniteQuandle, theta, group, check: bool = True,
                       fixed: dict | None = None) -> StateSum:
    theta = np.asarray(theta)
    if check and not is_3_cocycle(theta, X, group):
        raise NotACocycle("theta fails the 3-cocycle condition")
    out = Counter()
    for sc in shadow_colorings(X, D, fixed=fixed):
        c, reg = sc.coloring, sc.regions
        w = 0
        for v, x in enumerate(D.crossings):
            a, b, cc, d = x.edges
            if x.sign > 0:
                r = reg[D.corner_region[4 * v]]
                w = group.add(w, int(theta[r, c[a], c[b]]))
            else:
                r = reg[D.corner_region[4 * v + 1]]
                w = group.add(w, group.neg(int(theta[r, c[cc], c[b]])))
        out[w] += 1
    return StateSum(group, out)


# --- structural checks ---------------------------------------------------------------

@dataclass
class LinkCheck:
    name: str
    passed: bool
    lhs: str
    rhs: str

    def to_json(self) -> dict:
        return {"check": self.name, "passed": self.passed, "lhs": self.lhs, "rhs": self.rhs}


def based_reduction(D: LinkDiagram, X: FiniteQuandle, invariant, arc: int | None = None,
                    x0: int = 0) -> LinkCheck:
    """Full state sum equals ``|X|`` times the sum over colourings with ``arc`` coloured ``x0``.

    ``invariant(D, fixed)`` evaluates a state sum restricted by ``fixed``.
    """
    if len(connected_components(X)) != 1:
        raise NotConnected("based reduction needs a connected quandle")
    full = invariant(D, None)
    if arc is None:
        arc = D.edges[0] if D.crossings else -1
    based = invariant(D, {arc: x0})
    rhs = based.scaled(X.n)
    return LinkCheck("based reduction", full == rhs, str(full), f"{X.n} x ({based})")


def mirror_check(D: LinkDiagram, invariant) -> LinkCheck:
    """The invariant of ``-D*`` equals the original with every group element negated."""
    lhs = invariant(D.mirror_reverse(), None)
    rhs = invariant(D, None).involution()
    return LinkCheck("mirror", lhs == rhs, str(lhs), str(rhs))
