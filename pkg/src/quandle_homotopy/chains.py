"""Rack, degenerate, quandle and late-degenerate chain complexes.

A generator of ``C_n`` is ``(y; x_1, ..., x_n)`` with ``y`` in an X-set ``Y``;
its rack index is ``y + |Y| * sum(x_k * |X|**(k-1))``.  The boundary is

    d(y; x) = sum_i (-1)^i [ (y.x_i; x_1*x_i, ..., x_{i-1}*x_i, x_{i+1}, ..., x_n)
                             - (y; x_1, ..., ^x_i, ..., x_n) ]

which for a one-point ``Y`` loses its ``i = 1`` terms.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

import numpy as np
import scipy.sparse as sp

from .abelian import AbelianGroupClass
from .quandle import FiniteQuandle, XSetAction, point_action
from .snf import IntegerMatrix, SNFResult, rank_mod_p, smith_normal_form

VARIANTS = ("R", "D", "Q", "L")


class BudgetExceeded(MemoryError):
    pass


class DegreeOutOfRange(IndexError):
    pass


class BoundaryNotNilpotent(AssertionError):
    pass


DEFAULT_BUDGET = 4 * 10**6


def default_degree_cap(X: FiniteQuandle, Y: XSetAction) -> int:
    if Y.kind == "Inn":
        return 3
    if Y.size == 1:
        return 5 if X.n <= 5 else 4
    return 4 if X.n <= 5 else 3


def rack_tuples(ny: int, nx: int, n: int) -> np.ndarray:
    """All rack generators of degree ``n`` as rows ``[y, x_1, ..., x_n]`` in index order."""
    idx = np.arange(ny * nx**n, dtype=np.int64)
    cols = [idx % ny]
    rest = idx // ny
    for _ in range(n):
        cols.append(rest % nx)
        rest = rest // nx
    return np.stack(cols, axis=1)


def encode_tuples(tuples: np.ndarray, ny: int, nx: int) -> np.ndarray:
    n = tuples.shape[1] - 1
    code = np.zeros(tuples.shape[0], dtype=np.int64)
    for k in range(n, 0, -1):
        code = code * nx + tuples[:, k]
    return code * ny + tuples[:, 0]


def degenerate_mask(tuples: np.ndarray, lo: int = 1) -> np.ndarray:
    """Rows with ``x_i == x_{i+1}`` for some ``lo <= i <= n-1``."""
    n = tuples.shape[1] - 1
    mask = np.zeros(tuples.shape[0], dtype=bool)
    for i in range(lo, n):
        mask |= tuples[:, i] == tuples[:, i + 1]
    return mask


def rack_faces(X: FiniteQuandle, Y: XSetAction, tuples: np.ndarray):
    """Yield ``(sign, face_tuples)`` for every term of the boundary formula."""
    n = tuples.shape[1] - 1
    T, A = X.table, Y.action
    twisted = Y.size > 1
    for i in range(1, n + 1):
        s = -1 if i % 2 else 1
        if i == 1 and not twisted:
            continue  # the two i=1 faces coincide
        xi = tuples[:, i]
        act = np.empty((tuples.shape[0], n), dtype=np.int64)
        act[:, 0] = A[xi, tuples[:, 0]]
        for j in range(1, i):
            act[:, j] = T[tuples[:, j], xi]
        act[:, i:] = tuples[:, i + 1:]
        yield s, act
        yield -s, np.delete(tuples, i, axis=1)


@dataclass
class ChainComplex:
    """Bases and boundary matrices of one variant up to degree ``n_max``.

    ``bases[n]`` holds the rack indices of the basis of ``C_n``;
    ``boundaries[n]`` is a scipy CSR matrix of shape ``(dim C_{n-1}, dim C_n)``.
    """

    quandle: FiniteQuandle
    coefficients: XSetAction
    variant: str
    n_max: int
    bases: list = dc_field(default_factory=list)
    boundaries: dict = dc_field(default_factory=dict)
    _snf: dict = dc_field(default_factory=dict, repr=False)
    _rank_p: dict = dc_field(default_factory=dict, repr=False)

    def dim(self, n: int) -> int:
        return len(self.bases[n])

    def basis_tuples(self, n: int) -> np.ndarray:
        t = rack_tuples(self.coefficients.size, self.quandle.n, n)
        return t[self.bases[n]]

    def integer_matrix(self, n: int) -> IntegerMatrix:
        """``d_n`` transposed: one short row per generator of ``C_n``."""
        M = self.boundaries[n].T.tocoo()
        return IntegerMatrix.from_coo(M.shape[0], M.shape[1], M.row, M.col, M.data)

    def snf(self, n: int) -> SNFResult:
        if n not in self._snf:
            if n not in self.boundaries:
                raise DegreeOutOfRange(f"no boundary in degree {n} (n_max={self.n_max})")
            self._snf[n] = smith_normal_form(self.integer_matrix(n))
        return self._snf[n]

    def rank(self, n: int, p: int | None = None) -> int:
        if n <= 0:
            return 0
        if n not in self.boundaries:
            raise DegreeOutOfRange(f"no boundary in degree {n} (n_max={self.n_max})")
        if p is None:
            return self.snf(n).rank
        key = (n, p)
        if key not in self._rank_p:
            if n in self._snf:
                r = self._snf[n]
                self._rank_p[key] = sum(1 for d in r.invariants if d % p)
            else:
                self._rank_p[key] = rank_mod_p(self.integer_matrix(n), p)
        return self._rank_p[key]


def build_complex(X: FiniteQuandle, Y: XSetAction | None = None, variant: str = "Q",
                  n_max: int | None = None, budget: int = DEFAULT_BUDGET,
                  check: bool = True) -> ChainComplex:
    """Build bases and boundaries of ``C^variant_n(X; Z[Y])`` for ``n <= n_max``."""
    if variant not in VARIANTS:
        raise ValueError(f"variant must be one of {VARIANTS}")
    Y = Y if Y is not None else point_action(X)
    if variant == "L" and Y.size > 1:
        raise ValueError("the late-degenerate complex is only closed for one-point coefficients")
    if n_max is None:
        n_max = default_degree_cap(X, Y)
    ny, nx = Y.size, X.n
    total = sum(ny * nx**k for k in range(n_max + 1))
    if total > budget:
        raise BudgetExceeded(f"{total} rack generators up to degree {n_max} exceed budget {budget}")

    C = ChainComplex(X, Y, variant, n_max)
    position = []  # rack index -> position in basis, -1 outside
    for n in range(n_max + 1):
        t = rack_tuples(ny, nx, n)
        if variant == "R":
            keep = np.ones(len(t), dtype=bool)
        elif variant == "D":
            keep = degenerate_mask(t, 1)
        elif variant == "L":
            keep = degenerate_mask(t, 2)
        else:
            keep = ~degenerate_mask(t, 1)
        idx = np.nonzero(keep)[0]
        pos = np.full(len(t), -1, dtype=np.int64)
        pos[idx] = np.arange(len(idx))
        C.bases.append(idx)
        position.append(pos)

    for n in range(1, n_max + 1):
        t = rack_tuples(ny, nx, n)[C.bases[n]]
        cols = np.arange(len(t))
        rr, cc, vv = [np.zeros(0, np.int64)], [np.zeros(0, np.int64)], [np.zeros(0, np.int64)]
        for s, face in rack_faces(X, Y, t):
            rr.append(encode_tuples(face, ny, nx))
            cc.append(cols)
            vv.append(np.full(len(t), s, dtype=np.int64))
        # sum in the full rack basis first so that cancelling faces disappear
        M = sp.coo_matrix((np.concatenate(vv), (np.concatenate(rr), np.concatenate(cc))),
                          shape=(ny * nx ** (n - 1), len(t))).tocsr()
        M.sum_duplicates()
        M.eliminate_zeros()
        M = M.tocoo()
        target = position[n - 1][M.row]
        ok = target >= 0
        if variant in ("D", "L") and not ok.all():
            raise AssertionError(f"{variant}-subcomplex not closed in degree {n}")
        M = sp.csr_matrix((M.data[ok], (target[ok], M.col[ok])),
                          shape=(C.dim(n - 1), C.dim(n)), dtype=np.int64)
        C.boundaries[n] = M
    if check:
        for n in range(2, n_max + 1):
            P = C.boundaries[n - 1] @ C.boundaries[n]
            P.eliminate_zeros()
            if P.nnz:
                raise BoundaryNotNilpotent(f"d_{n - 1} d_{n} != 0 for {variant}")
    return C


def homology(C: ChainComplex, n: int, p: int | None = None):
    """``H_n`` over Z (an AbelianGroupClass) or its dimension over ``F_p``."""
    if n < 0 or n + 1 > C.n_max:
        raise DegreeOutOfRange(f"H_{n} needs boundaries up to degree {n + 1}, have {C.n_max}")
    dim = C.dim(n)
    r_in = C.rank(n, p) if n >= 1 else 0
    if p is None:
        out = C.snf(n + 1)
        free = dim - r_in - out.rank
        return AbelianGroupClass(free, out.torsion)
    return dim - r_in - C.rank(n + 1, p)


def homology_json(C: ChainComplex, n: int, label: str | None = None) -> dict:
    H = homology(C, n)
    return {
        "quandle": label or C.quandle.name,
        "variant": C.variant,
        "coefficients": C.coefficients.kind if C.coefficients.kind in ("pt", "X", "Inn") else "custom",
        "degree": n,
        "rank": H.rank,
        "torsion": list(H.torsion),
    }
