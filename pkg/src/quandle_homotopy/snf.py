"""Exact Smith normal form for sparse integer matrices.

Elimination runs on a dict-of-rows representation.  Unit pivots are taken
first (cheapest by a Markowitz-style count); whatever survives is reduced by
the classical minimal-absolute-value pivoting.  Only the diagonal is kept.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass

import numpy as np

from .abelian import invariant_factors


class IntegerMatrix:
    """Sparse exact integer matrix stored as ``{row: {col: value}}``."""

    __slots__ = ("nrows", "ncols", "rows")

    def __init__(self, nrows: int, ncols: int, rows: dict | None = None):
        self.nrows = nrows
        self.ncols = ncols
        self.rows = rows if rows is not None else {}

    @classmethod
    def from_coo(cls, nrows, ncols, r, c, v) -> "IntegerMatrix":
        """Build from coordinate triples; repeated positions are summed."""
        rows: dict[int, dict[int, int]] = {}
        for i, j, x in zip(np.asarray(r).tolist(), np.asarray(c).tolist(), np.asarray(v).tolist()):
            row = rows.setdefault(i, {})
            s = row.get(j, 0) + x
            if s:
                row[j] = s
            else:
                row.pop(j, None)
        return cls(nrows, ncols, {i: row for i, row in rows.items() if row})

    @classmethod
    def from_dense(cls, a) -> "IntegerMatrix":
        a = [list(map(int, row)) for row in a]
        nrows = len(a)
        ncols = len(a[0]) if a else 0
        rows = {}
        for i, row in enumerate(a):
            d = {j: v for j, v in enumerate(row) if v}
            if d:
                rows[i] = d
        return cls(nrows, ncols, rows)

    @property
    def shape(self):
        return (self.nrows, self.ncols)

    @property
    def nnz(self) -> int:
        return sum(len(r) for r in self.rows.values())

    def copy(self) -> "IntegerMatrix":
        return IntegerMatrix(self.nrows, self.ncols, {i: dict(r) for i, r in self.rows.items()})

    def to_dense(self) -> np.ndarray:
        out = np.zeros((self.nrows, self.ncols), dtype=object)
        for i, row in self.rows.items():
            for j, v in row.items():
                out[i, j] = v
        return out

    def transpose(self) -> "IntegerMatrix":
        rows: dict[int, dict[int, int]] = {}
        for i, row in self.rows.items():
            for j, v in row.items():
                rows.setdefault(j, {})[i] = v
        return IntegerMatrix(self.ncols, self.nrows, rows)

    def matmul(self, other: "IntegerMatrix") -> "IntegerMatrix":
        if self.ncols != other.nrows:
            raise ValueError("shape mismatch")
        rows = {}
        for i, row in self.rows.items():
            acc: dict[int, int] = {}
            for k, a in row.items():
                for j, b in other.rows.get(k, {}).items():
                    acc[j] = acc.get(j, 0) + a * b
            acc = {j: v for j, v in acc.items() if v}
            if acc:
                rows[i] = acc
        return IntegerMatrix(self.nrows, other.ncols, rows)

    def is_zero(self) -> bool:
        return not self.rows


@dataclass(frozen=True)
class SNFResult:
    rank: int
    invariants: tuple[int, ...]  # all nonzero diagonal entries, d1 | d2 | ...

    @property
    def torsion(self) -> tuple[int, ...]:
        return tuple(d for d in self.invariants if d > 1)


class _Eliminator:
    """Shared state for sparse elimination: rows plus a column index."""

    def __init__(self, M: IntegerMatrix, modulus: int | None = None):
        self.mod = modulus
        if modulus is None:
            self.rows = {i: dict(r) for i, r in M.rows.items()}
        else:
            self.rows = {}
            for i, r in M.rows.items():
                d = {j: v % modulus for j, v in r.items() if v % modulus}
                if d:
                    self.rows[i] = d
        self.cols: dict[int, set[int]] = {}
        for i, r in self.rows.items():
            for j in r:
                self.cols.setdefault(j, set()).add(i)

    def axpy(self, target: int, factor: int, source: dict):
        """row[target] -= factor * source."""
        row = self.rows[target]
        cols, mod = self.cols, self.mod
        for j, v in source.items():
            nv = row.get(j, 0) - factor * v
            if mod is not None:
                nv %= mod
            if nv:
                if j not in row:
                    cols.setdefault(j, set()).add(target)
                row[j] = nv
            elif j in row:
                del row[j]
                cols[j].discard(target)
        if not row:
            del self.rows[target]

    def drop_row(self, i: int):
        for j in self.rows.pop(i):
            s = self.cols[j]
            s.discard(i)
            if not s:
                del self.cols[j]

    def is_unit(self, v: int) -> bool:
        return self.mod is not None or v in (1, -1)

    def unit_pass(self) -> int:
        """Eliminate with unit pivots until none remain; return their count."""
        count = 0
        heap = [(len(r), i) for i, r in self.rows.items()]
        heapq.heapify(heap)
        mod = self.mod
        while heap:
            length, i = heapq.heappop(heap)
            row = self.rows.get(i)
            if row is None or len(row) != length:
                continue
            best, best_cost = None, None
            for j, v in row.items():
                if self.is_unit(v):
                    cost = len(self.cols[j])
                    if best is None or cost < best_cost:
                        best, best_cost = j, cost
                        if cost == 1:
                            break
            if best is None:
                continue
            j = best
            pv = row[j]
            inv = pow(pv, -1, mod) if mod is not None else pv
            pivot_row = dict(row)
            for k in sorted(self.cols[j] - {i}):
                f = self.rows[k][j] * inv
                if mod is not None:
                    f %= mod
                self.axpy(k, f, pivot_row)
                if k in self.rows:
                    heapq.heappush(heap, (len(self.rows[k]), k))
            self.drop_row(i)
            count += 1
        return count

    def unit_pass_by_column(self) -> int:
        """Like :meth:`unit_pass` but visits the sparsest columns first."""
        count = 0
        heap = [(len(s), j) for j, s in self.cols.items()]
        heapq.heapify(heap)
        mod = self.mod
        while heap:
            length, j = heapq.heappop(heap)
            rows_j = self.cols.get(j)
            if not rows_j or len(rows_j) != length:
                continue
            best, best_len = None, None
            for i in rows_j:
                row = self.rows[i]
                if self.is_unit(row[j]) and (best is None or len(row) < best_len):
                    best, best_len = i, len(row)
            if best is None:
                continue
            i = best
            row = self.rows[i]
            pv = row[j]
            inv = pow(pv, -1, mod) if mod is not None else pv
            pivot_row = dict(row)
            for k in sorted(rows_j - {i}):
                f = self.rows[k][j] * inv
                if mod is not None:
                    f %= mod
                self.axpy(k, f, pivot_row)
            self.drop_row(i)
            for c in pivot_row:
                s = self.cols.get(c)
                if s:
                    heapq.heappush(heap, (len(s), c))
            count += 1
        return count

    def general_pass(self) -> list[int]:
        """Classical Smith reduction of what is left (no unit entries expected)."""
        diag = []
        while self.rows:
            # smallest absolute value, ties broken by sparsity
            i, j, pv = None, None, None
            for r, row in self.rows.items():
                for c, v in row.items():
                    a = abs(v)
                    if pv is None or a < pv or (a == pv and len(self.cols[c]) + len(row) < len(self.cols[j]) + len(self.rows[i])):
                        i, j, pv = r, c, a
            v = self.rows[i][j]
            done = True
            pivot_row = dict(self.rows[i])
            for k in sorted(self.cols[j] - {i}):
                q = self.rows[k][j] // v
                if q:
                    self.axpy(k, q, pivot_row)
                if k in self.rows and j in self.rows[k]:
                    done = False
            # column operations to clear the pivot row
            for c in sorted(set(self.rows[i]) - {j}):
                q = self.rows[i][c] // v
                if q:
                    for k in list(self.cols.get(j, ())):
                        row = self.rows[k]
                        nv = row.get(c, 0) - q * row[j]
                        if nv:
                            if c not in row:
                                self.cols.setdefault(c, set()).add(k)
                            row[c] = nv
                        elif c in row:
                            del row[c]
                            self.cols[c].discard(k)
                            if not self.cols[c]:
                                del self.cols[c]
                if c in self.rows[i]:
                    done = False
            if done and self.cols[j] == {i} and len(self.rows[i]) == 1:
                diag.append(abs(v))
                self.drop_row(i)
        return diag


def smith_normal_form(M: IntegerMatrix | np.ndarray | list) -> SNFResult:
    """Rank and invariant factors (with the leading ones) of ``M``."""
    if not isinstance(M, IntegerMatrix):
        M = IntegerMatrix.from_dense(M)
    el = _Eliminator(M)
    units = el.unit_pass()
    rest = el.general_pass()
    rank = units + len(rest)
    torsion = invariant_factors(rest)
    ones = rank - len(torsion)
    return SNFResult(rank, (1,) * ones + torsion)


def rank_mod_p(M: IntegerMatrix, p: int) -> int:
    el = _Eliminator(M, modulus=p)
    return el.unit_pass()
