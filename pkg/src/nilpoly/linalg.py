"""Exact linear algebra over the rationals.

Elimination is fraction free: every row is scaled to a primitive integer
vector and combined as ``p[c]*r - r[c]*p`` (then divided by its content), so
no rational arithmetic happens inside the loop.  Rows are sparse dicts.
"""
from __future__ import annotations

from fractions import Fraction
from functools import reduce
from math import gcd, lcm
from typing import Iterable, Mapping, Sequence

from .poly import as_fraction

__all__ = ["RationalMatrix", "kernel_basis", "rref", "rank", "solve", "inverse", "span_rref"]


def _primitive(row: dict[int, int]) -> dict[int, int]:
    g = reduce(gcd, row.values(), 0)
    lead = row[min(row)]
    if lead < 0:
        g = -g
    if g != 1:
        row = {c: v // g for c, v in row.items()}
    return row


def _integer_row(entries: Mapping[int, Fraction]) -> dict[int, int]:
    den = 1
    for v in entries.values():
        den = lcm(den, v.denominator)
    row = {c: int(v * den) for c, v in entries.items() if v}
    return _primitive(row) if row else row


def _combine(pivot: dict[int, int], row: dict[int, int], col: int) -> dict[int, int]:
    a = pivot[col]
    b = row[col]
    g = gcd(a, b)
    a //= g
    b //= g
    out = {c: v * a for c, v in row.items()}
    for c, v in pivot.items():
        w = out.get(c, 0) - b * v
        if w:
            out[c] = w
        else:
            out.pop(c, None)
    return _primitive(out) if out else out


class _Echelon:
    """Incremental fraction-free echelon form (pivots keyed by leading column)."""

    def __init__(self):
        self.pivots: dict[int, dict[int, int]] = {}

    def add(self, row: dict[int, int]) -> bool:
        while row:
            c = min(row)
            p = self.pivots.get(c)
            if p is None:
                self.pivots[c] = row
                return True
            row = _combine(p, row, c)
        return False

    def reduced(self) -> dict[int, dict[int, int]]:
        """Back-substitute so every pivot column is zero outside its own row."""
        cols = sorted(self.pivots)
        rows = dict(self.pivots)
        for c in reversed(cols):
            p = rows[c]
            for c2 in cols:
                if c2 >= c:
                    break
                r = rows[c2]
                if c in r:
                    rows[c2] = _combine(p, r, c)
        return rows


class RationalMatrix:
    """Sparse exact matrix; ``entries`` maps ``(i, j)`` to a nonzero Fraction."""

    __slots__ = ("nrows", "ncols", "entries")

    def __init__(self, nrows: int, ncols: int, entries: Mapping[tuple[int, int], object] | None = None):
        self.nrows = nrows
        self.ncols = ncols
        self.entries = {}
        for (i, j), v in (entries or {}).items():
            if not (0 <= i < nrows and 0 <= j < ncols):
                raise IndexError(f"entry ({i}, {j}) outside a {nrows}x{ncols} matrix")
            v = as_fraction(v)
            if v:
                self.entries[(i, j)] = v

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[object]], ncols: int | None = None) -> RationalMatrix:
        if ncols is None:
            ncols = len(rows[0]) if rows else 0
        entries = {}
        for i, row in enumerate(rows):
            if len(row) != ncols:
                raise ValueError("ragged rows")
            for j, v in enumerate(row):
                if v:
                    entries[(i, j)] = v
        return cls(len(rows), ncols, entries)

    @classmethod
    def from_sparse_rows(cls, rows: Sequence[Mapping[int, object]], ncols: int) -> RationalMatrix:
        entries = {(i, j): v for i, row in enumerate(rows) for j, v in row.items()}
        return cls(len(rows), ncols, entries)

    def rows(self) -> list[dict[int, Fraction]]:
        out: list[dict[int, Fraction]] = [dict() for _ in range(self.nrows)]
        for (i, j), v in self.entries.items():
            out[i][j] = v
        return out

    def dense(self) -> list[list[Fraction]]:
        out = [[Fraction(0)] * self.ncols for _ in range(self.nrows)]
        for (i, j), v in self.entries.items():
            out[i][j] = v
        return out

    def __matmul__(self, vec: Sequence[Fraction]) -> list[Fraction]:
        out = [Fraction(0)] * self.nrows
        for (i, j), v in self.entries.items():
            out[i] += v * vec[j]
        return out

    def rank(self) -> int:
        return rank(self.rows(), self.ncols)

    def kernel_basis(self) -> list[tuple[Fraction, ...]]:
        return kernel_basis(self)


def _echelon(rows: Iterable[Mapping[int, object]]) -> _Echelon:
    ech = _Echelon()
    for r in rows:
        ir = _integer_row({c: as_fraction(v) for c, v in r.items() if v})
        if ir:
            ech.add(ir)
    return ech


def rank(rows: Iterable[Mapping[int, object]], ncols: int | None = None) -> int:
    return len(_echelon(_as_sparse(rows)).pivots)


def _as_sparse(rows) -> list[Mapping[int, object]]:
    out = []
    for r in rows:
        if isinstance(r, Mapping):
            out.append(r)
        else:
            out.append({j: v for j, v in enumerate(r) if v})
    return out


def rref(rows: Iterable, ncols: int) -> list[tuple[Fraction, ...]]:
    """Reduced row echelon form (nonzero rows only) as dense Fraction tuples."""
    red = _echelon(_as_sparse(rows)).reduced()
    out = []
    for c in sorted(red):
        r = red[c]
        lead = r[c]
        vec = [Fraction(0)] * ncols
        for j, v in r.items():
            vec[j] = Fraction(v, lead)
        out.append(tuple(vec))
    return out


def span_rref(vectors: Iterable[Sequence], ncols: int) -> tuple[tuple[Fraction, ...], ...]:
    """Canonical basis of the span of ``vectors``."""
    return tuple(rref(vectors, ncols))


def kernel_basis(matrix: RationalMatrix | Sequence[Sequence]) -> list[tuple[Fraction, ...]]:
    """Exact nullspace basis, itself in reduced row echelon form.

    Returns an empty list iff the matrix is injective.
    """
    if not isinstance(matrix, RationalMatrix):
        matrix = RationalMatrix.from_rows(matrix)
    ncols = matrix.ncols
    red = _echelon(matrix.rows()).reduced()
    pivot_cols = set(red)
    free = [j for j in range(ncols) if j not in pivot_cols]
    if not free:
        return []
    # column j of the reduced system -> pivot rows containing it
    by_col: dict[int, list[tuple[int, int, int]]] = {}
    for pc, r in red.items():
        lead = r[pc]
        for j, v in r.items():
            if j != pc:
                by_col.setdefault(j, []).append((pc, v, lead))
    vectors = []
    for j in free:
        vec = [Fraction(0)] * ncols
        vec[j] = Fraction(1)
        for pc, v, lead in by_col.get(j, ()):
            vec[pc] = Fraction(-v, lead)
        vectors.append(vec)
    return rref(vectors, ncols)


def solve(matrix: Sequence[Sequence], rhs: Sequence) -> list[Fraction]:
    """Unique solution of a square nonsingular system."""
    n = len(matrix)
    aug = [list(map(as_fraction, row)) + [as_fraction(b)] for row, b in zip(matrix, rhs)]
    red = rref(aug, n + 1)
    if len(red) != n or any(red[i][i] != 1 for i in range(n)):
        raise ValueError("singular system")
    return [red[i][n] for i in range(n)]


def inverse(matrix: Sequence[Sequence]) -> list[list[Fraction]]:
    n = len(matrix)
    aug = []
    for i, row in enumerate(matrix):
        if len(row) != n:
            raise ValueError("inverse needs a square matrix")
        aug.append([as_fraction(v) for v in row] + [Fraction(int(i == j)) for j in range(n)])
    red = rref(aug, 2 * n)
    if len(red) != n or any(red[i][i] != 1 for i in range(n)) or any(
        any(red[i][j] for j in range(n) if j != i) for i in range(n)
    ):
        raise ValueError("matrix is singular")
    return [list(r[n:]) for r in red]
