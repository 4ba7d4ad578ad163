"""Exact rational matrices: rank, determinant, reduced row echelon form, kernels."""

from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import Iterable, Sequence


def _fraction(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


class RationalMatrix:
    """Immutable dense matrix with Fraction entries."""

    __slots__ = ("rows", "cols", "_data")

    def __init__(self, data: Iterable[Sequence], cols: int | None = None):
        rows = [tuple(_fraction(x) for x in row) for row in data]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        for row in rows:
            if len(row) != cols:
                raise ValueError("ragged matrix rows")
        self._data = tuple(rows)
        self.rows = len(rows)
        self.cols = cols

    @classmethod
    def identity(cls, n: int) -> "RationalMatrix":
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "RationalMatrix":
        return cls([[0] * cols for _ in range(rows)], cols)

    def __getitem__(self, idx):
        i, j = idx
        return self._data[i][j]

    def row(self, i: int) -> tuple:
        return self._data[i]

    def col(self, j: int) -> tuple:
        return tuple(r[j] for r in self._data)

    def tolist(self) -> list[list[Fraction]]:
        return [list(r) for r in self._data]

    def __eq__(self, other):
        return isinstance(other, RationalMatrix) and self._data == other._data

    def __hash__(self):
        return hash(self._data)

    def __repr__(self):
        body = "; ".join(" ".join(str(x) for x in r) for r in self._data)
        return f"RationalMatrix([{body}])"

    def transpose(self) -> "RationalMatrix":
        return RationalMatrix([self.col(j) for j in range(self.cols)], self.rows)

    def __matmul__(self, other):
        if isinstance(other, RationalMatrix):
            if self.cols != other.rows:
                raise ValueError("dimension mismatch")
            ot = other.transpose()._data
            return RationalMatrix(
                [[sum(a * b for a, b in zip(r, c)) for c in ot] for r in self._data],
                other.cols,
            )
        vec = [_fraction(x) for x in other]
        if len(vec) != self.cols:
            raise ValueError("dimension mismatch")
        return tuple(sum(a * b for a, b in zip(r, vec)) for r in self._data)

    def rank(self) -> int:
        return _bareiss_rank(self._data, self.cols)

    def det(self) -> Fraction:
        if self.rows != self.cols:
            raise ValueError("determinant of a non-square matrix")
        return _bareiss_det(self._data)

    def rref(self) -> tuple["RationalMatrix", list[int]]:
        m = [list(r) for r in self._data]
        pivots = []
        r = 0
        for c in range(self.cols):
            piv = next((i for i in range(r, self.rows) if m[i][c] != 0), None)
            if piv is None:
                continue
            m[r], m[piv] = m[piv], m[r]
            inv = 1 / m[r][c]
            m[r] = [x * inv for x in m[r]]
            for i in range(self.rows):
                if i != r and m[i][c] != 0:
                    f = m[i][c]
                    m[i] = [a - f * b for a, b in zip(m[i], m[r])]
            pivots.append(c)
            r += 1
            if r == self.rows:
                break
        return RationalMatrix(m, self.cols), pivots

    def nullspace(self) -> list[tuple[Fraction, ...]]:
        """Basis of {v : M v = 0}."""
        red, pivots = self.rref()
        free = [c for c in range(self.cols) if c not in pivots]
        basis = []
        for f in free:
            v = [Fraction(0)] * self.cols
            v[f] = Fraction(1)
            for i, p in enumerate(pivots):
                v[p] = -red[i, f]
            basis.append(tuple(v))
        return basis

    def solve(self, rhs: Sequence) -> tuple[Fraction, ...] | None:
        """One solution of M v = rhs, or None when inconsistent."""
        aug = RationalMatrix(
            [list(r) + [_fraction(b)] for r, b in zip(self._data, rhs)], self.cols + 1
        )
        red, pivots = aug.rref()
        if self.cols in pivots:
            return None
        v = [Fraction(0)] * self.cols
        for i, p in enumerate(pivots):
            v[p] = red[i, self.cols]
        return tuple(v)

    def inverse(self) -> "RationalMatrix":
        n = self.rows
        if n != self.cols:
            raise ValueError("inverse of a non-square matrix")
        aug = RationalMatrix(
            [list(r) + [1 if i == j else 0 for j in range(n)] for i, r in enumerate(self._data)],
            2 * n,
        )
        red, pivots = aug.rref()
        if pivots[:n] != list(range(n)):
            raise ZeroDivisionError("singular matrix")
        return RationalMatrix([red.row(i)[n:] for i in range(n)], n)


def _integer_rows(data) -> list[list[int]]:
    out = []
    for row in data:
        den = lcm(*(x.denominator for x in row)) if row else 1
        out.append([int(x * den) for x in row])
    return out


def _bareiss_rank(data, cols: int) -> int:
    # fraction-free elimination on integer-scaled rows
    m = _integer_rows(data)
    rows = len(m)
    rank = 0
    prev = 1
    for c in range(cols):
        piv = next((i for i in range(rank, rows) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        p = m[rank][c]
        for i in range(rank + 1, rows):
            a = m[i][c]
            m[i] = [(p * m[i][j] - a * m[rank][j]) // prev for j in range(cols)]
        prev = p
        rank += 1
        if rank == rows:
            break
    return rank


def _bareiss_det(data) -> Fraction:
    n = len(data)
    if n == 0:
        return Fraction(1)
    scale = Fraction(1)
    m = []
    for row in data:
        den = lcm(*(x.denominator for x in row))
        scale /= den
        m.append([int(x * den) for x in row])
    sign = 1
    prev = 1
    for k in range(n - 1):
        piv = next((i for i in range(k, n) if m[i][k] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != k:
            m[k], m[piv] = m[piv], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
            m[i][k] = 0
        prev = m[k][k]
    return sign * m[n - 1][n - 1] * scale
