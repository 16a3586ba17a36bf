"""Exact Gaussian elimination over the rationals."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

try:
    from gmpy2 import mpq as _fast
except ImportError:  # pragma: no cover
    _fast = None


@dataclass(frozen=True)
class RationalMatrix:
    entries: Tuple[Tuple[Fraction, ...], ...]
    cols: int

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], cols: Optional[int] = None) -> "RationalMatrix":
        data = tuple(tuple(Fraction(v) for v in row) for row in rows)
        if cols is None:
            cols = len(data[0]) if data else 0
        if any(len(row) != cols for row in data):
            raise ValueError("matrix rows must all have the same length")
        return cls(data, cols)

    @classmethod
    def identity(cls, k: int) -> "RationalMatrix":
        return cls.from_rows([[int(i == j) for j in range(k)] for i in range(k)], k)

    @property
    def rows(self) -> int:
        return len(self.entries)

    @property
    def shape(self) -> Tuple[int, int]:
        return (self.rows, self.cols)

    def __getitem__(self, idx):
        i, j = idx
        return self.entries[i][j]

    def to_lists(self) -> List[List[Fraction]]:
        return [list(row) for row in self.entries]


def row_echelon(m: List[List[Fraction]]) -> List[int]:
    """Reduce ``m`` in place to reduced row echelon form; return pivot columns."""
    if _fast is None:
        return _rref(m)
    # gmpy2 rationals are exact and several times faster than Fraction
    work = [[_fast(v.numerator, v.denominator) for v in row] for row in m]
    pivots = _rref(work)
    m[:] = [[Fraction(int(v.numerator), int(v.denominator)) for v in row] for row in work]
    return pivots


def _rref(m) -> List[int]:
    n_rows = len(m)
    n_cols = len(m[0]) if m else 0
    pivots = []
    r = 0
    for c in range(n_cols):
        if r == n_rows:
            break
        piv = next((i for i in range(r, n_rows) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][c]
        row_r = [v * inv for v in m[r]]
        m[r] = row_r
        for i in range(n_rows):
            if i != r:
                f = m[i][c]
                if f:
                    row_i = m[i]
                    m[i] = [a - f * b for a, b in zip(row_i, row_r)]
        pivots.append(c)
        r += 1
    return pivots


def rank(m: RationalMatrix) -> int:
    if m.rows == 0 or m.cols == 0:
        return 0
    return len(row_echelon(m.to_lists()))


def nullspace(m: RationalMatrix) -> List[List[Fraction]]:
    """Basis of the right kernel, one vector per free column (free entry = 1)."""
    work = m.to_lists()
    pivots = row_echelon(work) if work else []
    free = [c for c in range(m.cols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * m.cols
        v[f] = Fraction(1)
        for r, pc in enumerate(pivots):
            v[pc] = -work[r][f]
        basis.append(v)
    return basis


def solve(m: RationalMatrix, rhs: Sequence) -> Optional[List[Fraction]]:
    """One solution of ``m v = rhs`` (free variables zero), or None if inconsistent."""
    aug = [list(row) + [Fraction(b)] for row, b in zip(m.entries, rhs)]
    pivots = row_echelon(aug)
    if pivots and pivots[-1] == m.cols:
        return None
    v = [Fraction(0)] * m.cols
    for r, pc in enumerate(pivots):
        v[pc] = aug[r][-1]
    return v


def inverse(m: RationalMatrix) -> Optional[RationalMatrix]:
    k = m.rows
    if k != m.cols:
        raise ValueError("only square matrices have inverses")
    aug = [list(row) + [Fraction(int(i == j)) for j in range(k)] for i, row in enumerate(m.entries)]
    pivots = row_echelon(aug)
    if len(pivots) < k or pivots[k - 1] != k - 1:
        return None
    return RationalMatrix(tuple(tuple(row[k:]) for row in aug), k)
