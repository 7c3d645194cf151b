"""Exact linear algebra over Q and Q(i).

Small dense matrices with GaussianRational entries (products, inverses,
determinants) plus two rational kernels used throughout the Lie-algebra
computations: reduced row echelon nullspace over Q and Hermitian inertia
by exact congruence elimination.  Everything is deterministic: pivots are
always chosen at the smallest admissible index.
"""

from __future__ import annotations

from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from .gaussrat import GaussianLike, GaussianRational


class SingularMatrixError(ZeroDivisionError):
    pass


class Matrix:
    """Immutable dense matrix of GaussianRational entries."""

    __slots__ = ("nrows", "ncols", "rows")

    def __init__(self, rows: Sequence[Sequence[GaussianLike]]):
        conv = tuple(
            tuple(GaussianRational.of(e) for e in row) for row in rows
        )
        if conv and any(len(r) != len(conv[0]) for r in conv):
            raise ValueError("ragged rows")
        object.__setattr__(self, "rows", conv)
        object.__setattr__(self, "nrows", len(conv))
        object.__setattr__(self, "ncols", len(conv[0]) if conv else 0)

    def __setattr__(self, name, value):
        raise AttributeError("Matrix is immutable")

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, r: int, c: int) -> "Matrix":
        return cls([[0] * c for _ in range(r)])

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def is_square(self) -> bool:
        return self.nrows == self.ncols

    def is_zero(self) -> bool:
        return all(e.is_zero() for row in self.rows for e in row)

    def __add__(self, other: "Matrix") -> "Matrix":
        self._same_shape(other)
        return Matrix([
            [a + b for a, b in zip(ra, rb)] for ra, rb in zip(self.rows, other.rows)
        ])

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._same_shape(other)
        return Matrix([
            [a - b for a, b in zip(ra, rb)] for ra, rb in zip(self.rows, other.rows)
        ])

    def __neg__(self) -> "Matrix":
        return Matrix([[-e for e in row] for row in self.rows])

    def _same_shape(self, other: "Matrix"):
        if self.nrows != other.nrows or self.ncols != other.ncols:
            raise ValueError("shape mismatch")

    def scale(self, c: GaussianLike) -> "Matrix":
        c = GaussianRational.of(c)
        return Matrix([[e * c for e in row] for row in self.rows])

    def __mul__(self, other):
        if isinstance(other, Matrix):
            if self.ncols != other.nrows:
                raise ValueError("shape mismatch in product")
            cols = list(zip(*other.rows))
            return Matrix([
                [_dot(row, col) for col in cols] for row in self.rows
            ])
        return self.scale(other)

    __rmul__ = scale

    def mulvec(self, vec: Sequence[GaussianLike]) -> List[GaussianRational]:
        if len(vec) != self.ncols:
            raise ValueError("vector length mismatch")
        v = [GaussianRational.of(e) for e in vec]
        return [_dot(row, v) for row in self.rows]

    def transpose(self) -> "Matrix":
        return Matrix(list(zip(*self.rows))) if self.rows else self

    def conjugate(self) -> "Matrix":
        return Matrix([[e.conjugate() for e in row] for row in self.rows])

    def conj_transpose(self) -> "Matrix":
        return self.transpose().conjugate()

    def det(self) -> GaussianRational:
        if not self.is_square():
            raise ValueError("determinant of non-square matrix")
        a = [list(row) for row in self.rows]
        n = self.nrows
        det = GaussianRational(1)
        for col in range(n):
            piv = next((r for r in range(col, n) if not a[r][col].is_zero()), None)
            if piv is None:
                return GaussianRational(0)
            if piv != col:
                a[col], a[piv] = a[piv], a[col]
                det = -det
            det = det * a[col][col]
            inv = GaussianRational(1) / a[col][col]
            for r in range(col + 1, n):
                if a[r][col].is_zero():
                    continue
                f = a[r][col] * inv
                for c in range(col, n):
                    a[r][c] = a[r][c] - f * a[col][c]
        return det

    def inverse(self) -> "Matrix":
        if not self.is_square():
            raise ValueError("inverse of non-square matrix")
        n = self.nrows
        a = [list(row) + [GaussianRational(1 if i == j else 0) for j in range(n)]
             for i, row in enumerate(self.rows)]
        for col in range(n):
            piv = next((r for r in range(col, n) if not a[r][col].is_zero()), None)
            if piv is None:
                raise SingularMatrixError("matrix is singular")
            if piv != col:
                a[col], a[piv] = a[piv], a[col]
            inv = GaussianRational(1) / a[col][col]
            a[col] = [e * inv for e in a[col]]
            for r in range(n):
                if r != col and not a[r][col].is_zero():
                    f = a[r][col]
                    a[r] = [e - f * p for e, p in zip(a[r], a[col])]
        return Matrix([row[n:] for row in a])

    # -- serialization: row-major entries with string rationals -----------------

    def to_json(self) -> list:
        return [[e.to_json() for e in row] for row in self.rows]

    @classmethod
    def from_json(cls, obj) -> "Matrix":
        return cls([[GaussianRational.from_json(e) for e in row] for row in obj])

    def __repr__(self):
        return f"Matrix({self.nrows}x{self.ncols})"

    def __str__(self):
        return "[" + "; ".join(
            " ".join(str(e) for e in row) for row in self.rows
        ) + "]"


def _dot(row, col):
    acc = GaussianRational(0)
    for a, b in zip(row, col):
        acc = acc + a * b
    return acc


def rational_rref(rows: List[List[Fraction]]) -> Tuple[List[List[Fraction]], List[int]]:
    """In-place reduced row echelon form over Q; returns (rows, pivot columns)."""
    if not rows:
        return rows, []
    ncols = len(rows[0])
    pivots: List[int] = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [e * inv for e in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [e - f * p for e, p in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows, pivots


def rational_nullspace(rows: List[List[Fraction]], ncols: Optional[int] = None) -> List[List[Fraction]]:
    """Basis of the kernel of a rational matrix, deterministically ordered.

    Basis vectors carry a 1 in their free column and are listed by
    ascending free-column index.
    """
    if ncols is None:
        if not rows:
            raise ValueError("ncols required for an empty system")
        ncols = len(rows[0])
    work = [list(map(Fraction, row)) for row in rows if any(row)]
    work, pivots = rational_rref(work)
    pivot_set = set(pivots)
    free = [c for c in range(ncols) if c not in pivot_set]
    basis = []
    for fc in free:
        vec = [Fraction(0)] * ncols
        vec[fc] = Fraction(1)
        for r, pc in enumerate(pivots):
            vec[pc] = -work[r][fc]
        basis.append(vec)
    return basis


def hermitian_inertia(m: Matrix) -> Tuple[int, int, int]:
    """(positive, negative, zero) inertia of a Hermitian matrix.

    Exact congruence diagonalization (Schur-complement elimination).  When
    the whole active diagonal vanishes, the smallest nonzero off-diagonal
    entry M_ij is folded in through the basis change e_i := e_i + c*e_j with
    c in {1, i}; the new diagonal value is 2*Re(conj(c)*M_ij), and one of
    the two choices of c is always nonzero.
    """
    if not m.is_square():
        raise ValueError("inertia of non-square matrix")
    n = m.nrows
    a = [[m.rows[i][j] for j in range(n)] for i in range(n)]
    pos = neg = zero = 0
    k = 0
    while k < n:
        piv = next((j for j in range(k, n) if not a[j][j].is_zero()), None)
        if piv is None:
            target = None
            for i in range(k, n):
                for j in range(i + 1, n):
                    if not a[i][j].is_zero():
                        target = (i, j)
                        break
                if target:
                    break
            if target is None:
                zero += n - k
                break
            i, j = target
            mij = a[i][j]
            c = GaussianRational(1) if mij.re else GaussianRational(0, 1)
            cb = c.conjugate()
            new_ii = c * a[j][i] + cb * mij  # both diagonals vanish here
            for t in range(n):
                if t != i:
                    a[i][t] = a[i][t] + c * a[j][t]
                    a[t][i] = a[t][i] + cb * a[t][j]
            a[i][i] = new_ii
            continue
        if piv != k:
            _swap_sym(a, k, piv)
        d = a[k][k]
        if d.re > 0:
            pos += 1
        else:
            neg += 1
        dinv = GaussianRational(1) / d
        col_k = [a[i][k] for i in range(n)]
        for i in range(k + 1, n):
            ci = col_k[i]
            if not ci.is_zero():
                f = ci * dinv
                for j in range(k + 1, n):
                    a[i][j] = a[i][j] - f * col_k[j].conjugate()
            a[i][k] = GaussianRational(0)
            a[k][i] = GaussianRational(0)
        k += 1
    return pos, neg, zero


def _swap_sym(a, i, j):
    n = len(a)
    a[i], a[j] = a[j], a[i]
    for r in range(n):
        a[r][i], a[r][j] = a[r][j], a[r][i]
