"""Hermitian forms of signature (n-m, m) and the Lie algebra u(H).

The two standard shapes are the diagonal form diag(+1 x (n-m), -1 x m) and
the antidiagonal form with an identity block of size n-2m in the middle and
m ones on each side of it.  Explicit Hermitian matrices of the right
signature are accepted as well; the signature is certified by exact
inertia, never numerically.
"""

from __future__ import annotations

from fractions import Fraction
from typing import List, Optional, Sequence

from .gaussrat import GaussianLike, GaussianRational
from .linalg import Matrix, hermitian_inertia, rational_nullspace
from .poly import Poly

DIAGONAL = "diagonal"
ANTIDIAGONAL = "antidiagonal"
EXPLICIT = "explicit"


class HermitianForm:
    """Non-degenerate Hermitian form with signature (n-m, m), n >= 2m."""

    __slots__ = ("n", "m", "kind", "matrix", "_inverse", "_inner")

    def __init__(self, n: int, m: int, matrix: Matrix, kind: str = EXPLICIT):
        if n < 1:
            raise ValueError("n must be positive")
        if m < 0 or n < 2 * m:
            raise ValueError(f"signature parameter must satisfy n >= 2m, got n={n}, m={m}")
        if matrix.nrows != n or matrix.ncols != n:
            raise ValueError("form matrix has wrong size")
        if matrix.transpose() != matrix.conjugate():
            raise ValueError("form matrix is not Hermitian")
        pos, neg, zero = hermitian_inertia(matrix)
        if zero:
            raise ValueError("form matrix is degenerate")
        if (pos, neg) != (n - m, m):
            raise ValueError(
                f"form matrix has signature ({pos},{neg}), expected ({n - m},{m})"
            )
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "m", m)
        object.__setattr__(self, "kind", kind)
        object.__setattr__(self, "matrix", matrix)
        object.__setattr__(self, "_inverse", None)
        object.__setattr__(self, "_inner", None)

    def __setattr__(self, name, value):
        raise AttributeError("HermitianForm is immutable")

    def __eq__(self, other):
        if not isinstance(other, HermitianForm):
            return NotImplemented
        return (self.n, self.m, self.matrix) == (other.n, other.m, other.matrix)

    def __hash__(self):
        return hash((self.n, self.m, self.matrix))

    def __repr__(self):
        return f"HermitianForm(n={self.n}, m={self.m}, kind={self.kind})"

    def inverse_matrix(self) -> Matrix:
        if self._inverse is None:
            object.__setattr__(self, "_inverse", self.matrix.inverse())
        return self._inverse

    # -- polynomial pairing ---------------------------------------------------

    def inner_poly(self) -> Poly:
        """<z,z> as a bidegree-(1,1) real polynomial."""
        if self._inner is None:
            n = self.n
            terms = {}
            for a in range(n):
                for b in range(n):
                    h = self.matrix[a, b]
                    if not h.is_zero():
                        za = tuple(1 if i == a else 0 for i in range(n))
                        zbb = tuple(1 if i == b else 0 for i in range(n))
                        terms[(za, zbb, 0)] = h
            object.__setattr__(self, "_inner", Poly(n, terms))
        return self._inner

    def pair_values(self, left: Sequence[GaussianLike], right: Sequence[GaussianLike]) -> GaussianRational:
        """<left, right> = sum h_ab left_a conj(right_b) for constant vectors."""
        acc = GaussianRational(0)
        for a in range(self.n):
            la = GaussianRational.of(left[a])
            if la.is_zero():
                continue
            for b in range(self.n):
                h = self.matrix[a, b]
                if not h.is_zero():
                    acc = acc + h * la * GaussianRational.of(right[b]).conjugate()
        return acc

    def pair_polys(self, left: Sequence[Poly], right: Sequence[Poly],
                   max_weight: Optional[int] = None) -> Poly:
        """<left, right> with polynomial entries; the right slot is conjugated."""
        n_out = left[0].n
        acc = Poly.zero(n_out)
        rbar = [p.conjugate() for p in right]
        for a in range(self.n):
            for b in range(self.n):
                h = self.matrix[a, b]
                if not h.is_zero():
                    acc = acc + left[a].mul(rbar[b], max_weight).scale(h)
        return acc

    def pair_poly_const(self, left: Sequence[Poly], right: Sequence[GaussianLike]) -> Poly:
        """<left, right> with polynomial left entries and constant right vector."""
        n_out = left[0].n
        acc = Poly.zero(n_out)
        for a in range(self.n):
            for b in range(self.n):
                h = self.matrix[a, b]
                if not h.is_zero():
                    c = h * GaussianRational.of(right[b]).conjugate()
                    if not c.is_zero():
                        acc = acc + left[a].scale(c)
        return acc


def standard_form(n: int, m: int, kind: str) -> HermitianForm:
    """The diagonal or antidiagonal standard form of signature (n-m, m)."""
    if kind == DIAGONAL:
        if not 0 <= m <= n:
            raise ValueError("diagonal form needs 0 <= m <= n")
        rows = [[1 if i == j and i < n - m else (-1 if i == j else 0)
                 for j in range(n)] for i in range(n)]
    elif kind == ANTIDIAGONAL:
        if n < 2 * m:
            raise ValueError(f"antidiagonal form needs n >= 2m, got n={n}, m={m}")
        rows = [[0] * n for _ in range(n)]
        for i in range(m):
            rows[i][n - 1 - i] = 1
            rows[n - 1 - i][i] = 1
        for i in range(m, n - m):
            rows[i][i] = 1
    else:
        raise ValueError(f"unknown standard form kind {kind!r}")
    return HermitianForm(n, m, Matrix(rows), kind)


def form_from_json(obj: dict) -> HermitianForm:
    n = int(obj["n"])
    m = int(obj.get("m", 0))
    kind = obj.get("kind", DIAGONAL)
    if kind in (DIAGONAL, ANTIDIAGONAL):
        return standard_form(n, m, kind)
    if kind == EXPLICIT:
        return HermitianForm(n, m, Matrix.from_json(obj["matrix"]), EXPLICIT)
    raise ValueError(f"unknown form kind {kind!r}")


def form_to_json(form: HermitianForm) -> dict:
    obj = {"n": form.n, "m": form.m, "kind": form.kind}
    if form.kind == EXPLICIT:
        obj["matrix"] = form.matrix.to_json()
    return obj


def is_pseudounitary(u_mat: Matrix, form: HermitianForm) -> Optional[int]:
    """+1 if U^t H conj(U) = H, -1 if it equals -H (possible only when n = 2m)."""
    if u_mat.nrows != form.n or u_mat.ncols != form.n:
        raise ValueError("matrix size does not match the form")
    prod = u_mat.transpose() * form.matrix * u_mat.conjugate()
    if prod == form.matrix:
        return 1
    if prod == form.matrix.scale(-1):
        return -1
    return None


def is_in_lie_algebra(x_mat: Matrix, form: HermitianForm) -> bool:
    """X^t H + H conj(X) = 0, the derivative at identity of pseudounitarity."""
    if x_mat.nrows != form.n or x_mat.ncols != form.n:
        raise ValueError("matrix size does not match the form")
    defect = x_mat.transpose() * form.matrix + form.matrix * x_mat.conjugate()
    return defect.is_zero()


def u_basis(form: HermitianForm) -> List[Matrix]:
    """Real basis of u(H), found by exact rational nullspace computation.

    Each complex entry X_ab is split into real unknowns x_ab + i*y_ab
    (2n^2 of them); the n^2 complex equations of X^t H + H conj(X) = 0
    contribute two rational rows apiece.  The kernel always has real
    dimension n^2.
    """
    n = form.n
    nv = 2 * n * n

    def xcol(a: int, b: int) -> int:
        return 2 * (a * n + b)

    rows: List[List[Fraction]] = []
    for alpha in range(n):
        for beta in range(n):
            # entry (alpha, beta) of X^t H + H conj(X)
            row_re = [Fraction(0)] * nv
            row_im = [Fraction(0)] * nv
            for k in range(n):
                h = form.matrix[k, beta]
                if not h.is_zero():
                    c = xcol(k, alpha)
                    # coefficient of X_{k alpha} is h
                    row_re[c] += h.re
                    row_re[c + 1] += -h.im
                    row_im[c] += h.im
                    row_im[c + 1] += h.re
                g = form.matrix[alpha, k]
                if not g.is_zero():
                    c = xcol(k, beta)
                    # coefficient of conj(X_{k beta}) is g
                    row_re[c] += g.re
                    row_re[c + 1] += g.im
                    row_im[c] += g.im
                    row_im[c + 1] += -g.re
            rows.append(row_re)
            rows.append(row_im)
    basis_vecs = rational_nullspace(rows, nv)
    out = []
    for vec in basis_vecs:
        entries = [[GaussianRational(vec[xcol(a, b)], vec[xcol(a, b) + 1])
                    for b in range(n)] for a in range(n)]
        out.append(Matrix(entries))
    return out
