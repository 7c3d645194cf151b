"""Model hypersurfaces and the triangular matrix group S.

S sits inside the pseudounitary group of the antidiagonal form and is
parametrized by (mu, c, x, A):

        [ mu   -mu conj(x)^T H' A   c      ]
        [ 0     A                   x      ]
        [ 0     0                   1/conj(mu) ]

with A pseudounitary for the central block H' of the antidiagonal form and
2 Re(c/mu) + x^T H' conj(x) = 0.  Its Lie algebra has dimension n^2-2n+3,
which is exactly the second-largest stability dimension for m >= 1.

The model constructors build the three families of the classification:

  * umbilic:    F = sum C_{kr} u^r <z,z>^k, k >= 4          (dimension n^2)
  * theorem1:   F = sum C u^r |z_1|^{2p} <z,z>^q, m = 0     (n^2 - 2n + 2)
  * theorem2:   F = sum C u^r |z_n|^{2p} <z,z>^q, m >= 1,
                (r+q-1)/p = s fixed rational >= -1/2        (n^2 - 2n + 3)

and corollary2 is theorem2 with the single term +-|z_n|^4 (s = -1/2).

Maps z -> |mu|^{1/(s+1)} U z with U in S are automorphisms of the theorem2
models; the scale is generally irrational, so it is carried symbolically
as the pair (|mu|^2, 1/(2(s+1))) and invariance is decided by exponent
arithmetic, never numerically.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Mapping, Optional, Sequence, Tuple

from .autgroup import stabilizer_algebra
from .forms import (
    ANTIDIAGONAL,
    DIAGONAL,
    HermitianForm,
    is_pseudounitary,
    standard_form,
)
from .gaussrat import GaussianLike, GaussianRational, as_fraction, rational_root
from .linalg import Matrix, rational_nullspace
from .normal_form import Hypersurface, check_normal_form, is_function_of_form_and_u
from .poly import Poly

CASE_FULL = "FULL"
CASE_T1 = "T1_CASE"
CASE_T2 = "T2_CASE"
CASE_OTHER = "OTHER"


class ModelError(ValueError):
    """Invalid parameters for a model constructor or group element."""


def _central_form(n: int, m: int) -> Optional[HermitianForm]:
    """H': the antidiagonal form with first and last rows/columns removed."""
    if n < 2:
        raise ModelError("the group S needs n >= 2")
    if m < 1 or n < 2 * m:
        raise ModelError(f"S is defined for m >= 1 and n >= 2m, got ({n},{m})")
    if n == 2:
        return None
    return standard_form(n - 2, m - 1, ANTIDIAGONAL)


@dataclass(frozen=True)
class SElement:
    """Parameters (mu, c, x, A) of an element of S for signature (n-m, m)."""

    n: int
    m: int
    mu: GaussianRational
    c: GaussianRational
    x: Tuple[GaussianRational, ...]
    A: Matrix

    def __post_init__(self):
        object.__setattr__(self, "mu", GaussianRational.of(self.mu))
        object.__setattr__(self, "c", GaussianRational.of(self.c))
        object.__setattr__(self, "x", tuple(GaussianRational.of(v) for v in self.x))
        hp = _central_form(self.n, self.m)
        if self.mu.is_zero():
            raise ModelError("mu must be nonzero")
        if len(self.x) != self.n - 2:
            raise ModelError(f"x must have length n-2 = {self.n - 2}")
        if self.A.nrows != self.n - 2 or self.A.ncols != self.n - 2:
            raise ModelError(f"A must be {self.n - 2}x{self.n - 2}")
        if hp is not None and is_pseudounitary(self.A, hp) != 1:
            raise ModelError("A is not pseudounitary for the central block")
        xhx = hp.pair_values(self.x, self.x) if hp is not None else GaussianRational(0)
        corner = (self.c / self.mu + (self.c / self.mu).conjugate()) + xhx
        if not corner.is_zero():
            raise ModelError(
                "corner constraint 2Re(c/mu) + x^T H' conj(x) = 0 violated")

    @property
    def mu_abs2(self) -> Fraction:
        return self.mu.abs2()

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "m": self.m,
            "mu": self.mu.to_json(),
            "c": self.c.to_json(),
            "x": [v.to_json() for v in self.x],
            "A": self.A.to_json(),
        }

    @classmethod
    def from_json(cls, obj: dict) -> "SElement":
        return cls(
            n=int(obj["n"]),
            m=int(obj["m"]),
            mu=GaussianRational.from_json(obj["mu"]),
            c=GaussianRational.from_json(obj.get("c", {"re": "0", "im": "0"})),
            x=tuple(GaussianRational.from_json(v) for v in obj.get("x", [])),
            A=Matrix.from_json(obj["A"]) if obj.get("A") else Matrix.identity(int(obj["n"]) - 2),
        )


def s_to_matrix(element: SElement) -> Matrix:
    """Assemble the n x n matrix of an S element."""
    n = element.n
    hp = _central_form(element.n, element.m)
    rows = [[GaussianRational(0)] * n for _ in range(n)]
    rows[0][0] = element.mu
    rows[0][n - 1] = element.c
    if n > 2:
        # top middle block: -mu conj(x)^T H' A
        xbar_h = [GaussianRational(0)] * (n - 2)
        for j in range(n - 2):
            acc = GaussianRational(0)
            for k in range(n - 2):
                h = hp.matrix[k, j]
                if not h.is_zero():
                    acc = acc + element.x[k].conjugate() * h
            xbar_h[j] = acc
        for j in range(n - 2):
            acc = GaussianRational(0)
            for k in range(n - 2):
                if not xbar_h[k].is_zero():
                    acc = acc + xbar_h[k] * element.A[k, j]
            rows[0][j + 1] = -(element.mu * acc)
        for i in range(n - 2):
            for j in range(n - 2):
                rows[i + 1][j + 1] = element.A[i, j]
            rows[i + 1][n - 1] = element.x[i]
    rows[n - 1][n - 1] = GaussianRational(1) / element.mu.conjugate()
    return Matrix(rows)


def s_decompose(u_mat: Matrix, m: int) -> Optional[SElement]:
    """Recover the (mu, c, x, A) parameters, or None if U is not in S."""
    n = u_mat.nrows
    if not u_mat.is_square() or n < 2:
        return None
    for i in range(1, n):
        if not u_mat[i, 0].is_zero():
            return None
    for j in range(n - 1):
        if not u_mat[n - 1, j].is_zero():
            return None
    mu = u_mat[0, 0]
    if mu.is_zero():
        return None
    if not (u_mat[n - 1, n - 1] * mu.conjugate() - 1).is_zero():
        return None
    x = tuple(u_mat[i + 1, n - 1] for i in range(n - 2))
    a_block = Matrix([[u_mat[i + 1, j + 1] for j in range(n - 2)]
                      for i in range(n - 2)]) if n > 2 else Matrix.identity(0)
    try:
        element = SElement(n=n, m=m, mu=mu, c=u_mat[0, n - 1], x=x, A=a_block)
    except ModelError:
        return None
    if s_to_matrix(element) != u_mat:
        return None
    return element


def is_in_S(u_mat: Matrix, m: int) -> bool:
    return s_decompose(u_mat, m) is not None


def s_dimension(n: int, m: int) -> int:
    """Dimension of the Lie algebra of S by exact nullspace computation.

    Tangent vectors are n x n matrices satisfying the linearized
    pseudounitarity condition X^t H + H conj(X) = 0 together with the
    upper-triangular zero pattern of S (column 1 below the diagonal and row
    n left of the diagonal vanish); pseudounitarity pairs entry (a,b) with
    entry (n+1-b, n+1-a), so this system carries exactly the A-block
    condition and the differentiated corner constraint Re(dc) = 0.
    """
    if m < 1 or n < 2 * m:
        raise ModelError(f"S is defined for m >= 1 and n >= 2m, got ({n},{m})")
    form = standard_form(n, m, ANTIDIAGONAL)
    nv = 2 * n * n

    def xcol(a: int, b: int) -> int:
        return 2 * (a * n + b)

    rows = []
    for alpha in range(n):
        for beta in range(n):
            row_re = [Fraction(0)] * nv
            row_im = [Fraction(0)] * nv
            for k in range(n):
                h = form.matrix[k, beta]
                if not h.is_zero():
                    col = xcol(k, alpha)
                    row_re[col] += h.re
                    row_re[col + 1] += -h.im
                    row_im[col] += h.im
                    row_im[col + 1] += h.re
                g = form.matrix[alpha, k]
                if not g.is_zero():
                    col = xcol(k, beta)
                    row_re[col] += g.re
                    row_re[col + 1] += g.im
                    row_im[col] += g.im
                    row_im[col + 1] += -g.re
            rows.append(row_re)
            rows.append(row_im)
    for i in range(1, n):
        for part in (0, 1):
            row = [Fraction(0)] * nv
            row[xcol(i, 0) + part] = Fraction(1)
            rows.append(row)
    for j in range(n - 1):
        for part in (0, 1):
            row = [Fraction(0)] * nv
            row[xcol(n - 1, j) + part] = Fraction(1)
            rows.append(row)
    return len(rational_nullspace(rows, nv))


def s_named_subgroup(kind: str, n: int, m: int,
                     t: Optional[GaussianLike] = None,
                     c: Optional[GaussianLike] = None,
                     x: Optional[Sequence[GaussianLike]] = None) -> SElement:
    """A point of one of the named subgroups of S.

    I: unimodular mu via the Cayley parametrization mu = (1-t^2+2it)/(1+t^2),
       x = 0, A = E (t rational).
    J: mu = 1, A = E, data (c, x) subject to the corner constraint.
    K: mu = t > 0 rational, c = 0, x = 0, A = E.
    """
    ident = Matrix.identity(n - 2)
    zero_x = tuple(GaussianRational(0) for _ in range(n - 2))
    if kind == "K":
        tv = as_fraction(t)
        if tv <= 0:
            raise ModelError("K needs a positive rational parameter")
        return SElement(n=n, m=m, mu=GaussianRational(tv), c=GaussianRational(0),
                        x=zero_x, A=ident)
    if kind == "I":
        tv = as_fraction(t)
        den = 1 + tv * tv
        mu = GaussianRational((1 - tv * tv) / den, 2 * tv / den)
        return SElement(n=n, m=m, mu=mu, c=GaussianRational(0), x=zero_x, A=ident)
    if kind == "J":
        xv = tuple(GaussianRational.of(v) for v in (x if x is not None else zero_x))
        cv = GaussianRational.of(c if c is not None else 0)
        return SElement(n=n, m=m, mu=GaussianRational(1), c=cv, x=xv, A=ident)
    raise ModelError(f"unknown subgroup kind {kind!r}")


# -- model constructors ---------------------------------------------------------


def _as_coeff(value) -> Fraction:
    if isinstance(value, GaussianRational):
        if not value.is_real():
            raise ModelError("model coefficients must be real rationals")
        return value.re
    return as_fraction(value)


def model_umbilic(n: int, m: int, kind: str,
                  coeffs: Mapping[Tuple[int, int], object]) -> Hypersurface:
    """v = <z,z> + sum_{k>=4} C_{kr} u^r <z,z>^k; stability dimension n^2."""
    form = standard_form(n, m, kind)
    clean = {key: _as_coeff(val) for key, val in coeffs.items()}
    clean = {key: val for key, val in clean.items() if val}
    if not clean:
        raise ModelError("at least one coefficient must be nonzero")
    for (k, r) in clean:
        if k < 4:
            raise ModelError(
                f"power k={k} < 4: the trace conditions force F_22 = F_33 = 0")
        if r < 0:
            raise ModelError("u-power must be non-negative")
    q = form.inner_poly()
    f_poly = Poly.zero(n)
    max_w = 0
    for (k, r), value in sorted(clean.items()):
        f_poly = f_poly + (q**k * Poly.u(n).pow(r)).scale(value)
        max_w = max(max_w, 2 * k + 2 * r)
    return Hypersurface(form, f_poly, max_w)


def model_theorem1(n: int, coeffs: Mapping[Tuple[int, int, int], object]) -> Hypersurface:
    """v = sum |z_a|^2 + sum C_{pqr} u^r |z_1|^{2p} <z,z>^q, m = 0.

    Keys are (p, q, r); every key needs p+q >= 4 and at least one nonzero
    coefficient must have p >= 1 (otherwise the surface is in the umbilic
    family).  Stability dimension n^2 - 2n + 2 = 1 + (n-1)^2.
    """
    form = standard_form(n, 0, DIAGONAL)
    clean = {key: _as_coeff(val) for key, val in coeffs.items()}
    clean = {key: val for key, val in clean.items() if val}
    if not clean:
        raise ModelError("at least one coefficient must be nonzero")
    for (p, q, r) in clean:
        if p < 0 or q < 0 or r < 0:
            raise ModelError("exponents must be non-negative")
        if p + q < 4:
            raise ModelError(f"key (p={p}, q={q}): p+q >= 4 is required")
    if not any(p >= 1 for (p, q, r) in clean):
        raise ModelError("some nonzero coefficient must have p >= 1")
    q_poly = form.inner_poly()
    z1_abs2 = Poly.monomial(n, _unit(n, 0), _unit(n, 0), 0)
    f_poly = Poly.zero(n)
    max_w = 0
    for (p, q, r), value in sorted(clean.items()):
        term = (z1_abs2**p * q_poly**q * Poly.u(n).pow(r)).scale(value)
        f_poly = f_poly + term
        max_w = max(max_w, 2 * (p + q) + 2 * r)
    return Hypersurface(form, f_poly, max_w)


def model_theorem2(n: int, m: int, s: Fraction,
                   coeffs: Mapping[Tuple[int, int, int], object]) -> Hypersurface:
    """v = <z,z> (antidiagonal) + sum C_{rpq} u^r |z_n|^{2p} <z,z>^q, m >= 1.

    Keys are (r, p, q) with p >= 1, q, r >= 0 and (r+q-1)/p = s exactly;
    the construction additionally enforces F_23 = 0 and the trace
    conditions by rejection.  Stability dimension n^2 - 2n + 3.
    """
    if m < 1:
        raise ModelError("theorem2 models need m >= 1")
    s = as_fraction(s)
    if s < Fraction(-1, 2):
        raise ModelError("s must be a rational >= -1/2")
    form = standard_form(n, m, ANTIDIAGONAL)
    clean = {key: _as_coeff(val) for key, val in coeffs.items()}
    clean = {key: val for key, val in clean.items() if val}
    if not clean:
        raise ModelError("at least one coefficient must be nonzero")
    for (r, p, q) in clean:
        if p < 1 or q < 0 or r < 0:
            raise ModelError("exponents must satisfy p >= 1, q >= 0, r >= 0")
        if Fraction(r + q - 1, p) != s:
            raise ModelError(
                f"key (r={r}, p={p}, q={q}): (r+q-1)/p = {Fraction(r + q - 1, p)} != s = {s}")
        if p + q < 2:
            raise ModelError(
                f"key (r={r}, p={p}, q={q}): p+q >= 2 is required in normal form")
    q_poly = form.inner_poly()
    zn_abs2 = Poly.monomial(n, _unit(n, n - 1), _unit(n, n - 1), 0)
    f_poly = Poly.zero(n)
    max_w = 0
    for (r, p, q), value in sorted(clean.items()):
        f_poly = f_poly + (zn_abs2**p * q_poly**q * Poly.u(n).pow(r)).scale(value)
        max_w = max(max_w, 2 * (p + q) + 2 * r)
    surface = Hypersurface(form, f_poly, max_w)
    if not f_poly.bidegree_component(2, 3).is_zero():
        raise ModelError("F_23 does not vanish")  # unreachable for this family
    report = check_normal_form(surface)
    if not report.passed:
        names = ", ".join(name for name, _ in report.violations)
        raise ModelError(
            f"supplied coefficients violate the trace conditions ({names}); "
            f"no admissible surface for these terms")
    return surface


def model_corollary2(n: int, m: int, sign: int) -> Hypersurface:
    """v = <z,z> (antidiagonal) +- |z_n|^4: the non-umbilic extreme case."""
    if sign not in (1, -1):
        raise ModelError("sign must be +1 or -1")
    return model_theorem2(n, m, Fraction(-1, 2), {(0, 2, 0): Fraction(sign)})


def _unit(n: int, idx: int) -> Tuple[int, ...]:
    return tuple(1 if i == idx else 0 for i in range(n))


def theorem2_decompose(surface: Hypersurface) -> Dict[Tuple[int, int, int], Fraction]:
    """Exact (r, p, q) coefficients of F = sum C u^r |z_n|^{2p} <z,z>^q.

    Raises ModelError if F is not in the family.  Uses marker monomials:
    u^r z_1^q z_n^p conj(z_n)^{p+q} appears with coefficient C_{rpq} in the
    corresponding term and in no other member of the family.
    """
    n = surface.n
    if surface.form.kind != ANTIDIAGONAL:
        raise ModelError("theorem2 surfaces live over the antidiagonal form")
    f_poly = surface.F
    if f_poly.is_zero():
        raise ModelError("spherical surface is not a theorem2 model")
    q_poly = surface.form.inner_poly()
    zn_abs2 = Poly.monomial(n, _unit(n, n - 1), _unit(n, n - 1), 0)
    found: Dict[Tuple[int, int, int], Fraction] = {}
    reconstructed = Poly.zero(n)
    for (z, zb, r) in f_poly.terms:
        p = z[n - 1]
        q = z[0] if n >= 2 else 0
        # marker pattern: z = q*e_1 + p*e_n, zb = (p+q)*e_n
        marker_z = tuple(
            (q if i == 0 else 0) + (p if i == n - 1 else 0) for i in range(n))
        marker_zb = tuple(p + q if i == n - 1 else 0 for i in range(n))
        if z != marker_z or zb != marker_zb:
            continue
        coeff = f_poly.coeff((z, zb, r))
        if not coeff.is_real():
            raise ModelError("family coefficients must be real")
        key = (r, p, q)
        found[key] = coeff.re
        reconstructed = reconstructed + (
            zn_abs2**p * q_poly**q * Poly.u(n).pow(r)).scale(coeff.re)
    if reconstructed != f_poly:
        raise ModelError("F is not a polynomial in u, |z_n|^2 and <z,z>")
    out = {key: val for key, val in found.items() if val}
    if any(p == 0 for (_r, p, _q) in out):
        raise ModelError(
            "F contains pure <z,z> powers (p = 0): umbilic family, not a "
            "theorem2 model")
    return out


@dataclass(frozen=True)
class ScaledSAuto:
    """Map z -> |mu|^{1/(s+1)} U z, w -> |mu|^{2/(s+1)} w with U in S.

    The scale lambda = |mu|^{1/(s+1)} is carried symbolically as the pair
    (base |mu|^2, exponent 1/(2(s+1))); it is evaluated only when exactly
    rational.
    """

    s: Fraction
    element: SElement

    def __post_init__(self):
        object.__setattr__(self, "s", as_fraction(self.s))
        if self.s < Fraction(-1, 2):
            raise ModelError("s must be a rational >= -1/2")

    @property
    def scale_base(self) -> Fraction:
        return self.element.mu_abs2

    @property
    def scale_exponent(self) -> Fraction:
        return Fraction(1) / (2 * (self.s + 1))

    def rational_scale(self) -> Optional[Fraction]:
        """lambda as an exact rational when it is one, else None."""
        base = self.scale_base
        exp = self.scale_exponent
        if base == 1:
            return Fraction(1)
        if exp.denominator == 1:
            return base**exp.numerator
        root = rational_root(base, exp.denominator)
        if root is None:
            return None
        return root**exp.numerator


def verify_scaled_automorphism(surface: Hypersurface, auto: ScaledSAuto) -> bool:
    """Symbolic invariance of a theorem2 model under a scaled S map.

    With lambda a formal positive symbol satisfying lambda^{s+1} = |mu|, a
    family term u^r |z_n|^{2p} <z,z>^q picks up lambda^{2(r+p+q)} |mu|^{-2p}
    under the map (using <Uz,Uz> = <z,z> and |(Uz)_n|^2 = |z_n|^2/|mu|^2
    from the last row (0,...,0,1/conj(mu)) of U); invariance per monomial is
    the exponent identity (r+p+q-1)/(s+1) = p.
    """
    coeffs = theorem2_decompose(surface)
    svals = {Fraction(r + q - 1, p) for (r, p, q) in coeffs}
    if len(svals) != 1:
        raise ModelError("surface terms do not share a single exponent ratio s")
    s_surface = svals.pop()
    if s_surface != auto.s:
        raise ModelError(
            f"s mismatch: surface has s = {s_surface}, map has s = {auto.s}")
    if surface.n != auto.element.n or surface.m != auto.element.m:
        raise ModelError("signature mismatch between surface and map")
    u_mat = s_to_matrix(auto.element)
    # geometric facts, re-verified exactly on the assembled matrix
    if is_pseudounitary(u_mat, surface.form) != 1:
        return False
    n = surface.n
    mu = auto.element.mu
    for j in range(n - 1):
        if not u_mat[n - 1, j].is_zero():
            return False
    if not (u_mat[n - 1, n - 1] * mu.conjugate() - 1).is_zero():
        return False
    # per-monomial exponent identity, exact over Q
    for (r, p, q) in coeffs:
        if Fraction(r + p + q - 1) != p * (auto.s + 1):
            return False
    return True


@dataclass(frozen=True)
class ClassifyResult:
    case: str
    dim: int
    n: int
    m: int
    function_of_form_and_u: bool
    gap_ok: bool

    def to_json(self) -> dict:
        return {
            "case": self.case,
            "dim": self.dim,
            "n": self.n,
            "m": self.m,
            "function_of_form_and_u": self.function_of_form_and_u,
            "gap_ok": self.gap_ok,
        }


def forbidden_band(n: int, m: int) -> Tuple[int, int]:
    """Dimensions ruled out by the classification (inclusive bounds)."""
    lo = n * n - 2 * n + (3 if m == 0 else 4)
    return lo, n * n - 1


def classify(surface: Hypersurface) -> ClassifyResult:
    """Stability-dimension case analysis of a non-spherical normal-form surface."""
    if surface.F.is_zero():
        raise ModelError("classify requires a non-spherical surface")
    report = check_normal_form(surface)
    if not report.passed:
        names = ", ".join(name for name, _ in report.violations)
        raise ModelError(f"surface is not in normal form (violated: {names})")
    n, m = surface.n, surface.m
    result = stabilizer_algebra(surface)
    dim = result.dim
    func = is_function_of_form_and_u(surface)
    lo, hi = forbidden_band(n, m)
    gap_ok = not (lo <= dim <= hi)
    if func and dim != n * n:
        gap_ok = False
    if dim == n * n:
        case = CASE_FULL
    elif m == 0 and dim == n * n - 2 * n + 2:
        case = CASE_T1
    elif m >= 1 and dim == n * n - 2 * n + 3:
        case = CASE_T2
    else:
        case = CASE_OTHER
    return ClassifyResult(case=case, dim=dim, n=n, m=m,
                          function_of_form_and_u=func, gap_ok=gap_ok)
