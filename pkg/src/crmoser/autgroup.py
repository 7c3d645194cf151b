"""Automorphism machinery: parameter jets, the quadric map, invariance.

Every origin-preserving automorphism of a normal-form surface is pinned
down by the parameter tuple (U, a, lambda, sigma, r) read off its 2-jet:

    df/dz(0) = lambda U,       df/dw(0) = lambda U a,
    dg/dw(0) = sigma lambda^2, Re d2g/dw2(0) = 2 sigma lambda^2 r.

This module extracts those parameters, expands the explicit hyperquadric
automorphism with given parameters as a truncated series, checks linear
invariance exactly, solves the infinitesimal linear-stabilizer system,
applies the weight-raising operator T, evaluates the weight-(gamma+1)
identity that drives the linearization arguments, and reparametrizes a
surface by the 1-parameter fractional-linear family z -> z/(1+qw),
w -> w/(1+qw).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from .forms import HermitianForm, is_pseudounitary, u_basis
from .gaussrat import GaussianRational, rational_sqrt
from .jets import HoloPoly, JetMap
from .linalg import Matrix, rational_nullspace
from .normal_form import Hypersurface
from .poly import Poly

IU = GaussianRational(0, 1)


class ExtractionError(ValueError):
    """The jet does not determine exact rational automorphism parameters."""


class TruncationError(ValueError):
    """Requested verification weight exceeds what the jet truncation supports."""


@dataclass(frozen=True)
class AutoParams:
    """(U, a, lambda, sigma, r) with lambda > 0 rational and sigma = +-1."""

    U: Matrix
    a: Tuple[GaussianRational, ...]
    lam: Fraction
    sigma: int
    r: Fraction

    def __post_init__(self):
        object.__setattr__(self, "a", tuple(GaussianRational.of(c) for c in self.a))
        object.__setattr__(self, "lam", Fraction(self.lam))
        object.__setattr__(self, "r", Fraction(self.r))
        if self.lam <= 0:
            raise ValueError("lambda must be positive")
        if self.sigma not in (1, -1):
            raise ValueError("sigma must be +1 or -1")
        if len(self.a) != self.U.nrows:
            raise ValueError("a must have one entry per dimension")

    def to_json(self) -> dict:
        return {
            "U": self.U.to_json(),
            "a": [c.to_json() for c in self.a],
            "lambda": str(self.lam),
            "sigma": self.sigma,
            "r": str(self.r),
        }


@dataclass(frozen=True)
class InfSym:
    """Infinitesimal linear symmetry: direction X in u(H) plus scale rate rho."""

    X: Matrix
    rho: Fraction


@dataclass(frozen=True)
class StabilizerResult:
    dim: int
    basis: Tuple[InfSym, ...]
    spherical: bool


def extract_params(jet: JetMap, form: HermitianForm) -> AutoParams:
    """Read (U, a, lambda, sigma, r) off a jet; everything must stay rational."""
    n = form.n
    if jet.n != n:
        raise ValueError("jet dimension does not match the form")
    gw = jet.g.w_linear_coeff()
    if gw.is_zero() or not gw.is_real():
        raise ExtractionError(
            f"dg/dw(0) must be a nonzero real rational, got {gw}")
    for k in range(n):
        if not jet.g.z_linear_coeff(k).is_zero():
            raise ExtractionError("dg/dz(0) must vanish for an extractable jet")
    sigma = 1 if gw.re > 0 else -1
    lam = rational_sqrt(abs(gw.re))
    if lam is None:
        raise ExtractionError("irrational scale — supply parameters directly")
    lam_inv = GaussianRational(Fraction(1) / lam)
    fz = Matrix([[jet.f[i].z_linear_coeff(k) * lam_inv for k in range(n)]
                 for i in range(n)])
    if is_pseudounitary(fz, form) != sigma:
        raise ExtractionError("U not pseudounitary")
    fw = [jet.f[i].w_linear_coeff() * lam_inv for i in range(n)]
    a = tuple(fz.inverse().mulvec(fw))
    gww = jet.g.w_quadratic_coeff() * 2  # d2g/dw2(0)
    r = gww.re / (2 * sigma * lam * lam)
    return AutoParams(U=fz, a=a, lam=lam, sigma=sigma, r=r)


def quadric_automorphism(params: AutoParams, form: HermitianForm, D: int) -> JetMap:
    """The hyperquadric automorphism with the given parameters, to weight D.

        z -> lambda U (z + a w) / delta,   w -> sigma lambda^2 w / delta,
        delta = 1 - 2i<z,a> - (r + i<a,a>) w,

    expanded as a truncated geometric series.  The output preserves
    v = <z,z> at every weight <= D-1 (see verify_automorphism).
    """
    n = form.n
    if len(params.a) != n or params.U.nrows != n:
        raise ValueError("parameter dimensions do not match the form")
    w = HoloPoly.w(n)
    # <z, a> as a holomorphic linear form
    za = HoloPoly.zero(n)
    for alpha in range(n):
        c = GaussianRational(0)
        for beta in range(n):
            h = form.matrix[alpha, beta]
            if not h.is_zero():
                c = c + h * params.a[beta].conjugate()
        if not c.is_zero():
            za = za + HoloPoly.z(n, alpha).scale(c)
    aa = form.pair_values(params.a, params.a)  # real by Hermitian symmetry
    tail = za.scale(GaussianRational(0, 2)) + w.scale(
        GaussianRational(params.r) + IU * aa)
    # 1/delta = sum_k tail^k, truncated by weight
    series = HoloPoly.constant(n, 1)
    power = HoloPoly.constant(n, 1)
    while True:
        power = power.mul(tail, D)
        if power.is_zero():
            break
        series = series + power
    vec = [HoloPoly.z(n, i) + w.scale(params.a[i]) for i in range(n)]
    lam_c = GaussianRational(params.lam)
    f = []
    for i in range(n):
        num = HoloPoly.zero(n)
        for j in range(n):
            uij = params.U[i, j]
            if not uij.is_zero():
                num = num + vec[j].scale(uij)
        f.append(num.scale(lam_c).mul(series, D))
    g = w.scale(GaussianRational(params.sigma * params.lam * params.lam)).mul(series, D)
    return JetMap(tuple(f), g, D)


def is_linear_automorphism(surface: Hypersurface, u_mat: Matrix,
                           lam: Fraction, sigma: int) -> bool:
    """Exact test of F(lambda U z, conj, sigma lambda^2 u) = sigma lambda^2 F."""
    lam = Fraction(lam)
    if lam <= 0:
        raise ValueError("lambda must be positive")
    if sigma not in (1, -1):
        raise ValueError("sigma must be +1 or -1")
    if is_pseudounitary(u_mat, surface.form) != sigma:
        raise ValueError("U is not pseudounitary with the requested sigma")
    u_scale = sigma * lam * lam
    lam_u = u_mat.scale(lam)
    return surface.F.substitute_linear(lam_u, u_scale) == surface.F.scale(u_scale)


def stabilizer_algebra(surface: Hypersurface) -> StabilizerResult:
    """Exact solve of the infinitesimal linear-invariance system.

    Unknowns are (X, rho) with X ranging over the real span of u_basis and
    rho the scale rate; the equation is the t-derivative at the identity of
    F(e^{rho t} e^{t X} z, conj, e^{2 rho t} u) = e^{2 rho t} F:

        2 Re sum_j ((rho E + X) z)_j dF/dz_j + 2 rho u dF/du - 2 rho F = 0

    collected coefficientwise.  The spherical surface (F = 0) satisfies it
    identically, giving n^2 + 1.
    """
    form = surface.form
    n = form.n
    basis = u_basis(form)
    if surface.F.is_zero():
        infs = tuple(InfSym(x_mat, Fraction(0)) for x_mat in basis)
        infs = infs + (InfSym(Matrix.zeros(n, n), Fraction(1)),)
        return StabilizerResult(dim=n * n + 1, basis=infs, spherical=True)
    f_poly = surface.F
    dfz = [f_poly.partial("z", j) for j in range(n)]
    dfu = f_poly.partial("u")
    u_dfu = Poly.u(n) * dfu

    def direction(x_mat: Optional[Matrix], rho: int) -> Poly:
        acc = Poly.zero(n)
        for j in range(n):
            if dfz[j].is_zero():
                continue
            lin = Poly.zero(n)
            if rho:
                lin = lin + Poly.z(n, j).scale(rho)
            if x_mat is not None:
                for k in range(n):
                    c = x_mat[j, k]
                    if not c.is_zero():
                        lin = lin + Poly.z(n, k).scale(c)
            if lin:
                acc = acc + lin * dfz[j]
        total = acc + acc.conjugate()
        if rho:
            total = total + u_dfu.scale(2 * rho) - f_poly.scale(2 * rho)
        return total

    columns = [direction(x_mat, 0) for x_mat in basis]
    columns.append(direction(None, 1))
    monos = sorted(set().union(*(set(c.terms) for c in columns)))
    rows: List[List[Fraction]] = []
    for mono in monos:
        coeffs = [c.coeff(mono) for c in columns]
        rows.append([c.re for c in coeffs])
        rows.append([c.im for c in coeffs])
    kernel = rational_nullspace(rows, len(columns))
    out = []
    for vec in kernel:
        x_mat = Matrix.zeros(n, n)
        for i, c in enumerate(vec[:-1]):
            if c:
                x_mat = x_mat + basis[i].scale(c)
        out.append(InfSym(x_mat, vec[-1]))
    return StabilizerResult(dim=len(kernel), basis=tuple(out), spherical=False)


def T_operator(fg: Poly, a: Sequence[GaussianRational], form: HermitianForm) -> Poly:
    """The weight-raising operator

        T(F, a) = 2 Re( -2i<z,a> F + (u+i<z,z>) sum a_j dF/dz_j
                        + 2i<z,a> sum z_j dF/dz_j
                        + i<z,a> (u+i<z,z>) dF/du ).

    Real-linear in F, additive in a, raises pure weight by exactly one.
    """
    n = form.n
    if fg.n != n:
        raise ValueError("polynomial dimension does not match the form")
    if len(a) != n:
        raise ValueError("vector a must have one entry per dimension")
    a = [GaussianRational.of(c) for c in a]
    zvars = [Poly.z(n, i) for i in range(n)]
    za = form.pair_poly_const(zvars, a)
    upz = Poly.u(n) + form.inner_poly().scale(IU)
    dfz = [fg.partial("z", j) for j in range(n)]
    sum_a = Poly.zero(n)
    sum_z = Poly.zero(n)
    for j in range(n):
        if dfz[j].is_zero():
            continue
        if not a[j].is_zero():
            sum_a = sum_a + dfz[j].scale(a[j])
        sum_z = sum_z + zvars[j] * dfz[j]
    inner = (za * fg).scale(GaussianRational(0, -2)) \
        + upz * sum_a \
        + (za * sum_z).scale(GaussianRational(0, 2)) \
        + (za * upz * fg.partial("u")).scale(IU)
    return inner + inner.conjugate()


def moser_weight_identity(surface: Hypersurface, jet: JetMap) -> Poly:
    """Residual of the weight-(gamma+1) identity; zero for genuine maps.

    Left side:  Re(i g~_{gamma+1} + 2 <lambda^{-1} U^{-1} f~_gamma, z>)
                restricted to v = <z,z>, plus T(F_gamma, a).
    Right side: F_{gamma+1} - lambda^{-2} F_{gamma+1}(lambda U z, ., lambda^2 u).

    Here (f~, g~) = jet - quadric_automorphism(extract_params(jet)), and the
    restriction is realized by substituting w = u + i<z,z> before weight
    extraction.
    """
    form = surface.form
    n = form.n
    gamma = surface.F.min_weight()
    if gamma is None:
        raise ValueError("the weight identity needs a non-spherical surface")
    params = extract_params(jet, form)
    phi_q = quadric_automorphism(params, form, jet.D)
    cap = gamma + 1
    wmix = Poly.u(n) + form.inner_poly().scale(IU)
    ft = [(jet.f[i] - phi_q.f[i]).substitute_w(wmix, cap) for i in range(n)]
    gt = (jet.g - phi_q.g).substitute_w(wmix, cap)
    f_gamma = [p.weight_component(gamma) for p in ft]
    g_up = gt.weight_component(gamma + 1)
    uinv = params.U.inverse().scale(Fraction(1) / params.lam)
    vec = []
    for i in range(n):
        acc = Poly.zero(n)
        for k in range(n):
            c = uinv[i, k]
            if not c.is_zero():
                acc = acc + f_gamma[k].scale(c)
        vec.append(acc)
    zvars = [Poly.z(n, i) for i in range(n)]
    pairing = form.pair_polys(vec, zvars)
    lhs = (g_up.scale(IU) + pairing.scale(2)).real_part()
    lhs = lhs + T_operator(surface.F.weight_component(gamma), params.a, form)
    f_up = surface.F.weight_component(gamma + 1)
    lam2 = params.lam * params.lam
    moved = f_up.substitute_linear(params.U.scale(params.lam), lam2)
    rhs = f_up - moved.scale(Fraction(1) / lam2)
    return lhs - rhs


def verify_automorphism(surface: Hypersurface, jet: JetMap, max_w: int) -> bool:
    """Exact invariance check of the defining equation through weight max_w.

    Substitutes w = u + i(<z,z> + F) into Im g - <f,f> - F(f, conj f, Re g)
    and requires every term of weight <= max_w to vanish.  The jet supports
    max_w <= D - 1 (g enters linearly, so its missing weight->D tail cannot
    touch weights below D).
    """
    if max_w > jet.D - 1:
        raise TruncationError(
            f"verification weight {max_w} exceeds the jet capacity {jet.D - 1}"
        )
    form = surface.form
    n = form.n
    if jet.n != n:
        raise ValueError("jet dimension does not match the surface")
    wmix = (Poly.u(n) + (form.inner_poly() + surface.F).scale(IU)).truncate_weight(max_w)
    gm = jet.g.substitute_w(wmix, max_w)
    fm = [fi.substitute_w(wmix, max_w) for fi in jet.f]
    residual = gm.imag_part() - form.pair_polys(fm, fm, max_w)
    if not surface.F.is_zero():
        fbar = [p.conjugate() for p in fm]
        residual = residual - surface.F.substitute(fm, fbar, gm.real_part(),
                                                   max_weight=max_w)
    return residual.truncate_weight(max_w).is_zero()


def reparametrize(surface: Hypersurface, q: Fraction, max_w: int) -> Hypersurface:
    """Image of the surface under z -> z/(1+qw), w -> w/(1+qw), re-solved.

    The map is an automorphism of the hyperquadric, so the image is again
    v = <z,z> + F'; F' satisfies the implicit equation

        F'(z, conj z, u) = |1 - q w|^2 F(z/(1-qw), conj, Re(w/(1-qw))),
        w = u + i(<z,z> + F'),

    which is solved by a weight-graded fixed-point iteration (the weight-k
    piece of the right side depends only on strictly lower-weight pieces of
    F', so the iteration stabilizes after ~max_w/2 rounds).
    """
    q = Fraction(q)
    if max_w > surface.max_weight:
        raise ValueError("requested weight exceeds the surface truncation")
    form = surface.form
    n = form.n
    if q == 0 or surface.F.is_zero():
        new_f = surface.F.truncate_weight(max_w)
        return Hypersurface(form, new_f, max_w)
    inner = form.inner_poly()
    one = Poly.constant(n, 1)
    zvars = [Poly.z(n, i) for i in range(n)]
    zbvars = [Poly.zbar(n, i) for i in range(n)]
    current = Poly.zero(n)
    for _ in range(max_w + 2):
        wmix = (Poly.u(n) + (inner + current).scale(IU)).truncate_weight(max_w)
        wbar = wmix.conjugate()
        series = _geometric(wmix.scale(q), max_w)       # 1/(1 - q w)
        series_bar = series.conjugate()
        slot_u = (wmix.mul(series, max_w)
                  + wbar.mul(series_bar, max_w)).scale(Fraction(1, 2))
        prefactor = (one - wmix.scale(q)).mul(one - wbar.scale(q), max_w)
        zs = [zv.mul(series, max_w) for zv in zvars]
        zbs = [zv.mul(series_bar, max_w) for zv in zbvars]
        candidate = surface.F.substitute(zs, zbs, slot_u, max_weight=max_w)
        candidate = prefactor.mul(candidate, max_w)
        if candidate == current:
            return Hypersurface(form, candidate, max_w)
        current = candidate
    raise ArithmeticError("reparametrization did not stabilize")


def _geometric(t: Poly, max_w: int) -> Poly:
    """sum_k t^k truncated by weight; t must have positive minimal weight."""
    mw = t.min_weight()
    if mw is not None and mw < 1:
        raise ValueError("geometric series needs a positive minimal weight")
    acc = Poly.constant(t.n, 1)
    power = Poly.constant(t.n, 1)
    while True:
        power = power.mul(t, max_w)
        if power.is_zero():
            return acc
        acc = acc + power
