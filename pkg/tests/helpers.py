"""Shared test utilities: sympy oracles and seeded random generators.

The sympy routines form the independent verification path for derived
expected values (differentiation, matrix products, ranks); they never call
back into the library's own arithmetic.
"""

from __future__ import annotations

import random
from fractions import Fraction

import sympy

from crmoser.forms import HermitianForm, standard_form, u_basis
from crmoser.gaussrat import GaussianRational
from crmoser.linalg import Matrix
from crmoser.models import SElement
from crmoser.poly import Poly

RATIONAL_POOL = [Fraction(1), Fraction(-1), Fraction(2), Fraction(-2),
                 Fraction(1, 2), Fraction(-1, 2), Fraction(1, 3), Fraction(3)]


# -- sympy bridges -------------------------------------------------------------


def sym_vars(n: int):
    z = sympy.symbols(f"z1:{n + 1}")
    zb = sympy.symbols(f"zb1:{n + 1}")
    u = sympy.Symbol("u")
    return z, zb, u


def gauss_to_sympy(c: GaussianRational):
    return sympy.Rational(c.re) + sympy.I * sympy.Rational(c.im)


def poly_to_sympy(p: Poly):
    z, zb, u = sym_vars(p.n)
    expr = sympy.Integer(0)
    for (ze, zbe, ue), c in p.terms.items():
        term = gauss_to_sympy(c) * u**ue
        for i, e in enumerate(ze):
            term *= z[i] ** e
        for i, e in enumerate(zbe):
            term *= zb[i] ** e
        expr += term
    return sympy.expand(expr)


def matrix_to_sympy(m: Matrix):
    return sympy.Matrix(m.nrows, m.ncols,
                        lambda i, j: gauss_to_sympy(m[i, j]))


def sympy_trace_oracle(form: HermitianForm, p: Poly):
    """tr P computed entirely in sympy: inverse form matrix and diff."""
    z, zb, u = sym_vars(p.n)
    hinv = matrix_to_sympy(form.matrix).inv()
    expr = poly_to_sympy(p)
    out = sympy.Integer(0)
    for a in range(p.n):
        for b in range(p.n):
            if hinv[a, b] != 0:
                out += hinv[a, b] * sympy.diff(expr, z[a], zb[b])
    return sympy.expand(out)


def sympy_pseudounitary_sign(u_mat: Matrix, form: HermitianForm):
    us = matrix_to_sympy(u_mat)
    hs = matrix_to_sympy(form.matrix)
    prod = sympy.simplify(us.T * hs * us.conjugate())
    if prod == hs:
        return 1
    if prod == -hs:
        return -1
    return None


def real_coordinates(m: Matrix):
    """Flatten a complex matrix into its 2n^2 real coordinates."""
    out = []
    for row in m.rows:
        for e in row:
            out.append(sympy.Rational(e.re))
            out.append(sympy.Rational(e.im))
    return out


def sympy_real_rank(mats):
    """Rank of the real span of a family of complex matrices (sympy)."""
    rows = [real_coordinates(m) for m in mats]
    return sympy.Matrix(rows).rank()


# -- random exact data ----------------------------------------------------------


def random_fraction(rng: random.Random, allow_zero=False) -> Fraction:
    pool = RATIONAL_POOL + ([Fraction(0)] if allow_zero else [])
    return rng.choice(pool)


def random_gauss(rng: random.Random, allow_zero=False) -> GaussianRational:
    while True:
        c = GaussianRational(random_fraction(rng, True), random_fraction(rng, True))
        if allow_zero or not c.is_zero():
            return c


def random_real_poly(rng: random.Random, n: int, pairs=2, max_bidegree=3,
                     max_u=1) -> Poly:
    """Random polynomial satisfying the reality invariant (harmonic terms allowed)."""
    p = Poly.zero(n)
    for _ in range(pairs):
        k = rng.randrange(0, max_bidegree + 1)
        l = rng.randrange(0, max_bidegree + 1)
        r = rng.randrange(0, max_u + 1)
        ze = [0] * n
        for _ in range(k):
            ze[rng.randrange(n)] += 1
        zbe = [0] * n
        for _ in range(l):
            zbe[rng.randrange(n)] += 1
        if tuple(ze) == tuple(zbe):
            coeff = GaussianRational(random_fraction(rng))
        else:
            coeff = random_gauss(rng)
        mono = Poly.monomial(n, ze, zbe, r, coeff)
        p = p + mono + mono.conjugate()
    return p


def cayley_pseudounitary(rng: random.Random, form: HermitianForm,
                         sparse=True) -> Matrix:
    """Exact rational element of U(H) via U = (E - X)(E + X)^{-1}, X in u(H)."""
    basis = u_basis(form)
    n = form.n
    for _ in range(50):
        x_mat = Matrix.zeros(n, n)
        want = rng.randrange(1, 3) if sparse else rng.randrange(2, len(basis) + 2)
        picks = rng.sample(range(len(basis)), min(want, len(basis)))
        for i in picks:
            x_mat = x_mat + basis[i].scale(random_fraction(rng))
        eye = Matrix.identity(n)
        try:
            u_mat = (eye - x_mat) * (eye + x_mat).inverse()
        except ZeroDivisionError:
            continue
        return u_mat
    raise RuntimeError("failed to build a Cayley pseudounitary matrix")


def random_s_element(rng: random.Random, n: int, m: int) -> SElement:
    """Random exact element of the triangular group S for (n, m)."""
    mu = random_gauss(rng)
    x = tuple(random_gauss(rng, allow_zero=True) for _ in range(n - 2))
    if n > 2:
        central = standard_form(n - 2, m - 1, "antidiagonal")
        a_mat = cayley_pseudounitary(rng, central)
        xhx = central.pair_values(x, x)
    else:
        a_mat = Matrix.identity(0)
        xhx = GaussianRational(0)
    # corner constraint: 2 Re(c/mu) = -x^t H' conj(x); pick Im(c/mu) freely
    ratio = GaussianRational(-xhx.re / 2, random_fraction(rng, True))
    c = mu * ratio
    return SElement(n=n, m=m, mu=mu, c=c, x=x, A=a_mat)
