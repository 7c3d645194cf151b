"""Trace operator, normal-form conditions, umbilicity.

A hypersurface is v = <z,z> + F(z, conj z, u) with F real, free of
harmonic terms (every monomial has z-degree >= 2 and conj-z-degree >= 2)
and truncated at a declared weight.  The three normal-form conditions are

    tr   F_{2 2bar} = 0,
    tr^2 F_{2 3bar} = 0,
    tr^3 F_{3 3bar} = 0,

with tr = sum_{a,b} hinv_ab d^2/dz_a dzbar_b and hinv the exact inverse of
the form matrix.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Tuple

from .forms import HermitianForm
from .poly import Poly

CONDITION_NAMES = ("trF22", "tr2F23", "tr3F33")


class NormalFormError(ValueError):
    """A hypersurface violated a structural precondition."""


@dataclass(frozen=True)
class Hypersurface:
    """v = <z,z> + F with F real, harmonic-free, weight-truncated."""

    form: HermitianForm
    F: Poly
    max_weight: int

    def __post_init__(self):
        if self.F.n != self.form.n:
            raise NormalFormError(
                f"F has dimension {self.F.n}, form has {self.form.n}")
        bad = self.F.real_violation()
        if bad is not None:
            raise NormalFormError(
                f"coefficient symmetry broken at monomial {bad}")
        for (z, zb, _u) in self.F.terms:
            if sum(z) < 2 or sum(zb) < 2:
                raise NormalFormError(
                    f"harmonic term (degree ({sum(z)},{sum(zb)})) not allowed "
                    f"in a normal-form F")
        top = self.F.max_weight()
        if top is not None and top > self.max_weight:
            raise NormalFormError(
                f"F contains weight {top} > declared maxWeight {self.max_weight}")

    @property
    def n(self) -> int:
        return self.form.n

    @property
    def m(self) -> int:
        return self.form.m

    def is_spherical(self) -> bool:
        return self.F.is_zero()

    def gamma(self):
        """Lowest weight present in F (None for the spherical surface)."""
        return self.F.min_weight()


@dataclass(frozen=True)
class NormalFormReport:
    passed: bool
    violations: Tuple[Tuple[str, Poly], ...] = field(default_factory=tuple)

    def to_json(self) -> dict:
        return {
            "passed": self.passed,
            "violations": [
                {"condition": name, "residual": residual.to_json()}
                for name, residual in self.violations
            ],
        }


def trace_op(form: HermitianForm, p: Poly) -> Poly:
    """sum_ab hinv_ab d^2 p / dz_a dzbar_b with hinv = H^{-1}, exactly."""
    if p.n != form.n:
        raise ValueError(f"polynomial dimension {p.n} does not match form {form.n}")
    hinv = form.inverse_matrix()
    n = form.n
    pairs = [(a, b, hinv[a, b]) for a in range(n) for b in range(n)
             if not hinv[a, b].is_zero()]
    out = {}
    for (z, zb, u), c in p.terms.items():
        for a, b, h in pairs:
            ea = z[a]
            eb = zb[b]
            if not ea or not eb:
                continue
            nz = list(z)
            nz[a] = ea - 1
            nzb = list(zb)
            nzb[b] = eb - 1
            key = (tuple(nz), tuple(nzb), u)
            add = c * h * (ea * eb)
            prev = out.get(key)
            s = add if prev is None else prev + add
            if s.is_zero():
                out.pop(key, None)
            else:
                out[key] = s
    return Poly(n, out)


def check_normal_form(surface: Hypersurface) -> NormalFormReport:
    """Evaluate the three trace conditions exactly, with full u-dependence."""
    form = surface.form
    f22 = surface.F.bidegree_component(2, 2)
    f23 = surface.F.bidegree_component(2, 3)
    f33 = surface.F.bidegree_component(3, 3)
    residuals = [
        ("trF22", trace_op(form, f22)),
        ("tr2F23", trace_op(form, trace_op(form, f23))),
        ("tr3F33", trace_op(form, trace_op(form, trace_op(form, f33)))),
    ]
    violations = tuple((name, r) for name, r in residuals if not r.is_zero())
    return NormalFormReport(passed=not violations, violations=violations)


def is_umbilic_origin(surface: Hypersurface) -> bool:
    """True iff F_{2 2bar}(., ., 0) = 0; requires the surface in normal form."""
    report = check_normal_form(surface)
    if not report.passed:
        names = ", ".join(name for name, _ in report.violations)
        raise NormalFormError(
            f"umbilicity is defined for normal-form surfaces only; "
            f"violated: {names}")
    return surface.F.bidegree_component(2, 2).at_u_zero().is_zero()


def is_function_of_form_and_u(surface: Hypersurface) -> bool:
    """True iff F is a polynomial in <z,z> and u.

    Decided by exact division: F must vanish in every off-diagonal bidegree
    and each (k,k) component, sliced by u-power, must be an exact scalar
    multiple of <z,z>^k.  The candidate scalar is read off the marker
    monomial (the lexicographically largest monomial of <z,z>^k).
    """
    f = surface.F
    if f.is_zero():
        return True
    q = surface.form.inner_poly()
    qpow = {}
    for k, l in f.bidegrees():
        if k != l:
            return False
        if k not in qpow:
            qpow[k] = q ** k
        qk = qpow[k]
        marker = max(qk.terms)
        marker_coeff = qk.terms[marker]
        comp = f.bidegree_component(k, k)
        by_u = {}
        for (z, zb, u), c in comp.terms.items():
            by_u.setdefault(u, {})[(z, zb, 0)] = c
        for u, terms in by_u.items():
            slice_poly = Poly(f.n, terms)
            scalar = slice_poly.coeff(marker) / marker_coeff
            if not scalar.is_real():
                return False
            if slice_poly != qk.scale(scalar):
                return False
    return True
