"""Exact sparse polynomials in z_1..z_n, conj(z_1)..conj(z_n), u.

A polynomial is a dictionary mapping monomial keys to GaussianRational
coefficients.  A monomial key is the triple

    (zexp, zbexp, uexp)   with zexp, zbexp tuples of length n

so z_a and its conjugate are independent variables and u is real.  The zero
polynomial is the empty dictionary; zero coefficients are never stored.

Two gradings run through everything:

  * bidegree (k, l)  --  k = sum(zexp), l = sum(zbexp);
  * weight           --  k + l + 2*uexp  (z of weight 1, u of weight 2).

Conjugation swaps zexp and zbexp and conjugates the coefficient; a
polynomial is *real* (real-valued on the real locus) exactly when it is
fixed by that involution.

Multiplication packs exponent vectors into single integers so that the
convolution inner loop is integer addition, and runs on cleared
denominators; products can be truncated by weight on the fly, which keeps
truncated series composition exact for every weight below the cap.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from .gaussrat import (
    GaussianLike,
    GaussianRational,
    as_fraction,
    format_rational,
    parse_rational,
)

Mono = Tuple[Tuple[int, ...], Tuple[int, ...], int]


def mono_weight(mono: Mono) -> int:
    z, zb, u = mono
    return sum(z) + sum(zb) + 2 * u


def mono_bidegree(mono: Mono) -> Tuple[int, int]:
    z, zb, _ = mono
    return sum(z), sum(zb)


def conj_mono(mono: Mono) -> Mono:
    z, zb, u = mono
    return (zb, z, u)


class Poly:
    """Exact polynomial over Q(i) in (z, conj z, u); immutable by convention."""

    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms: Optional[Mapping[Mono, GaussianLike]] = None):
        if n < 0:
            raise ValueError("dimension must be non-negative")
        clean: Dict[Mono, GaussianRational] = {}
        if terms:
            for mono, coeff in terms.items():
                z, zb, u = mono
                if len(z) != n or len(zb) != n:
                    raise ValueError(f"monomial {mono} does not match dimension {n}")
                if u < 0 or any(e < 0 for e in z) or any(e < 0 for e in zb):
                    raise ValueError(f"negative exponent in monomial {mono}")
                c = GaussianRational.of(coeff)
                if not c.is_zero():
                    clean[(tuple(z), tuple(zb), u)] = c
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("Poly is immutable")

    @classmethod
    def _raw(cls, n: int, terms: Dict[Mono, GaussianRational]) -> "Poly":
        # internal: terms already canonical (no zeros, valid keys)
        p = object.__new__(cls)
        object.__setattr__(p, "n", n)
        object.__setattr__(p, "terms", terms)
        return p

    # -- constructors ----------------------------------------------------------

    @classmethod
    def zero(cls, n: int) -> "Poly":
        return cls._raw(n, {})

    @classmethod
    def constant(cls, n: int, c: GaussianLike) -> "Poly":
        c = GaussianRational.of(c)
        if c.is_zero():
            return cls.zero(n)
        zeros = (0,) * n
        return cls._raw(n, {(zeros, zeros, 0): c})

    @classmethod
    def z(cls, n: int, idx: int) -> "Poly":
        return cls._var(n, idx, 0)

    @classmethod
    def zbar(cls, n: int, idx: int) -> "Poly":
        return cls._var(n, idx, 1)

    @classmethod
    def u(cls, n: int) -> "Poly":
        zeros = (0,) * n
        return cls._raw(n, {(zeros, zeros, 1): GaussianRational(1)})

    @classmethod
    def _var(cls, n: int, idx: int, bar: int) -> "Poly":
        if not 0 <= idx < n:
            raise ValueError(f"variable index {idx} out of range for n={n}")
        e = tuple(1 if i == idx else 0 for i in range(n))
        zeros = (0,) * n
        mono = (zeros, e, 0) if bar else (e, zeros, 0)
        return cls._raw(n, {mono: GaussianRational(1)})

    @classmethod
    def monomial(cls, n: int, zexp: Sequence[int], zbexp: Sequence[int], uexp: int,
                 coeff: GaussianLike = 1) -> "Poly":
        return cls(n, {(tuple(zexp), tuple(zbexp), uexp): coeff})

    # -- basic queries -----------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def coeff(self, mono: Mono) -> GaussianRational:
        return self.terms.get(mono, GaussianRational(0))

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, GaussianRational)):
            other = Poly.constant(self.n, other)
        if not isinstance(other, Poly):
            return NotImplemented
        return self.n == other.n and self.terms == other.terms

    def __hash__(self):
        return hash((self.n, frozenset(self.terms.items())))

    def sorted_terms(self) -> List[Tuple[Mono, GaussianRational]]:
        """Canonical order: lexicographic on (uexp, zexp, zbexp)."""
        return sorted(self.terms.items(), key=lambda kv: (kv[0][2], kv[0][0], kv[0][1]))

    # -- ring operations ---------------------------------------------------------

    def _check_dim(self, other: "Poly"):
        if self.n != other.n:
            raise ValueError(f"dimension mismatch: {self.n} vs {other.n}")

    def __add__(self, other):
        if isinstance(other, (int, Fraction, GaussianRational)):
            other = Poly.constant(self.n, other)
        if not isinstance(other, Poly):
            return NotImplemented
        self._check_dim(other)
        out = dict(self.terms)
        for mono, c in other.terms.items():
            s = out.get(mono)
            s = c if s is None else s + c
            if s.is_zero():
                out.pop(mono, None)
            else:
                out[mono] = s
        return Poly._raw(self.n, out)

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, (int, Fraction, GaussianRational)):
            other = Poly.constant(self.n, other)
        if not isinstance(other, Poly):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        return Poly._raw(self.n, {m: -c for m, c in self.terms.items()})

    def scale(self, c: GaussianLike) -> "Poly":
        c = GaussianRational.of(c)
        if c.is_zero():
            return Poly.zero(self.n)
        return Poly._raw(self.n, {m: v * c for m, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, GaussianRational)):
            return self.scale(other)
        if not isinstance(other, Poly):
            return NotImplemented
        return self.mul(other)

    __rmul__ = __mul__

    def mul(self, other: "Poly", max_weight: Optional[int] = None) -> "Poly":
        """Exact product, optionally dropping all terms of weight > max_weight.

        Weights only add, so a capped product agrees with the exact product
        on every monomial of weight <= max_weight.
        """
        self._check_dim(other)
        if not self.terms or not other.terms:
            return Poly.zero(self.n)
        if len(self.terms) > len(other.terms):
            return other.mul(self, max_weight)
        items_a, den_a, maxes_a = _packed_items(self, max_weight)
        items_b, den_b, maxes_b = _packed_items(other, max_weight)
        if not items_a or not items_b:
            return Poly.zero(self.n)
        bits = max(
            (ma + mb).bit_length() for ma, mb in zip(maxes_a, maxes_b)
        )
        items_a = _repack(items_a, maxes_a, bits)
        items_b = _repack(items_b, maxes_b, bits)
        min_wb = items_b[0][0]
        acc: Dict[int, List[int]] = {}
        for wa, ka, ra, ia in items_a:
            if max_weight is not None and wa + min_wb > max_weight:
                break
            cap = None if max_weight is None else max_weight - wa
            for wb, kb, rb, ib in items_b:
                if cap is not None and wb > cap:
                    break
                key = ka + kb
                re = ra * rb - ia * ib
                im = ra * ib + ia * rb
                cell = acc.get(key)
                if cell is None:
                    acc[key] = [re, im]
                else:
                    cell[0] += re
                    cell[1] += im
        den = den_a * den_b
        n = self.n
        out: Dict[Mono, GaussianRational] = {}
        for key, (re, im) in acc.items():
            if re or im:
                out[_unpack_key(key, bits, n)] = GaussianRational(
                    Fraction(re, den), Fraction(im, den)
                )
        return Poly._raw(n, out)

    def __pow__(self, exp: int):
        return self.pow(exp)

    def pow(self, exp: int, max_weight: Optional[int] = None) -> "Poly":
        if exp < 0:
            raise ValueError("negative exponent")
        result = Poly.constant(self.n, 1)
        base = self
        e = exp
        while e:
            if e & 1:
                result = result.mul(base, max_weight)
            e >>= 1
            if e:
                base = base.mul(base, max_weight)
        return result

    # -- conjugation and reality ---------------------------------------------------

    def conjugate(self) -> "Poly":
        """Coefficient conjugation combined with the z <-> conj(z) swap."""
        return Poly._raw(
            self.n, {conj_mono(m): c.conjugate() for m, c in self.terms.items()}
        )

    def is_real(self) -> bool:
        return self.terms == self.conjugate().terms

    def real_violation(self) -> Optional[Mono]:
        """A monomial witnessing broken coefficient symmetry, or None."""
        for mono, c in self.terms.items():
            if self.coeff(conj_mono(mono)) != c.conjugate():
                return mono
        return None

    def real_part(self) -> "Poly":
        return (self + self.conjugate()).scale(Fraction(1, 2))

    def imag_part(self) -> "Poly":
        return (self - self.conjugate()).scale(GaussianRational(0, Fraction(-1, 2)))

    # -- gradings ---------------------------------------------------------------

    def bidegree_component(self, k: int, l: int) -> "Poly":
        out = {
            m: c for m, c in self.terms.items()
            if sum(m[0]) == k and sum(m[1]) == l
        }
        return Poly._raw(self.n, out)

    def bidegrees(self) -> List[Tuple[int, int]]:
        return sorted({mono_bidegree(m) for m in self.terms})

    def weight_decompose(self) -> Dict[int, "Poly"]:
        buckets: Dict[int, Dict[Mono, GaussianRational]] = {}
        for m, c in self.terms.items():
            buckets.setdefault(mono_weight(m), {})[m] = c
        return {w: Poly._raw(self.n, t) for w, t in sorted(buckets.items())}

    def weight_component(self, w: int) -> "Poly":
        out = {m: c for m, c in self.terms.items() if mono_weight(m) == w}
        return Poly._raw(self.n, out)

    def min_weight(self) -> Optional[int]:
        """Lowest weight present (gamma when applied to a defining function)."""
        if not self.terms:
            return None
        return min(mono_weight(m) for m in self.terms)

    def max_weight(self) -> Optional[int]:
        if not self.terms:
            return None
        return max(mono_weight(m) for m in self.terms)

    def truncate_weight(self, max_weight: int) -> "Poly":
        out = {m: c for m, c in self.terms.items() if mono_weight(m) <= max_weight}
        return Poly._raw(self.n, out)

    # -- calculus ----------------------------------------------------------------

    def partial(self, kind: str, idx: int = 0) -> "Poly":
        """Formal partial derivative; kind is 'z', 'zbar' or 'u'."""
        out: Dict[Mono, GaussianRational] = {}
        if kind == "u":
            for (z, zb, u), c in self.terms.items():
                if u:
                    out[(z, zb, u - 1)] = c * u
        elif kind in ("z", "zbar"):
            slot = 0 if kind == "z" else 1
            if not 0 <= idx < self.n:
                raise ValueError(f"variable index {idx} out of range for n={self.n}")
            for mono, c in self.terms.items():
                e = mono[slot][idx]
                if e:
                    vec = list(mono[slot])
                    vec[idx] = e - 1
                    key = (tuple(vec), mono[1], mono[2]) if slot == 0 else (
                        mono[0], tuple(vec), mono[2])
                    out[key] = c * e
        else:
            raise ValueError(f"unknown variable kind {kind!r}")
        return Poly._raw(self.n, out)

    # -- substitution --------------------------------------------------------------

    def substitute(
        self,
        zsubs: Optional[Sequence["Poly"]] = None,
        zbarsubs: Optional[Sequence["Poly"]] = None,
        usub: Optional["Poly"] = None,
        max_weight: Optional[int] = None,
    ) -> "Poly":
        """Evaluate with z_a -> zsubs[a], conj(z_a) -> zbarsubs[a], u -> usub.

        None leaves the corresponding variables untouched.  Substituted
        polynomials must share one target dimension.  The caller is
        responsible for conjugation consistency when reality matters.
        """
        n = self.n
        if zsubs is not None and len(zsubs) != n:
            raise ValueError("zsubs must supply one polynomial per variable")
        if zbarsubs is not None and len(zbarsubs) != n:
            raise ValueError("zbarsubs must supply one polynomial per variable")
        n_out = self.n
        for p in list(zsubs or []) + list(zbarsubs or []) + ([usub] if usub else []):
            n_out = p.n
            break
        bases: Dict[Tuple[int, int], Poly] = {}
        for i in range(n):
            bases[(0, i)] = zsubs[i] if zsubs is not None else Poly.z(n_out, i)
            bases[(1, i)] = zbarsubs[i] if zbarsubs is not None else Poly.zbar(n_out, i)
        bases[(2, 0)] = usub if usub is not None else Poly.u(n_out)
        for p in bases.values():
            if p.n != n_out:
                raise ValueError("substitution targets have mismatched dimensions")
        powers: Dict[Tuple[int, int, int], Poly] = {}

        def powered(slot: Tuple[int, int], e: int) -> Poly:
            key = (slot[0], slot[1], e)
            got = powers.get(key)
            if got is None:
                got = bases[slot].pow(e, max_weight)
                powers[key] = got
            return got

        total = Poly.zero(n_out)
        for (z, zb, u), c in self.terms.items():
            acc = Poly.constant(n_out, c)
            for i, e in enumerate(z):
                if e:
                    acc = acc.mul(powered((0, i), e), max_weight)
            for i, e in enumerate(zb):
                if e:
                    acc = acc.mul(powered((1, i), e), max_weight)
            if u:
                acc = acc.mul(powered((2, 0), u), max_weight)
            total = total + acc
        return total

    def substitute_linear(self, a_matrix, u_scale: Fraction) -> "Poly":
        """P(Az, conj(A) conj(z), u_scale*u), expanded exactly.

        Reality is preserved by construction: the conjugate variables are
        substituted through the entrywise-conjugate matrix, and u_scale is
        real (it may be negative, covering the sigma = -1 case).
        """
        rows = getattr(a_matrix, "rows", a_matrix)
        n = self.n
        if len(rows) != n or any(len(r) != n for r in rows):
            raise ValueError("matrix size does not match polynomial dimension")
        u_scale = as_fraction(u_scale)
        if u_scale == 0:
            raise ValueError("u scale must be nonzero")
        zsubs = []
        zbarsubs = []
        for a in range(n):
            pz = Poly.zero(n)
            pzb = Poly.zero(n)
            for j in range(n):
                coeff = GaussianRational.of(rows[a][j])
                if not coeff.is_zero():
                    pz = pz + Poly.z(n, j).scale(coeff)
                    pzb = pzb + Poly.zbar(n, j).scale(coeff.conjugate())
            zsubs.append(pz)
            zbarsubs.append(pzb)
        return self.substitute(zsubs, zbarsubs, Poly.u(n).scale(u_scale))

    def at_u_zero(self) -> "Poly":
        out = {m: c for m, c in self.terms.items() if m[2] == 0}
        return Poly._raw(self.n, out)

    # -- serialization ---------------------------------------------------------------

    def to_json(self) -> dict:
        return {"n": self.n, "terms": self.terms_to_json()}

    def terms_to_json(self) -> list:
        out = []
        for (z, zb, u), c in self.sorted_terms():
            out.append({
                "z": list(z),
                "zbar": list(zb),
                "u": u,
                "re": format_rational(c.re),
                "im": format_rational(c.im),
            })
        return out

    @classmethod
    def from_json(cls, obj: dict) -> "Poly":
        return cls.terms_from_json(int(obj["n"]), obj.get("terms", []))

    @classmethod
    def terms_from_json(cls, n: int, items: Iterable[dict]) -> "Poly":
        terms: Dict[Mono, GaussianRational] = {}
        for item in items:
            z = tuple(int(e) for e in item.get("z", [0] * n))
            zb = tuple(int(e) for e in item.get("zbar", [0] * n))
            u = int(item.get("u", 0))
            c = GaussianRational(
                parse_rational(str(item.get("re", "0"))),
                parse_rational(str(item.get("im", "0"))),
            )
            mono = (z, zb, u)
            prev = terms.get(mono)
            terms[mono] = c if prev is None else prev + c
        return cls(n, terms)

    # -- display ------------------------------------------------------------------

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for (z, zb, u), c in self.sorted_terms():
            factors = []
            for i, e in enumerate(z):
                if e:
                    factors.append(f"z{i+1}" + (f"^{e}" if e > 1 else ""))
            for i, e in enumerate(zb):
                if e:
                    factors.append(f"~z{i+1}" + (f"^{e}" if e > 1 else ""))
            if u:
                factors.append("u" + (f"^{u}" if u > 1 else ""))
            body = " ".join(factors) if factors else "1"
            parts.append(f"({c}) {body}")
        return " + ".join(parts)

    def __repr__(self):
        return f"Poly(n={self.n}, terms={len(self.terms)})"


# -- packed-key helpers for multiplication -------------------------------------


def _packed_items(p: Poly, max_weight: Optional[int]):
    """Terms as (weight, exponent-vector, int re, int im), denominator cleared.

    The exponent vector is returned unpacked (tuple of 2n+1 ints); _repack
    folds it into a single integer once the field width for the product is
    known.  Terms are sorted by weight so capped products can break early.
    """
    den = 1
    for c in p.terms.values():
        den = lcm(den, c.re.denominator, c.im.denominator)
    items = []
    nfields = 2 * p.n + 1
    maxes = [0] * nfields
    for (z, zb, u), c in p.terms.items():
        w = sum(z) + sum(zb) + 2 * u
        if max_weight is not None and w > max_weight:
            continue
        fields = z + zb + (u,)
        for i, e in enumerate(fields):
            if e > maxes[i]:
                maxes[i] = e
        items.append((w, fields, int(c.re * den), int(c.im * den)))
    items.sort(key=lambda t: t[0])
    return items, den, maxes


def _repack(items, maxes, bits):
    out = []
    for w, fields, re, im in items:
        key = 0
        for e in reversed(fields):
            key = (key << bits) | e
        out.append((w, key, re, im))
    return out


def _unpack_key(key: int, bits: int, n: int) -> Mono:
    mask = (1 << bits) - 1
    fields = []
    for _ in range(2 * n + 1):
        fields.append(key & mask)
        key >>= bits
    return (tuple(fields[:n]), tuple(fields[n:2 * n]), fields[2 * n])
