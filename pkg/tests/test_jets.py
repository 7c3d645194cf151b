import random
from fractions import Fraction

import pytest

from crmoser.gaussrat import GaussianRational
from crmoser.jets import HoloPoly, JetMap
from crmoser.poly import Poly


def random_holo(rng, n, terms=4, max_z=2, max_w=2):
    p = HoloPoly.zero(n)
    pool = [Fraction(1), Fraction(-1), Fraction(1, 2), Fraction(2)]
    for _ in range(terms):
        ze = tuple(rng.randrange(max_z + 1) for _ in range(n))
        we = rng.randrange(max_w + 1)
        c = GaussianRational(rng.choice(pool), rng.choice(pool + [Fraction(0)]))
        p = p + HoloPoly(n, {(ze, we): c})
    return p


def naive_mul(a, b):
    out = {}
    for (za, wa), ca in a.terms.items():
        for (zb, wb), cb in b.terms.items():
            key = (tuple(x + y for x, y in zip(za, zb)), wa + wb)
            out[key] = out.get(key, GaussianRational(0)) + ca * cb
    return HoloPoly(a.n, out)


def test_mul_matches_naive():
    rng = random.Random(2)
    for _ in range(15):
        a = random_holo(rng, 2)
        b = random_holo(rng, 2)
        assert a.mul(b) == naive_mul(a, b)


def test_mul_truncation_consistent():
    rng = random.Random(3)
    a = random_holo(rng, 2)
    b = random_holo(rng, 2)
    assert a.mul(b, 4) == a.mul(b).weight_truncate(4)


def test_substitute_w_matches_poly_substitution():
    # z^2 w |-> z^2 (u + i Q) must agree with direct Poly arithmetic
    n = 2
    p = HoloPoly(n, {((2, 0), 1): GaussianRational(1),
                     ((0, 1), 0): GaussianRational(0, 1)})
    wmix = Poly.u(n) + Poly.monomial(n, (1, 0), (0, 1), 0).scale(GaussianRational(0, 1))
    got = p.substitute_w(wmix)
    expect = Poly.monomial(n, (2, 0), (0, 0), 0) * wmix \
        + Poly.z(n, 1).scale(GaussianRational(0, 1))
    assert got == expect


def test_substitute_w_truncation_exact_below_cap():
    rng = random.Random(5)
    n = 2
    wmix = Poly.u(n) + Poly.monomial(n, (1, 0), (0, 1), 0).scale(
        GaussianRational(0, 1)) + Poly.monomial(n, (0, 1), (1, 0), 0).scale(
        GaussianRational(0, 1))
    for _ in range(10):
        p = random_holo(rng, n, terms=5)
        full = p.substitute_w(wmix)
        capped = p.substitute_w(wmix, 5)
        assert capped == full.truncate_weight(5)


def test_jetmap_origin_invariant():
    n = 2
    with pytest.raises(ValueError):
        JetMap((HoloPoly.constant(n, 1), HoloPoly.z(n, 1)), HoloPoly.w(n), 4)
    with pytest.raises(ValueError):
        JetMap((HoloPoly.z(n, 0), HoloPoly.z(n, 1)),
               HoloPoly.w(n) + HoloPoly.constant(n, 2), 4)


def test_jetmap_json_round_trip():
    jet = JetMap.identity(2, 6)
    doc = jet.to_json()
    back = JetMap.from_json(doc)
    assert back.f == jet.f and back.g == jet.g and back.D == jet.D


def test_identity_jet():
    jet = JetMap.identity(3, 5)
    assert jet.f[1] == HoloPoly.z(3, 1)
    assert jet.g == HoloPoly.w(3)
