import random
from fractions import Fraction

import pytest

from crmoser.gaussrat import (
    GaussianRational,
    format_rational,
    parse_rational,
    rational_root,
    rational_sqrt,
)


def test_field_axioms_random():
    rng = random.Random(11)
    pool = [Fraction(1), Fraction(-2), Fraction(1, 3), Fraction(5, 7), Fraction(0)]
    for _ in range(200):
        a = GaussianRational(rng.choice(pool), rng.choice(pool))
        b = GaussianRational(rng.choice(pool), rng.choice(pool))
        c = GaussianRational(rng.choice(pool), rng.choice(pool))
        assert a + b == b + a
        assert a * b == b * a
        assert (a + b) * c == a * c + b * c
        assert (a - b) + b == a
        if not b.is_zero():
            assert (a / b) * b == a


def test_conjugation_and_abs2():
    a = GaussianRational(Fraction(3, 2), Fraction(-1, 2))
    assert a.conjugate().conjugate() == a
    assert a.abs2() == Fraction(9, 4) + Fraction(1, 4)
    assert (a * a.conjugate()) == GaussianRational(a.abs2())


def test_division_exact():
    a = GaussianRational(1, 2)
    b = GaussianRational(3, -1)
    q = a / b
    assert q * b == a
    with pytest.raises(ZeroDivisionError):
        a / GaussianRational(0)


def test_parse_format_round_trip():
    for text in ("3", "-1/2", "0", "7/3"):
        assert format_rational(parse_rational(text)) == text
    with pytest.raises(ValueError):
        parse_rational("0.5")


def test_rational_sqrt():
    assert rational_sqrt(Fraction(9, 4)) == Fraction(3, 2)
    assert rational_sqrt(Fraction(2)) is None
    assert rational_sqrt(Fraction(0)) == 0
    assert rational_sqrt(Fraction(-4)) is None


def test_rational_root():
    assert rational_root(Fraction(27, 8), 3) == Fraction(3, 2)
    assert rational_root(Fraction(16), 4) == 2
    assert rational_root(Fraction(2), 2) is None
    big = Fraction(10**30)
    assert rational_root(big, 2) == 10**15


def test_json_round_trip():
    a = GaussianRational(Fraction(-5, 3), Fraction(2))
    assert GaussianRational.from_json(a.to_json()) == a


def test_immutability():
    a = GaussianRational(1)
    with pytest.raises(AttributeError):
        a.re = Fraction(2)
