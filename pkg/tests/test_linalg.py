import random
from fractions import Fraction

import pytest
import sympy

from crmoser.gaussrat import GaussianRational
from crmoser.linalg import (
    Matrix,
    SingularMatrixError,
    hermitian_inertia,
    rational_nullspace,
)

from helpers import matrix_to_sympy, random_gauss


def random_matrix(rng, n):
    return Matrix([[random_gauss(rng, allow_zero=True) for _ in range(n)]
                   for _ in range(n)])


def test_inverse_round_trip():
    rng = random.Random(1)
    done = 0
    while done < 10:
        m = random_matrix(rng, 3)
        try:
            inv = m.inverse()
        except SingularMatrixError:
            continue
        assert m * inv == Matrix.identity(3)
        assert inv * m == Matrix.identity(3)
        done += 1


def test_det_against_sympy():
    rng = random.Random(2)
    for n in (2, 3):
        for _ in range(8):
            m = random_matrix(rng, n)
            ours = m.det()
            oracle = matrix_to_sympy(m).det()
            assert sympy.Rational(ours.re) + sympy.I * sympy.Rational(ours.im) \
                == sympy.expand(oracle)


def test_singular_matrix_raises():
    m = Matrix([[1, 2], [2, 4]])
    with pytest.raises(SingularMatrixError):
        m.inverse()
    assert m.det() == GaussianRational(0)


def test_nullspace_vectors_annihilate():
    rng = random.Random(3)
    pool = [Fraction(0), Fraction(1), Fraction(-1), Fraction(2), Fraction(1, 2)]
    for _ in range(10):
        rows = [[rng.choice(pool) for _ in range(6)] for _ in range(4)]
        basis = rational_nullspace([list(r) for r in rows], 6)
        for vec in basis:
            for row in rows:
                assert sum(a * b for a, b in zip(row, vec)) == 0
        oracle_rank = sympy.Matrix(rows).rank()
        assert len(basis) == 6 - oracle_rank


def test_nullspace_empty_system():
    basis = rational_nullspace([], 3)
    assert len(basis) == 3


def test_inertia_known_matrices():
    assert hermitian_inertia(Matrix.identity(3)) == (3, 0, 0)
    assert hermitian_inertia(Matrix([[1, 0], [0, -1]])) == (1, 1, 0)
    assert hermitian_inertia(Matrix([[0, 1], [1, 0]])) == (1, 1, 0)
    i = GaussianRational(0, 1)
    assert hermitian_inertia(Matrix([[0, i], [-i, 0]])) == (1, 1, 0)
    assert hermitian_inertia(Matrix([[0, 0], [0, 0]])) == (0, 0, 2)
    assert hermitian_inertia(Matrix([[1, 1], [1, 1]])) == (1, 0, 1)


def test_inertia_sylvester_invariance():
    rng = random.Random(5)
    h = Matrix([[0, 0, 1], [0, 1, 0], [1, 0, 0]])
    base = hermitian_inertia(h)
    done = 0
    while done < 8:
        c = random_matrix(rng, 3)
        try:
            c.inverse()
        except SingularMatrixError:
            continue
        congruent = c.transpose() * h * c.conjugate()
        assert hermitian_inertia(congruent) == base
        done += 1


def test_matrix_json_round_trip():
    rng = random.Random(7)
    m = random_matrix(rng, 2)
    assert Matrix.from_json(m.to_json()) == m
