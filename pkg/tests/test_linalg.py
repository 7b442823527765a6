from fractions import Fraction

import pytest

from linalg import (
    RowEchelon, determinant, inertia, inverse, nullspace, rank, rref, smith, solve,
    solve_gf2, unimodular_inverse,
)
from utils import GradRealError


def test_rref_and_rank():
    red, pivots = rref([[1, 2], [2, 4]], 2)
    assert pivots == (0,)
    assert red[0] == [1, 2]
    assert rank([[1, 2], [2, 4]], 2) == 1
    assert rank([[1, 0], [0, 3]], 2) == 2


def test_nullspace_basis():
    assert nullspace([[1, 2], [2, 4]], 2) == [[Fraction(-2), Fraction(1)]]
    assert nullspace([[1, 0], [0, 1]], 2) == []


def test_solve_consistent_and_inconsistent():
    assert solve([[2, 0], [0, 4]], [1, 1], 2) == [Fraction(1, 2), Fraction(1, 4)]
    assert solve([[1, 1], [1, 1]], [1, 2], 2) is None


def test_inverse_and_determinant():
    assert inverse([[2, 0], [0, 4]]) == [[Fraction(1, 2), 0], [0, Fraction(1, 4)]]
    assert inverse([[1, 2], [2, 4]]) is None
    assert determinant([[1, 2], [3, 4]]) == -2
    assert determinant([]) == 1


@pytest.mark.parametrize("matriz, esperado", [
    ([[1, 0], [0, -1]], (1, 1, 0)),
    ([[0, 0], [0, 2]], (1, 0, 1)),
    ([[-1, 0, 0], [0, -1, 0], [0, 0, -3]], (0, 3, 0)),
    ([[0, 1], [1, 0]], (1, 1, 0)),
])
def test_inertia(matriz, esperado):
    assert inertia(matriz) == esperado


def test_row_echelon_incremental():
    ech = RowEchelon(3)
    assert ech.add({0: Fraction(1), 1: Fraction(1)})
    assert not ech.add({0: Fraction(2), 1: Fraction(2)})
    assert ech.contains({0: Fraction(-3), 1: Fraction(-3)})
    assert not ech.contains({2: Fraction(1)})
    assert ech.add({1: Fraction(1)})
    assert len(ech) == 2
    assert not ech.full
    assert ech.add({2: Fraction(5)})
    assert ech.full


def test_solve_gf2():
    assert solve_gf2([[1, 1], [0, 1]], [1, 1], 2) == [0, 1]
    assert solve_gf2([[1, 1], [1, 1]], [0, 1], 2) is None
    assert solve_gf2([], [], 3) == [0, 0, 0]


def test_smith_normal_form():
    diag, s, t = smith([[2, 0], [0, 3]], 2, 2)
    assert sorted(abs(d) for d in diag) == [1, 6]
    assert abs(determinant(s)) == 1
    assert abs(determinant(t)) == 1


def test_unimodular_inverse():
    assert unimodular_inverse([[1, 1], [0, 1]]) == [[1, -1], [0, 1]]
    with pytest.raises(GradRealError):
        unimodular_inverse([[2, 0], [0, 1]])
