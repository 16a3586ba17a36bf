from fractions import Fraction as F

from gcsets.linalg import RationalMatrix, inverse, nullspace, rank, solve


def test_rank_identity_and_zero():
    assert rank(RationalMatrix.identity(3)) == 3
    assert rank(RationalMatrix.from_rows([[0, 0], [0, 0]])) == 0


def test_nullspace_vectors_annihilate():
    m = RationalMatrix.from_rows([[1, 2, 3], [2, 4, 6], [1, 0, 1]])
    basis = nullspace(m)
    assert len(basis) == 1
    for row in m.entries:
        assert sum(a * b for a, b in zip(row, basis[0])) == 0


def test_inverse_and_solve():
    m = RationalMatrix.from_rows([[2, 1], [1, 1]])
    inv = inverse(m)
    assert inv.to_lists() == [[1, -1], [-1, 2]]
    assert solve(m, [3, 2]) == [F(1), F(1)]
    assert inverse(RationalMatrix.from_rows([[1, 2], [2, 4]])) is None
    assert solve(RationalMatrix.from_rows([[1, 1], [1, 1]]), [0, 1]) is None


def test_input_matrix_is_not_mutated():
    rows = [[F(1, 3), F(2)], [F(4), F(5, 7)]]
    m = RationalMatrix.from_rows(rows)
    rank(m)
    assert m.to_lists() == rows
