# tests/test_exact_arith.py

from fractions import Fraction

import pytest

from analysis import exact_linalg
from analysis.exact_lp import INFEASIBLE, OPTIMAL, UNBOUNDED, find_feasible, solve_lp
from utils.errors import ShapeError

F = Fraction


def test_rank_and_nullspace():
    rows = [[F(1), F(2)], [F(2), F(4)]]
    assert exact_linalg.rank(rows) == 1
    null = exact_linalg.nullspace(rows)
    assert len(null) == 1
    assert exact_linalg.dot(rows[0], null[0]) == 0
    assert exact_linalg.rank([]) == 0
    assert exact_linalg.nullspace([[F(1), F(0)], [F(0), F(1)]]) == []


def test_solve_inverse_and_matmul():
    matrix = [[F(2), F(1)], [F(1), F(3)]]
    assert exact_linalg.solve(matrix, [F(3), F(5)]) == [F(4, 5), F(7, 5)]
    inverse = exact_linalg.inverse(matrix)
    assert exact_linalg.matmul(matrix, inverse) == [[1, 0], [0, 1]]
    with pytest.raises(ShapeError):
        exact_linalg.solve([[F(1), F(2)]], [F(1)])
    with pytest.raises(ShapeError):
        exact_linalg.rank([[F(1)], [F(1), F(2)]])


def test_independent_rows_earliest_first():
    rows = [[F(1), F(1)], [F(2), F(2)], [F(0), F(1)]]
    assert exact_linalg.independent_rows(rows) == [0, 2]


def test_lp_optimum_and_duals():
    # min x1 + 2 x2  s.t.  x1 + x2 = 1
    result = solve_lp([1, 2], [[1, 1]], [1])
    assert result.status == OPTIMAL
    assert result.x == (F(1), F(0))
    assert result.objective == 1
    assert result.duals == (F(1),)


def test_lp_with_negative_rhs_and_redundant_row():
    result = solve_lp([0, 1], [[-1, -1], [-2, -2]], [-1, -2])
    assert result.is_optimal
    assert result.objective == 0
    assert sum(result.x) == 1


def test_lp_infeasible_and_unbounded():
    assert solve_lp([0, 0], [[1, 1]], [-1]).status == INFEASIBLE
    assert solve_lp([-1, 0], [[1, -1]], [0]).status == UNBOUNDED
    assert find_feasible([[1, 1]], [-1]) is None
    x = find_feasible([[1, 2], [0, 1]], [3, 1])
    assert x == (F(1), F(1))


def test_lp_shape_checked():
    with pytest.raises(ShapeError):
        solve_lp([1, 1], [[1]], [1])
