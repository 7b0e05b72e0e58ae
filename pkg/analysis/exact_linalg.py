"""
exact_linalg.py
Purpose: exact rational linear algebra (rank, nullspace, solve, row basis)
on top of sympy's DomainMatrix over QQ.
Matrices are passed around as lists of rows of Fractions; conversion to and
from the QQ domain happens only here.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from sympy import QQ
from sympy.polys.matrices import DomainMatrix

from utils.errors import ShapeError

Rows = Sequence[Sequence[Fraction]]


def to_qq(value) -> object:
    value = Fraction(value)
    return QQ(value.numerator, value.denominator)


def from_qq(element) -> Fraction:
    rational = QQ.to_sympy(element)
    return Fraction(int(rational.p), int(rational.q))


def _shape(rows: Rows) -> tuple[int, int]:
    m = len(rows)
    n = len(rows[0]) if m else 0
    if any(len(r) != n for r in rows):
        raise ShapeError("ragged matrix")
    return m, n


def domain_matrix(rows: Rows) -> DomainMatrix:
    m, n = _shape(rows)
    return DomainMatrix([[to_qq(v) for v in r] for r in rows], (m, n), QQ)


def qq_domain_matrix(qq_rows: list[list], shape: tuple[int, int]) -> DomainMatrix:
    """Wrap rows already converted with to_qq (hot loops convert once)."""
    return DomainMatrix(qq_rows, shape, QQ)


def to_fraction_rows(dm: DomainMatrix) -> list[list[Fraction]]:
    m, n = dm.shape
    if m == 0 or n == 0:
        return [[] for _ in range(m)]
    return [[Fraction(int(v.p), int(v.q)) for v in row] for row in dm.to_Matrix().tolist()]


def transpose(rows: Rows) -> list[list[Fraction]]:
    m, n = _shape(rows)
    return [[rows[i][j] for i in range(m)] for j in range(n)]


def select_columns(rows: Rows, columns: Sequence[int]) -> list[list[Fraction]]:
    return [[row[j] for j in columns] for row in rows]


def rank(rows: Rows) -> int:
    m, n = _shape(rows)
    if m == 0 or n == 0:
        return 0
    return domain_matrix(rows).rank()


def nullspace(rows: Rows) -> list[list[Fraction]]:
    """Basis of {v : rows · v = 0}, one list per basis vector."""
    m, n = _shape(rows)
    if n == 0:
        return []
    if m == 0:
        return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    basis = domain_matrix(rows).nullspace()
    if basis.shape[0] == 0:
        return []
    return to_fraction_rows(basis)


def rref_pivots(rows: Rows) -> tuple[int, ...]:
    m, n = _shape(rows)
    if m == 0 or n == 0:
        return ()
    _, pivots = domain_matrix(rows).rref()
    return tuple(pivots)


def independent_rows(rows: Rows) -> list[int]:
    """Indices of a maximal set of linearly independent rows, earliest first."""
    if not rows:
        return []
    return list(rref_pivots(transpose(rows)))


def solve(matrix: Rows, rhs: Sequence[Fraction]) -> list[Fraction]:
    """Unique solution of a square nonsingular system."""
    m, n = _shape(matrix)
    if m != n or len(rhs) != m:
        raise ShapeError(f"solve needs a square system, got {m}x{n} with rhs {len(rhs)}")
    if m == 0:
        return []
    column = DomainMatrix([[to_qq(v)] for v in rhs], (m, 1), QQ)
    solution = domain_matrix(matrix).lu_solve(column)
    return [row[0] for row in to_fraction_rows(solution)]


def inverse(matrix: Rows) -> list[list[Fraction]]:
    m, n = _shape(matrix)
    if m != n:
        raise ShapeError("only square matrices have inverses")
    if m == 0:
        return []
    return to_fraction_rows(domain_matrix(matrix).inv())


def matmul(left: Rows, right: Rows) -> list[list[Fraction]]:
    lm, ln = _shape(left)
    rm, rn = _shape(right)
    if ln != rm:
        raise ShapeError(f"cannot multiply {lm}x{ln} by {rm}x{rn}")
    if lm == 0 or rn == 0:
        return [[] for _ in range(lm)]
    if ln == 0:
        return [[Fraction(0)] * rn for _ in range(lm)]
    return to_fraction_rows(domain_matrix(left) * domain_matrix(right))


def dot(u: Sequence[Fraction], v: Sequence[Fraction]) -> Fraction:
    return sum((a * b for a, b in zip(u, v)), Fraction(0))
