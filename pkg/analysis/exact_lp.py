"""
exact_lp.py
Purpose: exact rational linear programming for the facial-set oracle and the
set-cover relaxation.
Pseudocode:
1) Standard form: minimize c·x subject to A x = b, x >= 0 (rows with b < 0 negated).
2) Phase 1: artificial basis, minimize the sum of artificials; > 0 means infeasible.
3) Drive artificials out of the basis; rows where that is impossible are redundant.
4) Phase 2 on the original costs. Bland's rule (smallest entering index, smallest
   leaving basic index on ties) guarantees termination under degeneracy.
5) Dual values w solve B^T w = c_B on the kept rows, so c_j - w·A_j >= 0 at optimum.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from analysis import exact_linalg
from utils.errors import ShapeError

logger = logging.getLogger(__name__)

ZERO = Fraction(0)
ONE = Fraction(1)

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"


@dataclass(frozen=True)
class LPResult:
    status: str
    x: tuple[Fraction, ...] | None = None
    objective: Fraction | None = None
    duals: tuple[Fraction, ...] | None = None
    pivots: int = 0

    @property
    def is_optimal(self) -> bool:
        return self.status == OPTIMAL


class _Tableau:
    def __init__(self, rows: list[list[Fraction]], rhs: list[Fraction], basis: list[int]):
        self.rows = rows
        self.rhs = rhs
        self.basis = basis
        self.pivots = 0

    def pivot(self, r: int, j: int) -> None:
        row = self.rows[r]
        piv = row[j]
        if piv != ONE:
            row = [v / piv for v in row]
            self.rows[r] = row
            self.rhs[r] /= piv
        rhs_r = self.rhs[r]
        for k, other in enumerate(self.rows):
            if k == r:
                continue
            factor = other[j]
            if factor:
                self.rows[k] = [a - factor * b for a, b in zip(other, row)]
                self.rhs[k] -= factor * rhs_r
        self.basis[r] = j
        self.pivots += 1

    def reduced_costs(self, cost: Sequence[Fraction]) -> list[Fraction]:
        reduced = list(cost)
        for i, b in enumerate(self.basis):
            cb = cost[b]
            if cb:
                reduced = [d - cb * a for d, a in zip(reduced, self.rows[i])]
        return reduced

    def value(self, cost: Sequence[Fraction]) -> Fraction:
        return sum((cost[b] * self.rhs[i] for i, b in enumerate(self.basis)), ZERO)

    def optimize(self, cost: Sequence[Fraction], allowed: Iterable[int]) -> str:
        allowed = list(allowed)
        while True:
            reduced = self.reduced_costs(cost)
            entering = next((j for j in allowed if reduced[j] < 0), None)
            if entering is None:
                return OPTIMAL
            best = None
            for i, row in enumerate(self.rows):
                a = row[entering]
                if a > 0:
                    key = (self.rhs[i] / a, self.basis[i])
                    if best is None or key < best[0]:
                        best = (key, i)
            if best is None:
                return UNBOUNDED
            self.pivot(best[1], entering)

    def drop_row(self, r: int) -> None:
        del self.rows[r]
        del self.rhs[r]
        del self.basis[r]


def solve_lp(
    cost: Sequence[Fraction | int],
    a_eq: Sequence[Sequence[Fraction | int]],
    b_eq: Sequence[Fraction | int],
) -> LPResult:
    """Minimize cost·x subject to a_eq x = b_eq, x >= 0, in exact arithmetic."""
    n = len(cost)
    m = len(a_eq)
    if len(b_eq) != m or any(len(row) != n for row in a_eq):
        raise ShapeError("inconsistent LP dimensions")
    cost = [Fraction(c) for c in cost]
    original = [[Fraction(v) for v in row] for row in a_eq]

    rows, rhs = [], []
    for row, b in zip(original, b_eq):
        b = Fraction(b)
        if b < 0:
            rows.append([-v for v in row])
            rhs.append(-b)
        else:
            rows.append(list(row))
            rhs.append(b)
    for i in range(m):
        rows[i].extend(ONE if k == i else ZERO for k in range(m))

    tableau = _Tableau(rows, rhs, [n + i for i in range(m)])
    phase_one = [ZERO] * n + [ONE] * m
    tableau.optimize(phase_one, range(n + m))
    if tableau.value(phase_one) > 0:
        logger.debug("LP infeasible after %d pivots", tableau.pivots)
        return LPResult(INFEASIBLE, pivots=tableau.pivots)

    kept = list(range(m))
    r = 0
    while r < len(tableau.basis):
        if tableau.basis[r] >= n:
            col = next((j for j in range(n) if tableau.rows[r][j] != 0), None)
            if col is None:
                tableau.drop_row(r)
                del kept[r]
                continue
            tableau.pivot(r, col)
        r += 1
    tableau.rows = [row[:n] for row in tableau.rows]

    status = tableau.optimize(cost, range(n))
    if status == UNBOUNDED:
        return LPResult(UNBOUNDED, pivots=tableau.pivots)

    x = [ZERO] * n
    for i, b in enumerate(tableau.basis):
        x[b] = tableau.rhs[i]
    objective = sum((c * v for c, v in zip(cost, x)), ZERO)

    duals = [ZERO] * m
    if kept:
        basis_matrix = [[original[i][b] for b in tableau.basis] for i in kept]
        kept_duals = exact_linalg.solve(
            exact_linalg.transpose(basis_matrix), [cost[b] for b in tableau.basis]
        )
        for i, w in zip(kept, kept_duals):
            duals[i] = w
    return LPResult(OPTIMAL, tuple(x), objective, tuple(duals), tableau.pivots)


def find_feasible(a_eq, b_eq) -> tuple[Fraction, ...] | None:
    """Any x >= 0 with a_eq x = b_eq, or None."""
    result = solve_lp([0] * (len(a_eq[0]) if a_eq else 0), a_eq, b_eq)
    return result.x if result.is_optimal else None
