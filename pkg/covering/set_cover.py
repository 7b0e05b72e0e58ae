"""
set_cover.py
Purpose: exact minimum set cover over bitmask families with optimality evidence.
Pseudocode:
1) Restrict candidates to the universe, drop empty, duplicate and dominated sets.
2) Greedy cover -> incumbent. Root lower bound = max(size bound, ceil(LP)), the
   LP being the fractional cover relaxation solved in exact rationals.
3) Depth-first branch and bound: branch on the uncovered element with the
   fewest covering sets (smallest index on ties), candidates ordered by new
   coverage then index; prune when chosen + ceil(|uncovered| / max size) >= best.
4) Stop as soon as the incumbent meets the root bound, or when the node budget
   runs out (then the result is not certified optimal).
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from analysis.exact_lp import solve_lp

logger = logging.getLogger(__name__)

EXHAUSTED_SEARCH = "exhausted search"
DUAL_BOUND = "dual bound"
CODE_BOUND = "code bound"
PARAMETER_COUNT = "parameter count"


@dataclass(frozen=True)
class SetCoverSolution:
    chosen: tuple[int, ...]
    feasible: bool
    optimal: bool
    lower_bound: int
    provenance: str
    nodes: int = 0

    @property
    def size(self) -> int | None:
        return len(self.chosen) if self.feasible else None


class _BudgetExhausted(Exception):
    pass


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def bits(mask: int) -> list[int]:
    out = []
    index = 0
    while mask:
        if mask & 1:
            out.append(index)
        mask >>= 1
        index += 1
    return out


def reduce_candidates(universe: int, candidates: Sequence[int]) -> list[int]:
    """Indices of the inclusion-maximal distinct traces c & universe (first index wins)."""
    seen: dict[int, int] = {}
    for i, c in enumerate(candidates):
        trace = c & universe
        if trace and trace not in seen:
            seen[trace] = i
    ordered = sorted(seen.items(), key=lambda item: (-popcount(item[0]), item[1]))
    kept: list[tuple[int, int]] = []
    for trace, i in ordered:
        if not any(trace & ~other == 0 for other, _ in kept):
            kept.append((trace, i))
    return sorted(i for _, i in kept)


def greedy_cover(universe: int, candidates: Sequence[int]) -> list[int] | None:
    uncovered = universe
    chosen = []
    while uncovered:
        best, gain = None, 0
        for i, c in enumerate(candidates):
            g = popcount(c & uncovered)
            if g > gain:
                best, gain = i, g
        if best is None:
            return None
        chosen.append(best)
        uncovered &= ~candidates[best]
    return chosen


def fractional_cover_bound(universe: int, candidates: Sequence[int]) -> Fraction:
    """Optimal value of min sum x_S s.t. every element is covered at least once, x >= 0."""
    elements = bits(universe)
    k = len(candidates)
    rows = []
    for row_index, e in enumerate(elements):
        row = [Fraction(int((c >> e) & 1)) for c in candidates]
        row.extend(Fraction(-1) if j == row_index else Fraction(0) for j in range(len(elements)))
        rows.append(row)
    cost = [Fraction(1)] * k + [Fraction(0)] * len(elements)
    result = solve_lp(cost, rows, [Fraction(1)] * len(elements))
    return result.objective


def solve_set_cover(
    universe: int,
    candidates: Sequence[int],
    *,
    use_lp: bool = True,
    node_budget: int | None = None,
    forced: Sequence[int] = (),
) -> SetCoverSolution:
    """
    Minimum number of candidates whose union contains `universe`.

    Parameters
    ----------
    universe : bitmask of elements to cover
    candidates : bitmasks; the returned indices refer to this sequence
    use_lp : compute the exact LP relaxation as root bound
    node_budget : stop after this many search nodes (result then not optimal)
    forced : candidate indices that must be part of the cover (symmetry breaking)

    Returns
    -------
    SetCoverSolution
    """
    if universe == 0:
        return SetCoverSolution((), True, True, 0, EXHAUSTED_SEARCH)

    forced = tuple(forced)
    forced_mask = 0
    for i in forced:
        forced_mask |= candidates[i]
    remaining = universe & ~forced_mask

    pool = reduce_candidates(remaining, candidates)
    traces = [candidates[i] & remaining for i in pool]
    reachable = 0
    for t in traces:
        reachable |= t
    if reachable != remaining:
        logger.info("set cover infeasible: %d elements lie in no candidate", popcount(remaining & ~reachable))
        return SetCoverSolution((), False, True, 0, EXHAUSTED_SEARCH)
    if remaining == 0:
        return SetCoverSolution(forced, True, True, len(forced), EXHAUSTED_SEARCH)

    max_size = max(popcount(t) for t in traces)
    root_bound = math.ceil(popcount(remaining) / max_size)
    greedy = greedy_cover(remaining, traces)
    best = list(greedy)

    if len(best) > root_bound and use_lp:
        lp_value = fractional_cover_bound(remaining, traces)
        root_bound = max(root_bound, math.ceil(lp_value))
        logger.debug("LP relaxation %s -> root bound %d (greedy %d)", lp_value, root_bound, len(best))

    def _result(chosen: list[int], optimal: bool, bound: int, provenance: str, nodes: int) -> SetCoverSolution:
        picked = forced + tuple(sorted(pool[i] for i in chosen))
        return SetCoverSolution(picked, True, optimal, len(forced) + bound, provenance, nodes)

    if len(best) == root_bound:
        return _result(best, True, root_bound, DUAL_BOUND, 0)

    cover_lists: dict[int, list[int]] = {}
    for e in bits(remaining):
        cover_lists[e] = [i for i, t in enumerate(traces) if (t >> e) & 1]

    nodes = 0

    def search(uncovered: int, chosen: list[int]) -> bool:
        nonlocal nodes, best
        nodes += 1
        if node_budget is not None and nodes > node_budget:
            raise _BudgetExhausted
        if uncovered == 0:
            if len(chosen) < len(best):
                best = list(chosen)
                logger.debug("incumbent improved to %d after %d nodes", len(best), nodes)
            return len(best) == root_bound
        if len(chosen) + math.ceil(popcount(uncovered) / max_size) >= len(best):
            return False
        element = min(bits(uncovered), key=lambda e: (len(cover_lists[e]), e))
        options = sorted(cover_lists[element], key=lambda i: (-popcount(traces[i] & uncovered), i))
        for i in options:
            chosen.append(i)
            done = search(uncovered & ~traces[i], chosen)
            chosen.pop()
            if done:
                return True
        return False

    try:
        reached_bound = search(remaining, [])
    except _BudgetExhausted:
        logger.warning("set cover search stopped after %d nodes; best %d, bound %d", nodes, len(best), root_bound)
        return _result(best, False, root_bound, DUAL_BOUND, nodes)
    if reached_bound:
        return _result(best, True, root_bound, DUAL_BOUND, nodes)
    return _result(best, True, len(best), EXHAUSTED_SEARCH, nodes)
