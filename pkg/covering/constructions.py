"""
constructions.py
Purpose: explicit S-set covers for the k-interaction families.
Pseudocode:
1) cylinder_cover: the cylinders whose free coordinates are the first k.
2) product_line_cover: lines along one coordinate of maximal arity (E^1).
3) recursive_binary_cover: split X into (k+1)-cylinders C_y, take G_y = C_y
   minus a fixed edge E_y, then recurse on the union of the edges, which is
   again a cylinder, until at most k+1 free coordinates remain.
4) Every cover carries the size bound ceil(|X| / rank) and, when asked, the
   result of verify_cover.
"""
from __future__ import annotations

import itertools
import logging
import math
from dataclasses import replace

from analysis.model_builder import (
    SufficientStatistics,
    interaction_complex_k,
    interaction_dimension,
    k_interaction_statistics,
)
from analysis.sample_space import SampleSpace, SampleSubset, cylinder_set, cylinder_sets
from covering.engine import SSET_COVER, CoverResult, LowerBound, verify_cover
from covering.set_cover import DUAL_BOUND, PARAMETER_COUNT
from utils.errors import DomainError

logger = logging.getLogger(__name__)


def _finish(
    A: SufficientStatistics,
    sets: list[SampleSubset],
    bound: LowerBound,
    construction: str,
    verify: bool,
) -> CoverResult:
    result = CoverResult(
        target=A.space.full(),
        sets=tuple(sets),
        mode=SSET_COVER,
        kappa=len(sets),
        optimal=len(sets) == bound.value,
        lower_bound=bound,
        disjoint=True,
        construction=construction,
    )
    if not verify:
        return result
    report = verify_cover(A, result)
    if not report.passed:
        logger.warning("%s construction failed verification: %s", construction, "; ".join(report.failures))
    return replace(result, verified=report.passed)


def _size_bound(space: SampleSpace, k: int) -> LowerBound:
    # an S-set has at most dim V_k points
    dimension = interaction_dimension(space, interaction_complex_k(space.N, k))
    return LowerBound(-(-space.size // dimension), PARAMETER_COUNT)


def cylinder_cover(space: SampleSpace, k: int, *, verify: bool = True) -> CoverResult:
    """The q^{N-k} cylinder sets with free coordinates 1..k, an S-set partition for E^k."""
    if not 0 < k <= space.N:
        raise DomainError(f"need 0 < k <= N, got k={k}, N={space.N}")
    A = k_interaction_statistics(space, k)
    sets = cylinder_sets(space, free=range(k))
    return _finish(A, sets, _size_bound(space, k), f"cylinder(k={k})", verify)


def product_line_cover(space: SampleSpace, *, verify: bool = True) -> CoverResult:
    """Lines along the first coordinate of maximal arity; |X| / max arity sets."""
    A = k_interaction_statistics(space, 1)
    q = max(space.arities)
    axis = space.arities.index(q)
    sets = cylinder_sets(space, free=[axis])
    # S-sets of E^1 lie inside lines
    bound = LowerBound(space.size // q, DUAL_BOUND)
    return _finish(A, sets, bound, f"lines(axis={axis + 1})", verify)


def cube_cover_count(N: int, k: int) -> int:
    """ceil(2^{N-(k+1)} / (1 - 2^{-k})), the size of the recursive cover."""
    return math.ceil(2 ** (N - k - 1) * 2 ** k / (2 ** k - 1))


def recursive_binary_cover(N: int, k: int, *, verify: bool = True) -> CoverResult:
    if not 0 < k < N:
        raise DomainError(f"need 0 < k < N, got N={N}, k={k}")
    space = SampleSpace.binary(N)

    sets: list[SampleSubset] = []
    free = list(range(N))
    base: dict[int, int] = {}
    while True:
        if len(free) <= k:
            sets.append(cylinder_set(space, base))
            break
        edge_pin = {c: 0 for c in free[:k]}
        if len(free) == k + 1:
            block = cylinder_set(space, base)
            edge = cylinder_set(space, {**base, **edge_pin})
            sets.extend([block.difference(edge), edge])
            break
        tail = free[k + 1:]
        for values in itertools.product((0, 1), repeat=len(tail)):
            fixed = {**base, **dict(zip(tail, values))}
            block = cylinder_set(space, fixed)
            edge = cylinder_set(space, {**fixed, **edge_pin})
            sets.append(block.difference(edge))
        # the edges E_y together form the cylinder with free coordinates free[k:]
        base = {**base, **edge_pin}
        free = free[k:]

    expected = cube_cover_count(N, k)
    if len(sets) > expected:
        logger.warning("recursive cover for N=%d, k=%d used %d sets, bound is %d", N, k, len(sets), expected)
    A = k_interaction_statistics(space, k)
    return _finish(A, sets, _size_bound(space, k), f"recursive(k={k})", verify)
