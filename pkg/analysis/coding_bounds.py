"""
coding_bounds.py
Purpose: coding-theory quantities behind the mixture lower bounds and the
S-set cardinality bounds: Gilbert-Varshamov and Singleton bounds on A_q(N,d),
the parity code witness, and marking numbers K(N,R) (binary covering codes).
"""
from __future__ import annotations

import itertools
import logging
import math
from dataclasses import dataclass

from sympy import isprime

from analysis.sample_space import SampleSpace, hamming_ball, hamming_ball_size, hamming_distance
from covering.set_cover import greedy_cover, solve_set_cover
from utils.config import get_settings
from utils.errors import DomainError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CodeBoundReport:
    q: int
    N: int
    parameter: str          # "d" (minimum distance) or "R" (covering radius)
    value: int
    lower: int
    upper: int
    exact: int | None = None
    witness: tuple[str, ...] | None = None
    note: str | None = None

    def to_json(self) -> dict:
        payload = {
            "q": self.q,
            "N": self.N,
            self.parameter: self.value,
            "lower": self.lower,
            "upper": self.upper,
        }
        if self.exact is not None:
            payload["exact"] = self.exact
        if self.witness is not None:
            payload["witness"] = list(self.witness)
        if self.note:
            payload["note"] = self.note
        return payload


def _check_code_params(q: int, N: int, d: int) -> None:
    if q < 2:
        raise DomainError(f"alphabet size q={q} must be at least 2")
    if not 1 <= d <= N:
        raise DomainError(f"minimum distance d={d} outside [1, {N}]")


def gv_bound(q: int, N: int, d: int) -> int:
    _check_code_params(q, N, d)
    volume = sum(math.comb(N, j) * (q - 1) ** j for j in range(d))
    return -(-q ** N // volume)


def singleton_bound(q: int, N: int, d: int) -> int:
    _check_code_params(q, N, d)
    return q ** (N - d + 1)


def minimum_distance(code: list[tuple[int, ...]]) -> int | None:
    if len(code) < 2:
        return None
    return min(hamming_distance(a, b) for a, b in itertools.combinations(code, 2))


def parity_code(q: int, N: int) -> CodeBoundReport:
    """{x : sum x_i = 0 mod q}, a distance-2 code meeting the Singleton bound for prime q."""
    if N < 2:
        raise DomainError("distance-2 codes need N >= 2")
    lower = gv_bound(q, N, 2)
    upper = singleton_bound(q, N, 2)
    if not isprime(q):
        return CodeBoundReport(q, N, "d", 2, lower, upper,
                               note="no constructive witness for non-prime alphabets")
    space = SampleSpace((q,) * N)
    code = [config for config in space.configurations if sum(config) % q == 0]
    distance = minimum_distance(code)
    if distance is None or distance < 2:
        raise AssertionError(f"parity code over q={q}, N={N} has distance {distance}")
    return CodeBoundReport(
        q, N, "d", 2, lower, upper,
        exact=len(code),
        witness=tuple(space.format_config(c) for c in code),
    )


def covering_radius(space: SampleSpace, code: list[tuple[int, ...]]) -> int:
    return max(min(hamming_distance(x, c) for c in code) for x in space.configurations)


def marking_number(N: int, R: int, *, exact_max_n: int | None = None, node_budget: int | None = None) -> CodeBoundReport:
    """
    K(N, R): fewest points such that every R-dimensional face of the binary
    N-cube contains one, i.e. the smallest binary code of covering radius R.
    """
    if not 1 <= R <= N:
        raise DomainError(f"need 1 <= R <= N, got N={N}, R={R}")
    settings = get_settings()
    exact_max_n = settings.marking_exact_max_n if exact_max_n is None else exact_max_n
    node_budget = settings.node_budget if node_budget is None else node_budget

    sphere = -(-2 ** N // hamming_ball_size(N, R))
    space = SampleSpace.binary(N)

    if R == N:
        return CodeBoundReport(2, N, "R", R, 1, 1, exact=1, witness=(space.label(0),))
    if R < N <= 2 * R + 1:
        code = [(0,) * N, (1,) * N]
        return CodeBoundReport(2, N, "R", R, max(sphere, 2), 2, exact=2,
                               witness=tuple(space.format_config(c) for c in code))

    balls = [hamming_ball(space, config, R).mask for config in space.configurations]
    universe = (1 << space.size) - 1
    if N > exact_max_n:
        chosen = greedy_cover(universe, balls)
        return CodeBoundReport(2, N, "R", R, sphere, len(chosen),
                               witness=tuple(space.label(i) for i in chosen),
                               note=f"exact search capped at N <= {exact_max_n}")

    # the cube is vertex-transitive, so some optimal code contains 0...0
    solution = solve_set_cover(universe, balls, use_lp=True, node_budget=node_budget, forced=(0,))
    code = [space.config_of(i) for i in solution.chosen]
    if covering_radius(space, code) > R:
        raise AssertionError("marking code does not reach every point")
    if not solution.optimal:
        logger.warning("K(%d,%d) search hit the node budget; reporting bounds only", N, R)
        return CodeBoundReport(2, N, "R", R, max(sphere, solution.lower_bound), len(code),
                               witness=tuple(space.format_config(c) for c in code),
                               note="node budget exhausted")
    return CodeBoundReport(2, N, "R", R, sphere, len(code),
                           exact=len(code), witness=tuple(space.format_config(c) for c in code))
