"""
decomposition.py
Purpose: exact mixture decompositions p = sum_i alpha_i f_i from S-set covers,
lower bounds on the number of components, and sufficient component counts for
the k-interaction families.
Pseudocode:
1) decompose_by_cover: assign each support point to the first cover set that
   contains it; alpha_i is the mass of that part, f_i is p restricted to it.
2) component_lower_bound: the supports of the components of any mixture of
   closure(E) members are facial sets whose union is supp(p), so m >= kappa^f(supp p).
   Inside a parity class of the binary cube the facial sets of E^1 are singletons.
3) sufficient_components: min{ceil(|supp p| / (2^k - 1)), minimum k-cylinder cover}.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from fractions import Fraction

from analysis.distribution import Distribution
from analysis.face_lattice import face_lattice
from analysis.model_builder import (
    SufficientStatistics,
    interaction_complex_k,
    k_interaction_statistics,
    moment_map,
    stack_rank,
)
from analysis.sample_space import SampleSpace, SampleSubset, cylinder_sets_of_dimension, parity_sets
from covering.constructions import cube_cover_count
from covering.engine import SSET_COVER, CoverResult, LowerBound, kappa_cross, min_facial_packing
from covering.set_cover import CODE_BOUND, solve_set_cover
from utils.config import get_settings
from utils.errors import CapacityError, CoverageError, DomainError, PreconditionError, ShapeError
from utils.serialization import format_fraction

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class MixtureDecomposition:
    weights: tuple[Fraction, ...]
    components: tuple[Distribution, ...]
    supports: tuple[SampleSubset, ...]
    family: str = "custom"

    @property
    def m(self) -> int:
        return len(self.weights)

    @property
    def space(self) -> SampleSpace:
        return self.components[0].space

    def to_json(self) -> dict:
        return {
            "family": self.family,
            "m": self.m,
            "weights": [format_fraction(w) for w in self.weights],
            "components": [
                {"support": support, "probs": component.to_json()["probs"]}
                for support, component in zip(self.supports, self.components)
            ],
        }


def decompose_by_cover(p: Distribution, cover: CoverResult, family: str = "custom") -> MixtureDecomposition:
    if cover.mode != SSET_COVER:
        raise PreconditionError(f"decomposition needs an S-set cover, got mode {cover.mode!r}")
    if cover.sets and cover.sets[0].space != p.space:
        raise ShapeError("cover and distribution live on different sample spaces")

    remaining = p.support.mask
    weights, components, supports = [], [], []
    for subset in cover.sets:
        part = remaining & subset.mask
        if not part:
            continue
        remaining &= ~part
        piece = SampleSubset.from_mask(p.space, part)
        weights.append(p.mass(piece))
        components.append(p.restricted(piece))
        supports.append(subset)
    if remaining:
        missing = SampleSubset.from_mask(p.space, remaining)
        raise CoverageError(f"cover does not reach support points {missing.to_strings()}")
    return MixtureDecomposition(tuple(weights), tuple(components), tuple(supports), family)


def reconstruct(mix: MixtureDecomposition) -> Distribution:
    space = mix.space
    probs = [Fraction(0)] * space.size
    for alpha, component in zip(mix.weights, mix.components):
        for i, value in enumerate(component.probs):
            if value:
                probs[i] += alpha * value
    return Distribution(space, tuple(probs))


def reconstruction_check(p: Distribution, mix: MixtureDecomposition, A: SufficientStatistics | None = None) -> str:
    rebuilt = reconstruct(mix)
    if rebuilt != p:
        return "failed"
    if A is not None and moment_map(A, rebuilt) != moment_map(A, p):
        return "failed"
    return "exact"


# ──────────────────────────────────────────────────────────────────────────────
# Lower bounds
# ──────────────────────────────────────────────────────────────────────────────

@dataclass(frozen=True)
class ComponentBound:
    value: int
    provenance: str
    support: SampleSubset
    packing: CoverResult | None = None

    def to_json(self) -> dict:
        payload = {"value": self.value, "provenance": self.provenance, "support": self.support}
        if self.packing is not None:
            payload["packing"] = self.packing
        return payload


def _is_independence_model(A: SufficientStatistics) -> bool:
    space = A.space
    if not space.is_binary:
        return False
    product = k_interaction_statistics(space, 1)
    return A.rank == product.rank == stack_rank(A, product)


def component_lower_bound(p: Distribution, A: SufficientStatistics) -> ComponentBound:
    """m >= kappa^f_E(supp p) for every mixture of closure(E) members equal to p."""
    if p.space != A.space:
        raise ShapeError("distribution and statistics live on different sample spaces")
    support = p.support
    parity_case = False
    if _is_independence_model(A):
        parity = parity_sets(A.space)
        parity_case = support.issubset(parity.even) or support.issubset(parity.odd)

    try:
        packing = min_facial_packing(A, support)
    except CapacityError:
        if not parity_case:
            raise
        logger.info("facial packing skipped above the guard; using the parity certificate")
        return ComponentBound(len(support), CODE_BOUND, support)

    if parity_case:
        if packing.kappa != len(support):
            logger.warning("parity certificate %d disagrees with packing search %s", len(support), packing.kappa)
        return ComponentBound(len(support), CODE_BOUND, support, packing)
    return ComponentBound(packing.kappa, packing.lower_bound.provenance, support, packing)


def parameter_count_bound(N: int, j: int) -> int:
    """ceil((dim E^j + 1) / (N + 1)): product mixtures need at least this many components to fill E^j."""
    if not 0 < j <= N:
        raise DomainError(f"need 0 < j <= N, got N={N}, j={j}")
    return -(-len(interaction_complex_k(N, j)) // (N + 1))


@dataclass(frozen=True)
class ProductMixtureBounds:
    N: int
    j: int
    parameter_bound: int
    interaction_rule: int
    parity_packing: int | None
    parity_witness: SampleSubset | None
    kappa_cross: int | None

    @property
    def best(self) -> int:
        values = [self.parameter_bound, self.interaction_rule, self.parity_packing, self.kappa_cross]
        return max(v for v in values if v is not None)

    def to_json(self) -> dict:
        return {
            "N": self.N,
            "j": self.j,
            "parameter_bound": self.parameter_bound,
            "interaction_rule": self.interaction_rule,
            "parity_packing": self.parity_packing,
            "parity_witness": self.parity_witness,
            "kappa_cross": self.kappa_cross,
            "best": self.best,
        }


def product_mixture_lower_bound(N: int, j: int, *, with_cross: bool = False) -> ProductMixtureBounds:
    """
    Lower bounds on m such that mixtures of m product distributions contain the
    closure of E^j on the binary N-cube.
    """
    parameter = parameter_count_bound(N, j)
    space = SampleSpace.binary(N)
    target = k_interaction_statistics(space, j)

    packing_value, witness, cross = None, None, None
    try:
        lattice = face_lattice(target)
    except CapacityError as exc:
        logger.warning("parity packing bound skipped: %s", exc)
    else:
        parity = parity_sets(space)
        best_mask = 0
        for mask in lattice.faces():
            if (mask & ~parity.even.mask == 0 or mask & ~parity.odd.mask == 0) and bin(mask).count("1") > bin(best_mask).count("1"):
                best_mask = mask
        packing_value = bin(best_mask).count("1")
        witness = lattice.subset(best_mask)
        if with_cross:
            cross = kappa_cross(k_interaction_statistics(space, 1), target).value

    return ProductMixtureBounds(N, j, parameter, 2 ** j - 1, packing_value, witness, cross)


# ──────────────────────────────────────────────────────────────────────────────
# Sufficient numbers of components
# ──────────────────────────────────────────────────────────────────────────────

def cube_cover_bound(N: int, k: int) -> tuple[int, Fraction]:
    """(ceil(2^{N-(k+1)} / (1 - 2^{-k})), exact 2^{N-1} / (2^k - 1))."""
    if not 0 < k < N:
        raise DomainError(f"need 0 < k < N, got N={N}, k={k}")
    return cube_cover_count(N, k), Fraction(2 ** (N - 1), 2 ** k - 1)


def cylinder_cover_of(support: SampleSubset, k: int, node_budget: int | None = None) -> CoverResult:
    """Minimum cover of `support` by k-dimensional cylinder sets."""
    space = support.space
    candidates = [c.mask for c in cylinder_sets_of_dimension(space, k)]
    budget = get_settings().node_budget if node_budget is None else node_budget
    solution = solve_set_cover(support.mask, candidates, node_budget=budget)
    sets = tuple(SampleSubset.from_mask(space, candidates[i]) for i in solution.chosen)
    return CoverResult(
        target=support,
        sets=sets,
        mode=SSET_COVER,
        kappa=len(sets),
        optimal=solution.optimal,
        lower_bound=LowerBound(solution.lower_bound, solution.provenance),
        construction=f"{k}-cylinders",
    )


@dataclass(frozen=True)
class SufficientComponents:
    k: int
    support_size: int
    value: int
    size_bound: int | None
    cylinder_cover: CoverResult
    refined_bound: Fraction | None
    cube_bound: int | None
    cube_bound_exact: Fraction | None

    def to_json(self) -> dict:
        return {
            "k": self.k,
            "support_size": self.support_size,
            "sufficient_components": self.value,
            "size_bound": self.size_bound,
            "cylinder_cover": self.cylinder_cover,
            "refined_bound": self.refined_bound,
            "refined_bound_ceiling": math.ceil(self.refined_bound) if self.refined_bound is not None else None,
            "cube_bound": self.cube_bound,
            "cube_bound_exact": self.cube_bound_exact,
        }


def sufficient_components(p: Distribution, k: int, node_budget: int | None = None) -> SufficientComponents:
    """
    A number m with p in Mixt^m(closure E^k): sets of fewer than 2^k binary
    configurations and k-cylinders are S-sets of E^k.
    """
    space = p.space
    if not 0 < k <= space.N:
        raise DomainError(f"need 0 < k <= N, got k={k}, N={space.N}")
    support = p.support
    cover = cylinder_cover_of(support, k, node_budget)
    size_bound = -(-len(support) // (2 ** k - 1)) if space.is_binary else None
    value = min(v for v in (cover.kappa, size_bound) if v is not None)

    refined = None
    if space.is_binary and k < space.N:
        coarser = cylinder_cover_of(support, k + 1, node_budget)
        refined = coarser.kappa * (1 + Fraction(2, 2 ** k - 1))

    cube, cube_exact = None, None
    if space.is_binary and k < space.N and len(support) == space.size:
        cube, cube_exact = cube_cover_bound(space.N, k)
        value = min(value, cube)
    return SufficientComponents(k, len(support), value, size_bound, cover, refined, cube, cube_exact)
