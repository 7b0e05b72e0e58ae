"""
face_oracle.py
Purpose: exact decisions for facial sets and S-sets, with certificates.
Pseudocode:
1) is_facial: maximize the mass a distribution with the moments of
   uniform-on-Y can put outside Y (exact LP over the row basis).
   - optimum 0  -> facial; the negated dual vector is a supporting functional
     c with <c, A_y> = 0 on Y and <c, A_x> >= 1 off Y.
   - optimum > 0 -> not facial; the primal optimum is the witness.
2) is_sset: facial and the columns A_Y are linearly independent.
3) sset_kernel_crosscheck: Y fails iff it contains the positive (or negative)
   support of some circuit of ker A; circuits come from (rank+1)-column subsets.
4) sset_cardinality_bounds: parity and size bounds from marking numbers.
"""
from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from analysis import exact_linalg
from analysis.coding_bounds import CodeBoundReport, marking_number
from analysis.distribution import Distribution
from analysis.exact_lp import solve_lp
from analysis.model_builder import SufficientStatistics, interaction_complex_k
from analysis.sample_space import SampleSubset
from utils.config import get_settings
from utils.errors import CapacityError, DomainError, PreconditionError, ShapeError
from utils.serialization import format_fraction

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class KernelVector:
    m: tuple[Fraction, ...]

    @property
    def positive_mask(self) -> int:
        return sum(1 << i for i, v in enumerate(self.m) if v > 0)

    @property
    def negative_mask(self) -> int:
        return sum(1 << i for i, v in enumerate(self.m) if v < 0)

    @property
    def positive(self) -> tuple[Fraction, ...]:
        return tuple(max(v, Fraction(0)) for v in self.m)

    @property
    def negative(self) -> tuple[Fraction, ...]:
        return tuple(max(-v, Fraction(0)) for v in self.m)

    def to_json(self) -> list[str]:
        return [format_fraction(v) for v in self.m]


@dataclass(frozen=True)
class FaceCertificate:
    functional: tuple[Fraction, ...]
    zero_set: SampleSubset
    slack: tuple[tuple[int, Fraction], ...]

    def values(self, A: SufficientStatistics) -> list[Fraction]:
        return [exact_linalg.dot(self.functional, A.column(x)) for x in range(A.n_columns)]

    def check(self, A: SufficientStatistics) -> bool:
        values = self.values(A)
        return all(
            (values[x] == 0) if x in self.zero_set else (values[x] >= 1)
            for x in range(A.n_columns)
        )

    def to_json(self) -> dict:
        space = self.zero_set.space
        return {
            "functional": [format_fraction(v) for v in self.functional],
            "zero_set": self.zero_set,
            "slack": {space.label(x): format_fraction(v) for x, v in self.slack},
        }


@dataclass(frozen=True)
class FacialVerdict:
    subset: SampleSubset
    is_facial: bool
    certificate: FaceCertificate | None
    witness: Distribution | None
    off_face_mass: Fraction

    def to_json(self) -> dict:
        payload = {"subset": self.subset, "is_facial": self.is_facial}
        if self.certificate is not None:
            payload["certificate"] = self.certificate
        if self.witness is not None:
            payload["witness"] = self.witness
            payload["off_face_mass"] = self.off_face_mass
        return payload


@dataclass(frozen=True)
class SSetVerdict:
    subset: SampleSubset
    is_sset: bool
    facial: FacialVerdict
    rank: int
    independent_rows: tuple[int, ...] | None

    def to_json(self) -> dict:
        payload = {
            "subset": self.subset,
            "is_sset": self.is_sset,
            "is_facial": self.facial.is_facial,
            "rank": self.rank,
            "size": len(self.subset),
            "facial": self.facial,
        }
        if self.independent_rows is not None:
            payload["independent_rows"] = list(self.independent_rows)
        return payload


@dataclass(frozen=True)
class CrosscheckVerdict:
    subset: SampleSubset
    is_sset: bool
    violation: KernelVector | None

    def to_json(self) -> dict:
        payload = {"subset": self.subset, "is_sset": self.is_sset}
        if self.violation is not None:
            payload["violating_kernel_vector"] = self.violation
        return payload


@dataclass(frozen=True)
class CardinalityBounds:
    N: int
    k: int
    parity_bound: int
    size_bound: int
    interaction_count: int
    marking: CodeBoundReport

    def to_json(self) -> dict:
        return {
            "N": self.N,
            "k": self.k,
            "parity_bound": self.parity_bound,
            "size_bound": self.size_bound,
            "interaction_count": self.interaction_count,
            "marking": self.marking,
        }


def _check_subset(A: SufficientStatistics, subset: SampleSubset) -> None:
    if subset.space != A.space:
        raise ShapeError("subset and statistics live on different sample spaces")
    if subset.is_empty():
        raise DomainError("the empty set is excluded from facial and S-set questions")


def kernel_basis(A: SufficientStatistics) -> list[KernelVector]:
    return [KernelVector(tuple(v)) for v in exact_linalg.nullspace(A.rows)]


def is_facial(A: SufficientStatistics, subset: SampleSubset) -> FacialVerdict:
    _check_subset(A, subset)
    basis = A.basis_rows
    size = len(subset)
    moments = [sum((row[y] for y in subset), Fraction(0)) / size for row in basis]
    cost = [Fraction(0) if x in subset else Fraction(-1) for x in range(A.n_columns)]
    result = solve_lp(cost, basis, moments)
    off_mass = -result.objective

    if off_mass == 0:
        functional = [-w for w in result.duals]
        columns = A.basis_columns
        slack = tuple(
            (x, exact_linalg.dot(functional, columns[x]))
            for x in range(A.n_columns) if x not in subset
        )
        certificate = FaceCertificate(A.expand_functional(functional), subset, slack)
        return FacialVerdict(subset, True, certificate, None, off_mass)

    witness = Distribution(A.space, result.x)
    logger.debug("%s is not facial: witness moves mass %s off the set", subset, off_mass)
    return FacialVerdict(subset, False, None, witness, off_mass)


def is_sset(A: SufficientStatistics, subset: SampleSubset) -> SSetVerdict:
    _check_subset(A, subset)
    facial = is_facial(A, subset)
    rank = A.column_rank(subset)
    independent = None
    if rank == len(subset):
        independent = tuple(A.basis_row_indices[i] for i in
                            exact_linalg.independent_rows(
                                [[row[j] for j in subset] for row in A.basis_rows]))
    return SSetVerdict(subset, facial.is_facial and rank == len(subset), facial, rank, independent)


def face_dimension(A: SufficientStatistics, subset: SampleSubset) -> int:
    verdict = is_facial(A, subset)
    if not verdict.is_facial:
        raise PreconditionError(f"{subset} is not facial")
    return A.column_rank(subset) - 1


def _guard(A: SufficientStatistics, guard: int | None) -> None:
    limit = guard if guard is not None else get_settings().enumeration_guard
    if A.n_columns > limit:
        raise CapacityError(f"|X| = {A.n_columns} exceeds the enumeration guard {limit}")


@lru_cache(maxsize=32)
def _circuits(A: SufficientStatistics) -> tuple[KernelVector, ...]:
    basis = A.basis_rows
    n = A.n_columns
    r = len(basis)
    found: dict[tuple[Fraction, ...], KernelVector] = {}
    for subset in itertools.combinations(range(n), r + 1):
        null = exact_linalg.nullspace([[row[j] for j in subset] for row in basis])
        if len(null) != 1:
            continue
        vector = [Fraction(0)] * n
        for j, v in zip(subset, null[0]):
            vector[j] = v
        lead = next(v for v in vector if v != 0)
        scale = abs(lead) * (1 if lead > 0 else -1)
        canonical = tuple(v / scale for v in vector)
        found.setdefault(canonical, KernelVector(canonical))
    logger.info("found %d circuits of ker A (|X|=%d, rank=%d)", len(found), n, r)
    return tuple(found[key] for key in sorted(found))


def circuits(A: SufficientStatistics, guard: int | None = None) -> tuple[KernelVector, ...]:
    """Elementary vectors of ker A, one per support, first nonzero entry 1."""
    _guard(A, guard)
    return _circuits(A)


@lru_cache(maxsize=32)
def _violating_supports(A: SufficientStatistics) -> tuple[tuple[int, KernelVector], ...]:
    """Inclusion-minimal circuit half-supports, each with a circuit realizing it."""
    candidates: dict[int, KernelVector] = {}
    for circuit in _circuits(A):
        negated = KernelVector(tuple(-v for v in circuit.m))
        candidates.setdefault(circuit.positive_mask, circuit)
        candidates.setdefault(circuit.negative_mask, negated)
    minimal: list[tuple[int, KernelVector]] = []
    for mask in sorted(candidates, key=lambda m: (bin(m).count("1"), m)):
        if not any(kept & ~mask == 0 for kept, _ in minimal):
            minimal.append((mask, candidates[mask]))
    return tuple(minimal)


def violating_supports(A: SufficientStatistics, guard: int | None = None) -> tuple[int, ...]:
    """Masks S such that Y fails the kernel criterion iff Y contains some S."""
    _guard(A, guard)
    return tuple(mask for mask, _ in _violating_supports(A))


def crosscheck_mask(A: SufficientStatistics, mask: int) -> KernelVector | None:
    """The violating kernel vector for the subset `mask`, or None when it passes."""
    for support, vector in _violating_supports(A):
        if support & ~mask == 0:
            return vector
    return None


def sset_kernel_crosscheck(A: SufficientStatistics, subset: SampleSubset, guard: int | None = None) -> CrosscheckVerdict:
    _check_subset(A, subset)
    _guard(A, guard)
    violation = crosscheck_mask(A, subset.mask)
    return CrosscheckVerdict(subset, violation is None, violation)


def sset_cardinality_bounds(N: int, k: int) -> CardinalityBounds:
    if not 0 < k < N:
        raise DomainError(f"need 0 < k < N, got N={N}, k={k}")
    marking = marking_number(N, k + 1)
    K = marking.exact if marking.exact is not None else marking.lower
    interactions = len(interaction_complex_k(N, k))
    return CardinalityBounds(
        N=N,
        k=k,
        parity_bound=2 ** (N - 1) - K,
        size_bound=min(interactions, 2 ** N - 2 * K),
        interaction_count=interactions,
        marking=marking,
    )
