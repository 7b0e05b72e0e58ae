"""
engine.py
Purpose: minimum S-set covers (kappa^s), minimum facial packings (kappa^f),
the cross quantity max_Z kappa^f_E(Z) over facial sets Z of a second family,
and independent re-verification of any cover.
Pseudocode:
1) Candidate pools come from the face lattice: maximal S-sets for covers,
   maximal facial subsets of Z for packings.
2) The exact set-cover search in covering.set_cover returns the witness and
   the optimality evidence (exhausted search or dual bound).
3) verify_cover re-runs the LP oracles on every set, then checks union,
   subset and disjointness conditions, itemizing failures.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Mapping

from analysis.face_lattice import FaceLattice, face_lattice
from analysis.face_oracle import is_facial, is_sset
from analysis.model_builder import SufficientStatistics
from analysis.sample_space import SampleSpace, SampleSubset
from covering.set_cover import solve_set_cover
from utils.config import get_settings
from utils.errors import DomainError, MalformedJobError, ShapeError

logger = logging.getLogger(__name__)

SSET_COVER = "sset-cover"
FACIAL_PACKING = "facial-packing"


@dataclass(frozen=True)
class LowerBound:
    value: int
    provenance: str

    def to_json(self) -> dict:
        return {"value": self.value, "provenance": self.provenance}


@dataclass(frozen=True)
class CoverResult:
    target: SampleSubset
    sets: tuple[SampleSubset, ...]
    mode: str
    kappa: int | None
    optimal: bool
    lower_bound: LowerBound
    disjoint: bool = False
    construction: str | None = None
    verified: bool | None = None

    @property
    def feasible(self) -> bool:
        return self.kappa is not None

    def to_json(self) -> dict:
        payload = {
            "mode": self.mode,
            "kappa": self.kappa if self.kappa is not None else "inf",
            "optimal": self.optimal,
            "lower_bound": self.lower_bound,
            "target": self.target,
            "sets": list(self.sets),
            "disjoint": self.disjoint,
        }
        if self.construction:
            payload["construction"] = self.construction
        if self.verified is not None:
            payload["verified"] = self.verified
        return payload

    @classmethod
    def from_json(cls, payload: Mapping, space: SampleSpace) -> "CoverResult":
        try:
            sets = tuple(space.subset_from_strings(s) for s in payload["sets"])
            target = (space.subset_from_strings(payload["target"]) if "target" in payload else space.full())
            kappa = payload["kappa"]
            bound = payload.get("lower_bound", {"value": 0, "provenance": "dual bound"})
            return cls(
                target=target,
                sets=sets,
                mode=payload["mode"],
                kappa=None if kappa == "inf" else int(kappa),
                optimal=bool(payload.get("optimal", False)),
                lower_bound=LowerBound(int(bound["value"]), bound["provenance"]),
                disjoint=bool(payload.get("disjoint", False)),
                construction=payload.get("construction"),
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise MalformedJobError(f"malformed cover JSON: {exc}") from exc


@dataclass(frozen=True)
class VerificationReport:
    passed: bool
    failures: tuple[str, ...]
    checked_sets: int

    def to_json(self) -> dict:
        return {"passed": self.passed, "failures": list(self.failures), "checked_sets": self.checked_sets}


@dataclass(frozen=True)
class KappaCross:
    value: int | None
    witness: SampleSubset | None
    packing: CoverResult | None
    evaluated: int

    def to_json(self) -> dict:
        return {
            "kappa_cross": self.value if self.value is not None else "inf",
            "witness": self.witness,
            "packing": self.packing,
            "facial_sets_evaluated": self.evaluated,
        }


def _lattice_for(A: SufficientStatistics, lattice: FaceLattice | None) -> FaceLattice:
    if lattice is not None:
        if lattice.statistics != A:
            raise ShapeError("lattice was built for different statistics")
        return lattice
    return face_lattice(A)


def _solve(
    target: SampleSubset,
    candidates: list[int],
    mode: str,
    space: SampleSpace,
    node_budget: int | None,
) -> CoverResult:
    budget = get_settings().node_budget if node_budget is None else node_budget
    solution = solve_set_cover(target.mask, candidates, node_budget=budget)
    if not solution.feasible:
        return CoverResult(target, (), mode, None, True, LowerBound(0, solution.provenance))
    sets = tuple(SampleSubset.from_mask(space, candidates[i]) for i in solution.chosen)
    return CoverResult(
        target=target,
        sets=sets,
        mode=mode,
        kappa=len(sets),
        optimal=solution.optimal,
        lower_bound=LowerBound(solution.lower_bound, solution.provenance),
    )


def min_sset_cover(
    A: SufficientStatistics,
    target: SampleSubset | None = None,
    *,
    lattice: FaceLattice | None = None,
    node_budget: int | None = None,
) -> CoverResult:
    lattice = _lattice_for(A, lattice)
    target = target if target is not None else A.space.full()
    if target.space != A.space:
        raise ShapeError("target lives on another sample space")
    if target.is_empty():
        raise DomainError("covers of the empty set are not considered")
    return _solve(target, lattice.maximal_ssets(), SSET_COVER, A.space, node_budget)


def min_facial_packing(
    A: SufficientStatistics,
    target: SampleSubset,
    *,
    lattice: FaceLattice | None = None,
    node_budget: int | None = None,
) -> CoverResult:
    lattice = _lattice_for(A, lattice)
    if target.space != A.space:
        raise ShapeError("target lives on another sample space")
    if target.is_empty():
        raise DomainError("packings of the empty set are not considered")
    candidates = lattice.maximal_facial_subsets(target.mask)
    return _solve(target, candidates, FACIAL_PACKING, A.space, node_budget)


def kappa_cross(
    A: SufficientStatistics,
    A_prime: SufficientStatistics,
    *,
    guard: int | None = None,
    node_budget: int | None = None,
) -> KappaCross:
    """max over facial sets Z of A_prime of kappa^f_A(Z); first maximizer in lattice order."""
    if A.space != A_prime.space:
        raise ShapeError("both families must live on the same sample space")
    lattice = face_lattice(A, guard)
    other = face_lattice(A_prime, guard)
    best: CoverResult | None = None
    evaluated = 0
    for mask in other.faces():
        evaluated += 1
        packing = min_facial_packing(A, other.subset(mask), lattice=lattice, node_budget=node_budget)
        if packing.kappa is None:
            logger.info("facial set %s of the second family admits no packing", packing.target)
            return KappaCross(None, packing.target, packing, evaluated)
        if best is None or packing.kappa > best.kappa:
            best = packing
    return KappaCross(best.kappa, best.target, best, evaluated)


def verify_cover(A: SufficientStatistics, result: CoverResult) -> VerificationReport:
    failures: list[str] = []
    if result.mode not in (SSET_COVER, FACIAL_PACKING):
        return VerificationReport(False, (f"unknown mode {result.mode!r}",), 0)

    union = 0
    for i, subset in enumerate(result.sets):
        if subset.space != A.space:
            failures.append(f"set {i} lives on another sample space")
            continue
        if subset.is_empty():
            failures.append(f"set {i} is empty")
            continue
        union |= subset.mask
        if result.mode == SSET_COVER:
            verdict = is_sset(A, subset)
            if not verdict.is_sset:
                reason = "not facial" if not verdict.facial.is_facial else f"rank {verdict.rank} < {len(subset)}"
                failures.append(f"set {i} {subset.to_strings()} is not an S-set ({reason})")
        else:
            if not is_facial(A, subset).is_facial:
                failures.append(f"set {i} {subset.to_strings()} is not facial")
            if not subset.issubset(result.target):
                failures.append(f"set {i} {subset.to_strings()} is not contained in the target")

    target_mask = result.target.mask
    if result.feasible:
        missing = target_mask & ~union
        if missing:
            failures.append(f"union misses {SampleSubset.from_mask(A.space, missing).to_strings()}")
        if result.mode == FACIAL_PACKING and union & ~target_mask:
            failures.append("union of the packing exceeds the target")
        if result.kappa != len(result.sets):
            failures.append(f"kappa {result.kappa} differs from the number of sets {len(result.sets)}")
        if result.optimal and result.kappa != result.lower_bound.value:
            failures.append(f"claimed optimal but kappa {result.kappa} != lower bound {result.lower_bound.value}")
    if result.disjoint:
        seen = 0
        for i, subset in enumerate(result.sets):
            if seen & subset.mask:
                failures.append(f"set {i} overlaps an earlier set")
            seen |= subset.mask

    return VerificationReport(not failures, tuple(failures), len(result.sets))
