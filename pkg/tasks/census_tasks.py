# tasks/census_tasks.py
"""
Batch sweeps over whole face lattices: oracle agreement, symmetry invariance,
neighborliness, and seeded pentagon acceptance runs. Chunks run through
joblib/loky when threads > 1.
"""
from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass

import numpy as np
from joblib import Parallel, delayed, parallel_backend

from analysis.distribution import Distribution, random_distribution
from analysis.face_lattice import FaceLattice, face_lattice
from analysis.face_oracle import is_facial, violating_supports
from analysis.model_builder import SufficientStatistics
from analysis.sample_space import SampleSpace, SampleSubset, permute_coordinates, xor_translate
from covering.set_cover import popcount
from mixtures.pentagon import pentagon_two_mixture_solve
from utils.config import get_settings

logger = logging.getLogger(__name__)

_CHUNK = 4096


def _run_chunks(func, chunks: list, threads: int, label: str) -> list:
    if threads > 1:
        try:
            with parallel_backend("loky", inner_max_num_threads=1):
                return Parallel(n_jobs=threads)(delayed(func)(*chunk) for chunk in chunks)
        except (PermissionError, NotImplementedError, OSError) as exc:
            logger.warning("Parallel %s disabled (%s); running sequentially.", label, exc)
    return [func(*chunk) for chunk in chunks]


# ────────────────────────────────────────────────────────────────
# S-set verdict agreement
# ────────────────────────────────────────────────────────────────
@dataclass(frozen=True)
class SweepReport:
    statistics: str
    subsets_checked: int
    sset_count: int
    disagreements: tuple[int, ...]

    @property
    def agrees(self) -> bool:
        return not self.disagreements

    def to_json(self) -> dict:
        return {
            "statistics": self.statistics,
            "subsets_checked": self.subsets_checked,
            "sset_count": self.sset_count,
            "agrees": self.agrees,
            "disagreements": list(self.disagreements),
        }


def _sweep_chunk(ssets: frozenset, supports: tuple, start: int, stop: int) -> tuple[int, list[int]]:
    count, bad = 0, []
    for mask in range(start, stop):
        by_lattice = mask in ssets
        by_kernel = not any(support & ~mask == 0 for support in supports)
        count += by_lattice
        if by_lattice != by_kernel:
            bad.append(mask)
    return count, bad


def sset_crosscheck_sweep(A: SufficientStatistics, threads: int | None = None, guard: int | None = None) -> SweepReport:
    """Rank-and-facial S-set verdict against the kernel criterion on every nonempty subset."""
    threads = get_settings().threads if threads is None else threads
    lattice = face_lattice(A, guard)
    ssets = frozenset(lattice.sset_masks())
    supports = violating_supports(A, guard)
    total = 1 << A.n_columns
    chunks = [(ssets, supports, start, min(start + _CHUNK, total)) for start in range(1, total, _CHUNK)]
    results = _run_chunks(_sweep_chunk, chunks, threads, "crosscheck sweep")
    count = sum(c for c, _ in results)
    bad = sorted(m for _, part in results for m in part)
    if bad:
        logger.warning("%d subsets disagree between the oracles for %s", len(bad), A.name)
    return SweepReport(A.name, total - 1, count, tuple(bad))


def lp_lattice_agreement(A: SufficientStatistics, samples: int, seed: int | None = None) -> list[SampleSubset]:
    """Random subsets on which the LP facial test and the lattice disagree (expected empty)."""
    seed = get_settings().seed if seed is None else seed
    rng = np.random.default_rng(seed)
    lattice = face_lattice(A)
    mismatches = []
    for _ in range(samples):
        mask = int(rng.integers(1, 1 << A.n_columns))
        subset = lattice.subset(mask)
        if is_facial(A, subset).is_facial != lattice.contains(mask):
            mismatches.append(subset)
    return mismatches


# ────────────────────────────────────────────────────────────────
# Symmetries of the binary cube
# ────────────────────────────────────────────────────────────────
def _verdict(lattice: FaceLattice, mask: int) -> tuple[bool, bool]:
    return lattice.contains(mask), lattice.is_sset_mask(mask)


def symmetry_violations(
    A: SufficientStatistics,
    pairs: int | None = None,
    seed: int | None = None,
) -> list[tuple[str, SampleSubset]]:
    """
    (action, subset) pairs whose facial / S-set verdict changes under an XOR
    translation or a coordinate permutation. `pairs=None` checks every subset
    against every translation and permutation.
    """
    space = A.space
    lattice = face_lattice(A)
    permutations = list(itertools.permutations(range(space.N)))
    if pairs is None:
        cases = [
            (mask, space.configurations, permutations)
            for mask in range(1, 1 << space.size)
        ]
    else:
        rng = np.random.default_rng(get_settings().seed if seed is None else seed)
        cases = [
            (
                int(rng.integers(1, 1 << space.size)),
                [space.config_of(int(rng.integers(space.size)))],
                [permutations[int(rng.integers(len(permutations)))]],
            )
            for _ in range(pairs)
        ]

    violations = []
    for mask, translations, perms in cases:
        subset = lattice.subset(mask)
        verdict = _verdict(lattice, mask)
        for x in translations:
            if _verdict(lattice, xor_translate(x, subset).mask) != verdict:
                violations.append((f"xor {space.format_config(x)}", subset))
        for perm in perms:
            if _verdict(lattice, permute_coordinates(subset, perm).mask) != verdict:
                violations.append((f"permute {perm}", subset))
    return violations


# ────────────────────────────────────────────────────────────────
# Neighborliness and simpliciality
# ────────────────────────────────────────────────────────────────
def neighborliness(lattice: FaceLattice) -> int:
    """Largest s such that every subset with at most s points is an S-set."""
    n = lattice.statistics.n_columns
    ssets = set(lattice.sset_masks())
    for size in range(1, n + 1):
        for combo in itertools.combinations(range(n), size):
            if sum(1 << i for i in combo) not in ssets:
                return size - 1
    return n


def simplicial_below(lattice: FaceLattice) -> int:
    """Largest d such that every facial set of dimension < d is an S-set."""
    failures = [lattice.dimension(m) for m in lattice.faces() if not lattice.is_sset_mask(m)]
    return min(failures) if failures else lattice.dimension(lattice.full_mask) + 1


def maximal_ssets_within(lattice: FaceLattice, block: SampleSubset) -> list[SampleSubset]:
    """Inclusion-maximal S-sets contained in `block`."""
    candidates = sorted((m for m in lattice.sset_masks() if m & ~block.mask == 0), key=lambda m: (-popcount(m), m))
    kept: list[int] = []
    for m in candidates:
        if not any(m & ~k == 0 for k in kept):
            kept.append(m)
    return [lattice.subset(m) for m in kept]


# ────────────────────────────────────────────────────────────────
# Pentagon acceptance runs
# ────────────────────────────────────────────────────────────────
def _pentagon_residual(p: Distribution, tol: float) -> float:
    return pentagon_two_mixture_solve(p, tol).residual


def pentagon_batch(count: int, seed: int | None = None, tol: float | None = None, threads: int | None = None) -> dict:
    settings = get_settings()
    seed = settings.seed if seed is None else seed
    tol = settings.pentagon_tol if tol is None else tol
    threads = settings.threads if threads is None else threads

    space = SampleSpace((5,))
    rng = np.random.default_rng(seed)
    targets = [random_distribution(space, rng) for _ in range(count)]
    targets += [Distribution.point_mass(space, x) for x in range(space.size)]
    residuals = _run_chunks(_pentagon_residual, [(p, tol) for p in targets], threads, "pentagon batch")
    failures = [i for i, r in enumerate(residuals) if r >= tol]
    return {
        "targets": len(targets),
        "seed": seed,
        "tol": tol,
        "max_residual": max(residuals),
        "failures": failures,
        "passed": not failures,
    }
