"""
face_lattice.py
Purpose: the complete lattice of facial sets for small sample spaces, facet
census reports, and facets of cyclic polytopes by Gale evenness.
Pseudocode:
1) Facets: for every (rank-1)-subset S of columns not inside a known facet,
   take the hyperplane through A_S (1-dim left kernel); keep it when all
   columns lie on one side. Chunks of subsets run through joblib.
2) Facial sets: X plus the closure of the facet family under intersection.
3) Dimensions: exact column rank minus one.
"""
from __future__ import annotations

import itertools
import logging
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

import pandas as pd
from joblib import Parallel, delayed, parallel_backend

from analysis import exact_linalg
from analysis.model_builder import SufficientStatistics
from analysis.sample_space import SampleSubset, parity_sets
from covering.set_cover import bits, popcount
from utils.config import get_settings
from utils.errors import CapacityError, DomainError

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class FaceLattice:
    statistics: SufficientStatistics
    facets: tuple[int, ...]
    normals: tuple[tuple[Fraction, ...], ...]
    dimensions: dict[int, int] = field(repr=False)

    @property
    def space(self):
        return self.statistics.space

    @property
    def full_mask(self) -> int:
        return (1 << self.statistics.n_columns) - 1

    def __len__(self) -> int:
        return len(self.dimensions)

    def contains(self, mask: int) -> bool:
        return mask in self.dimensions

    def is_facial(self, subset: SampleSubset) -> bool:
        return subset.mask in self.dimensions

    def closure(self, mask: int) -> int:
        """Smallest facial set containing `mask`."""
        result = self.full_mask
        for facet in self.facets:
            if mask & ~facet == 0:
                result &= facet
        return result

    def dimension(self, mask: int) -> int:
        return self.dimensions[mask]

    def is_sset_mask(self, mask: int) -> bool:
        dim = self.dimensions.get(mask)
        return dim is not None and dim == popcount(mask) - 1

    def is_sset(self, subset: SampleSubset) -> bool:
        return self.is_sset_mask(subset.mask)

    def faces(self) -> list[int]:
        return sorted(self.dimensions, key=lambda m: (popcount(m), m))

    def sset_masks(self) -> list[int]:
        return [m for m in self.faces() if self.is_sset_mask(m)]

    def maximal_ssets(self) -> list[int]:
        ssets = set(self.sset_masks())
        n = self.statistics.n_columns
        maximal = [
            m for m in ssets
            if not any((m >> x) & 1 == 0 and (m | (1 << x)) in ssets for x in range(n))
        ]
        return sorted(maximal, key=lambda m: (-popcount(m), m))

    def maximal_facial_subsets(self, target: int) -> list[int]:
        inside = sorted((m for m in self.dimensions if m & ~target == 0), key=lambda m: (-popcount(m), m))
        kept: list[int] = []
        for m in inside:
            if not any(m & ~k == 0 for k in kept):
                kept.append(m)
        return kept

    def subset(self, mask: int) -> SampleSubset:
        return SampleSubset.from_mask(self.space, mask)


def _hyperplanes_through(basis_qq: list[list], n: int, subsets: list[tuple[int, ...]]) -> list[tuple[int, tuple[Fraction, ...]]]:
    """Facet masks (and normals on the row basis) spanned by some subset in `subsets`."""
    r = len(basis_qq)
    columns_qq = [[basis_qq[i][j] for i in range(r)] for j in range(n)]
    columns = [[exact_linalg.from_qq(v) for v in col] for col in columns_qq]
    found: list[tuple[int, tuple[Fraction, ...]]] = []
    for subset in subsets:
        subset_mask = sum(1 << j for j in subset)
        if any(subset_mask & ~facet == 0 for facet, _ in found):
            continue
        dm = exact_linalg.qq_domain_matrix([list(columns_qq[j]) for j in subset], (len(subset), r))
        null = dm.nullspace()
        if null.shape[0] != 1:
            continue
        normal = exact_linalg.to_fraction_rows(null)[0]
        values = [exact_linalg.dot(normal, col) for col in columns]
        if all(v >= 0 for v in values):
            sign = 1
        elif all(v <= 0 for v in values):
            sign = -1
        else:
            continue
        normal = tuple(sign * v for v in normal)
        mask = sum(1 << j for j, v in enumerate(values) if v == 0)
        found.append((mask, normal))
    return found


def _facet_search_parallel(basis_qq, n, chunks, threads):
    with parallel_backend("loky", inner_max_num_threads=1):
        return Parallel(n_jobs=threads)(delayed(_hyperplanes_through)(basis_qq, n, chunk) for chunk in chunks)


def _facet_search(basis_qq, n, chunks, threads: int):
    if threads > 1:
        try:
            return _facet_search_parallel(basis_qq, n, chunks, threads)
        except (PermissionError, NotImplementedError, OSError) as exc:
            logger.warning("Parallel facet search disabled (%s); running sequentially.", exc)
    return [_hyperplanes_through(basis_qq, n, chunk) for chunk in chunks]


def find_facets(A: SufficientStatistics, threads: int = 1) -> list[tuple[int, tuple[Fraction, ...]]]:
    n = A.n_columns
    r = len(A.basis_rows)
    if r <= 1:
        return []
    basis_qq = [[exact_linalg.to_qq(v) for v in row] for row in A.basis_rows]
    size = r - 1
    chunks = []
    for first in range(n - size + 1):
        chunk = [(first,) + rest for rest in itertools.combinations(range(first + 1, n), size - 1)]
        if chunk:
            chunks.append(chunk)
    merged: dict[int, tuple[Fraction, ...]] = {}
    for part in _facet_search(basis_qq, n, chunks, threads):
        for mask, normal in part:
            merged.setdefault(mask, normal)
    return sorted(merged.items())


def _close_under_intersection(facets: list[int]) -> set[int]:
    known = set(facets)
    frontier = list(facets)
    while frontier:
        fresh = []
        for face in frontier:
            for facet in facets:
                meet = face & facet
                if meet and meet not in known:
                    known.add(meet)
                    fresh.append(meet)
        frontier = fresh
    return known


def enumerate_facial_sets(A: SufficientStatistics, guard: int | None = None, threads: int | None = None) -> FaceLattice:
    settings = get_settings()
    limit = settings.enumeration_guard if guard is None else guard
    if A.n_columns > limit:
        raise CapacityError(f"|X| = {A.n_columns} exceeds the enumeration guard {limit}")
    threads = settings.threads if threads is None else threads

    facets = find_facets(A, threads=threads)
    masks = _close_under_intersection([m for m, _ in facets])
    full = (1 << A.n_columns) - 1
    masks.add(full)

    basis = A.basis_rows
    kernel = exact_linalg.nullspace(A.rows)

    def column_rank(mask: int) -> int:
        inside = bits(mask)
        outside = bits(full & ~mask)
        if len(kernel) * len(outside) < len(basis) * len(inside):
            # rank A_Y = |Y| - dim{m in ker A : supp m in Y}
            restricted = exact_linalg.rank([[v[j] for j in outside] for v in kernel]) if outside and kernel else 0
            return len(inside) - (len(kernel) - restricted)
        return exact_linalg.rank([[row[j] for j in inside] for row in basis])

    dimensions = {mask: column_rank(mask) - 1 for mask in masks}
    logger.info("face lattice: %d facets, %d facial sets", len(facets), len(dimensions))
    return FaceLattice(
        statistics=A,
        facets=tuple(m for m, _ in facets),
        normals=tuple(A.expand_functional(normal) for _, normal in facets),
        dimensions=dimensions,
    )


@lru_cache(maxsize=16)
def face_lattice(A: SufficientStatistics, guard: int | None = None, threads: int | None = None) -> FaceLattice:
    """Memoized enumerate_facial_sets."""
    return enumerate_facial_sets(A, guard=guard, threads=threads)


def facial_closure(lattice: FaceLattice, subset: SampleSubset) -> SampleSubset:
    """Intersection of all facets containing `subset` (X when there is none)."""
    if subset.is_empty():
        raise DomainError("the empty set has no facial closure")
    return lattice.subset(lattice.closure(subset.mask))


def facet_table(lattice: FaceLattice) -> pd.DataFrame:
    space = lattice.space
    parity = parity_sets(space) if space.is_binary else None
    records = []
    for mask in lattice.facets:
        subset = lattice.subset(mask)
        record = {
            "facet": " ".join(subset.to_strings()),
            "size": popcount(mask),
            "dimension": lattice.dimension(mask),
            "simplex": lattice.is_sset_mask(mask),
        }
        if parity is not None:
            record["even"] = popcount(mask & parity.even.mask)
            record["odd"] = popcount(mask & parity.odd.mask)
        records.append(record)
    return pd.DataFrame.from_records(records)


def facet_census(lattice: FaceLattice) -> dict:
    """Facet count, vertex counts, simplex facets, parity intersections, f-vector."""
    table = facet_table(lattice)
    f_vector = Counter(lattice.dimensions.values())
    report = {
        "statistics": lattice.statistics.name,
        "dimension": lattice.dimension(lattice.full_mask),
        "facet_count": int(len(table)),
        "facial_set_count": len(lattice),
        "f_vector": {str(d): f_vector[d] for d in sorted(f_vector)},
        "facet_vertex_counts": {},
        "simplex_facets": 0,
        "simplex_facet_vertex_counts": {},
    }
    if table.empty:
        return report
    report["facet_vertex_counts"] = {str(k): int(v) for k, v in table["size"].value_counts().sort_index().items()}
    simplices = table[table["simplex"]]
    report["simplex_facets"] = int(len(simplices))
    report["simplex_facet_vertex_counts"] = {
        str(k): int(v) for k, v in simplices["size"].value_counts().sort_index().items()
    }
    if "even" in table.columns:
        parity = parity_sets(lattice.space)
        report["max_sset_parity_intersection"] = max(
            (max(popcount(m & parity.even.mask), popcount(m & parity.odd.mask)) for m in lattice.sset_masks()),
            default=0,
        )
        report["simplex_facets_by_even_count"] = {
            str(k): int(v) for k, v in simplices["even"].value_counts().sort_index().items()
        }
        report["simplex_facets_by_odd_count"] = {
            str(k): int(v) for k, v in simplices["odd"].value_counts().sort_index().items()
        }
    return report


def cyclic_facets_gale(v: int, d: int) -> list[tuple[int, ...]]:
    """
    Facets of the cyclic polytope C(v, d) as 1-based vertex tuples: d-subsets J
    such that any two vertices outside J are separated by an even number of
    members of J.
    """
    if d < 1 or v < d + 1:
        raise DomainError(f"need v >= d + 1 >= 2, got v={v}, d={d}")
    facets = []
    for J in itertools.combinations(range(1, v + 1), d):
        members = set(J)
        outside = [i for i in range(1, v + 1) if i not in members]
        if all(
            sum(1 for j in J if a < j < b) % 2 == 0
            for a, b in itertools.combinations(outside, 2)
        ):
            facets.append(J)
    return facets
