"""
model_builder.py
Purpose: sufficient-statistics matrices for hierarchical models (binary
characters, q-ary indicators), the k-interaction families, n-gon families and
the moment map.
Pseudocode:
1) InteractionComplex: subsets of coordinates, always containing the empty set,
   ordered by (size, members).
2) character_matrix: rows (-1)^{|supp(x) ∩ λ|}; qary_statistics: indicator rows
   [x_λ = a] plus the all-ones row; ngon_statistics: rows 1, t, t^2.
3) SufficientStatistics caches its exact rank and a row basis used by the oracles.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

import pandas as pd

from analysis import exact_linalg
from analysis.distribution import Distribution
from analysis.sample_space import SampleSpace, hamming_ball_size
from utils.errors import DomainError, ShapeError, UnsupportedSpaceError
from utils.serialization import format_fraction


def _sort_key(interaction: frozenset[int]) -> tuple[int, tuple[int, ...]]:
    return (len(interaction), tuple(sorted(interaction)))


@dataclass(frozen=True)
class InteractionComplex:
    N: int
    sets: tuple[frozenset[int], ...]
    hierarchical: bool = True

    def __post_init__(self):
        sets = {frozenset(int(i) for i in s) for s in self.sets}
        sets.add(frozenset())
        for s in sets:
            if any(not 0 <= i < self.N for i in s):
                raise DomainError(f"interaction {sorted(s)} uses coordinates outside [0, {self.N})")
        if self.hierarchical:
            for s in sets:
                for size in range(len(s)):
                    for sub in itertools.combinations(sorted(s), size):
                        if frozenset(sub) not in sets:
                            raise DomainError(f"complex is not inclusion-complete: {sorted(s)} lacks {list(sub)}")
        object.__setattr__(self, "sets", tuple(sorted(sets, key=_sort_key)))

    @classmethod
    def from_generators(cls, N: int, generators: Iterable[Iterable[int]]) -> "InteractionComplex":
        """Hierarchical closure of the generating interactions."""
        sets = set()
        for g in generators:
            g = sorted(set(g))
            for size in range(len(g) + 1):
                sets.update(frozenset(sub) for sub in itertools.combinations(g, size))
        return cls(N, tuple(sets))

    @property
    def max_order(self) -> int:
        return max(len(s) for s in self.sets)

    def __len__(self) -> int:
        return len(self.sets)

    def labels(self) -> list[str]:
        return [interaction_label(s) for s in self.sets]

    def to_json(self) -> dict:
        return {"N": self.N, "sets": [sorted(i + 1 for i in s) for s in self.sets]}


def interaction_label(interaction: frozenset[int]) -> str:
    # 1-based variable names in labels
    return "{" + ",".join(str(i + 1) for i in sorted(interaction)) + "}"


def interaction_complex_k(N: int, k: int) -> InteractionComplex:
    if not 0 <= k <= N:
        raise DomainError(f"interaction order {k} outside [0, {N}]")
    sets = [frozenset(c) for size in range(k + 1) for c in itertools.combinations(range(N), size)]
    complex_ = InteractionComplex(N, tuple(sets))
    assert len(complex_) == hamming_ball_size(N, k)
    return complex_


def interaction_dimension(space: SampleSpace, complex_: InteractionComplex) -> int:
    """dim V_Δ counting the empty interaction once (the rank of any statistics for Δ)."""
    return sum(math.prod(space.arities[i] - 1 for i in s) for s in complex_.sets)


@dataclass(frozen=True)
class MomentVector:
    entries: tuple[Fraction, ...]

    def to_json(self) -> list[str]:
        return [format_fraction(v) for v in self.entries]


@dataclass(frozen=True)
class SufficientStatistics:
    space: SampleSpace
    rows: tuple[tuple[Fraction, ...], ...]
    labels: tuple[str, ...]
    name: str = "custom"

    def __post_init__(self):
        rows = tuple(tuple(Fraction(v) for v in row) for row in self.rows)
        if not rows:
            raise ShapeError("statistics need at least the all-ones row")
        if any(len(row) != self.space.size for row in rows):
            raise ShapeError(f"every row must have {self.space.size} entries")
        if any(v != 1 for v in rows[0]):
            raise ShapeError("the first row must be the all-ones row")
        if len(self.labels) != len(rows):
            raise ShapeError("one label per row required")
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "labels", tuple(self.labels))

    @property
    def n_columns(self) -> int:
        return self.space.size

    @cached_property
    def rank(self) -> int:
        return exact_linalg.rank(self.rows)

    @cached_property
    def basis_row_indices(self) -> tuple[int, ...]:
        return tuple(exact_linalg.independent_rows(self.rows))

    @cached_property
    def basis_rows(self) -> tuple[tuple[Fraction, ...], ...]:
        """Linearly independent rows with the same span (the all-ones row first)."""
        return tuple(self.rows[i] for i in self.basis_row_indices)

    @cached_property
    def basis_columns(self) -> tuple[tuple[Fraction, ...], ...]:
        return tuple(zip(*self.basis_rows))

    def column(self, index: int) -> tuple[Fraction, ...]:
        return tuple(row[index] for row in self.rows)

    def columns(self, indices: Iterable[int]) -> list[list[Fraction]]:
        """Column submatrix A_Y as a list of rows."""
        indices = list(indices)
        return [[row[j] for j in indices] for row in self.rows]

    def column_rank(self, indices: Iterable[int]) -> int:
        indices = list(indices)
        if not indices:
            return 0
        return exact_linalg.rank([[row[j] for j in indices] for row in self.basis_rows])

    def expand_functional(self, basis_functional: Sequence[Fraction]) -> tuple[Fraction, ...]:
        """Map a functional on the row basis back to one over all rows (zeros elsewhere)."""
        full = [Fraction(0)] * len(self.rows)
        for i, value in zip(self.basis_row_indices, basis_functional):
            full[i] = Fraction(value)
        return tuple(full)

    def statistics_frame(self) -> pd.DataFrame:
        """Matrix as a DataFrame: one row per statistic, one column per configuration."""
        columns = [self.space.label(i) for i in range(self.space.size)]
        data = [[format_fraction(v) if v.denominator != 1 else str(v.numerator) for v in row] for row in self.rows]
        return pd.DataFrame(data, index=list(self.labels), columns=columns)

    def export_csv(self, path=None) -> str:
        frame = self.statistics_frame()
        frame.index.name = "statistic"
        text = frame.to_csv()
        if path:
            with open(path, "w", encoding="utf-8") as handle:
                handle.write(text)
        return text

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "arities": list(self.space.arities),
            "labels": list(self.labels),
            "rank": self.rank,
            "rows": [[format_fraction(v) for v in row] for row in self.rows],
        }


def character_matrix(N: int, complex_: InteractionComplex) -> SufficientStatistics:
    if complex_.N != N:
        raise DomainError(f"complex is over {complex_.N} variables, not {N}")
    space = SampleSpace.binary(N)
    rows = []
    for interaction in complex_.sets:
        rows.append(tuple(
            Fraction((-1) ** sum(config[i] for i in interaction)) for config in space.configurations
        ))
    return SufficientStatistics(space, tuple(rows), tuple(complex_.labels()), name=f"characters(N={N}, order<={complex_.max_order})")


def qary_statistics(space: SampleSpace, complex_: InteractionComplex) -> SufficientStatistics:
    if complex_.N != space.N:
        raise DomainError(f"complex is over {complex_.N} variables, space has {space.N}")
    rows = [tuple(Fraction(1) for _ in range(space.size))]
    labels = ["{}"]
    for interaction in complex_.sets:
        if not interaction:
            continue
        coords = sorted(interaction)
        for symbols in itertools.product(*(range(space.arities[c]) for c in coords)):
            rows.append(tuple(
                Fraction(int(all(config[c] == s for c, s in zip(coords, symbols))))
                for config in space.configurations
            ))
            labels.append(interaction_label(interaction) + "=" + space.format_config(symbols))
    return SufficientStatistics(space, tuple(rows), tuple(labels), name=f"indicators(arities={list(space.arities)}, order<={complex_.max_order})")


def k_interaction_statistics(space: SampleSpace, k: int) -> SufficientStatistics:
    """E^k: characters on binary spaces, indicators otherwise."""
    complex_ = interaction_complex_k(space.N, k)
    if space.is_binary:
        return character_matrix(space.N, complex_)
    return qary_statistics(space, complex_)


def ngon_statistics(n: int) -> SufficientStatistics:
    if n < 3:
        raise DomainError("an n-gon needs n >= 3")
    space = SampleSpace((n,))
    rows = tuple(tuple(Fraction(t ** power) for t in range(n)) for power in range(3))
    labels = tuple(f"moment-curve t^{power}" for power in range(3))
    return SufficientStatistics(space, rows, labels, name=f"{n}-gon")


def stack_rank(first: SufficientStatistics, second: SufficientStatistics) -> int:
    """Rank of the two row sets stacked (span comparison)."""
    if first.space != second.space:
        raise ShapeError("statistics over different spaces")
    return exact_linalg.rank(list(first.rows) + list(second.rows))


def moment_map(A: SufficientStatistics, p: Distribution) -> MomentVector:
    if p.space != A.space:
        raise ShapeError(f"distribution over {p.space.arities}, statistics over {A.space.arities}")
    return MomentVector(tuple(exact_linalg.dot(row, p.probs) for row in A.rows))
