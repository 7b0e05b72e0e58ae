"""
distribution.py
Purpose: exact rational probability vectors over a SampleSpace.
Pseudocode:
1) Store one Fraction per configuration; validate >= 0 and exact sum 1.
2) Constructors for uniform, point masses, seeded random rationals and JSON files.
3) Support / restriction helpers used by the mixture engine.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from pathlib import Path
from typing import Mapping, Sequence

import numpy as np

from analysis.sample_space import SampleSpace, SampleSubset
from utils.errors import DomainError, MalformedJobError, ShapeError
from utils.serialization import format_fraction, parse_fraction


@dataclass(frozen=True)
class Distribution:
    space: SampleSpace
    probs: tuple[Fraction, ...]

    def __post_init__(self):
        probs = tuple(Fraction(p) for p in self.probs)
        if len(probs) != self.space.size:
            raise ShapeError(f"expected {self.space.size} probabilities, got {len(probs)}")
        if any(p < 0 for p in probs):
            raise DomainError("probabilities must be nonnegative")
        if sum(probs) != 1:
            raise DomainError(f"probabilities sum to {sum(probs)}, not 1")
        object.__setattr__(self, "probs", probs)

    @classmethod
    def uniform(cls, space: SampleSpace, subset: SampleSubset | None = None) -> "Distribution":
        members = subset.members if subset is not None else range(space.size)
        if not members:
            raise DomainError("uniform distribution on the empty set")
        weight = Fraction(1, len(members))
        probs = [Fraction(0)] * space.size
        for i in members:
            probs[i] = weight
        return cls(space, tuple(probs))

    @classmethod
    def point_mass(cls, space: SampleSpace, index: int) -> "Distribution":
        return cls.uniform(space, SampleSubset(space, (index,)))

    @classmethod
    def from_weights(cls, space: SampleSpace, weights: Sequence[int | Fraction]) -> "Distribution":
        """Normalize nonnegative (not all zero) weights."""
        weights = [Fraction(w) for w in weights]
        total = sum(weights)
        if total <= 0:
            raise DomainError("weights must have positive total")
        return cls(space, tuple(w / total for w in weights))

    @classmethod
    def from_mapping(cls, space: SampleSpace, probs: Mapping[str, str | int | Fraction]) -> "Distribution":
        values = [Fraction(0)] * space.size
        for label, value in probs.items():
            values[space.index_of(space.parse_config(label))] = parse_fraction(value)
        return cls(space, tuple(values))

    @cached_property
    def support(self) -> SampleSubset:
        return SampleSubset(self.space, tuple(i for i, p in enumerate(self.probs) if p > 0))

    def restricted(self, subset: SampleSubset) -> "Distribution":
        """p restricted to `subset` and renormalized."""
        mass = sum(self.probs[i] for i in subset)
        if mass == 0:
            raise DomainError("no probability mass on the requested subset")
        return Distribution(
            self.space,
            tuple(self.probs[i] / mass if i in subset else Fraction(0) for i in range(self.space.size)),
        )

    def mass(self, subset: SampleSubset) -> Fraction:
        return sum((self.probs[i] for i in subset), Fraction(0))

    def as_array(self) -> np.ndarray:
        return np.array([float(p) for p in self.probs], dtype=float)

    def to_json(self) -> dict:
        return {
            "arities": list(self.space.arities),
            "probs": {self.space.label(i): format_fraction(p) for i, p in enumerate(self.probs) if p != 0},
        }

    @classmethod
    def from_json(cls, payload: Mapping) -> "Distribution":
        try:
            space = SampleSpace(tuple(payload["arities"]))
            return cls.from_mapping(space, payload["probs"])
        except (KeyError, TypeError) as exc:
            raise MalformedJobError(f"distribution JSON needs 'arities' and 'probs': {exc}") from exc

    @classmethod
    def load(cls, path: str | Path) -> "Distribution":
        try:
            payload = json.loads(Path(path).read_text(encoding="utf-8"))
        except (OSError, json.JSONDecodeError) as exc:
            raise MalformedJobError(f"cannot read distribution file {path}: {exc}") from exc
        return cls.from_json(payload)


def random_distribution(
    space: SampleSpace,
    rng: np.random.Generator,
    support: SampleSubset | None = None,
    max_weight: int = 20,
) -> Distribution:
    """Random rational distribution with integer weights in [1, max_weight] on `support`."""
    members = list(support.members) if support is not None else list(range(space.size))
    draws = rng.integers(1, max_weight + 1, size=len(members))
    weights = [0] * space.size
    for i, w in zip(members, draws):
        weights[i] = int(w)
    return Distribution.from_weights(space, weights)


def total_variation(p: Sequence[float], q: Sequence[float]) -> float:
    return 0.5 * float(np.abs(np.asarray(p, dtype=float) - np.asarray(q, dtype=float)).sum())
