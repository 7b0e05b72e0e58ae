"""
sample_space.py
Purpose: configurations of N finite-valued variables, subsets of them, cylinder
sets, parity sets, Hamming geometry and the XOR action on binary cubes.
Pseudocode:
1) A SampleSpace fixes the arities and a mixed-radix enumeration (variable 1,
   i.e. coordinate 0, most significant).
2) A SampleSubset is a sorted tuple of indices into that enumeration; the
   bitmask view is derived from it.
3) Cylinder / parity / ball constructors build SampleSubsets.
Coordinates are 0-based throughout the API.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Mapping, Sequence

from utils.errors import DomainError, InvalidAssignmentError, UnsupportedSpaceError

_SYMBOLS = "0123456789abcdefghijklmnopqrstuvwxyz"

Configuration = tuple[int, ...]


@dataclass(frozen=True)
class SampleSpace:
    arities: tuple[int, ...]

    def __post_init__(self):
        arities = tuple(int(a) for a in self.arities)
        if not arities:
            raise DomainError("a sample space needs at least one variable")
        if any(a < 2 for a in arities):
            raise DomainError(f"arities must be at least 2, got {arities}")
        object.__setattr__(self, "arities", arities)

    @classmethod
    def binary(cls, n: int) -> "SampleSpace":
        return cls((2,) * n)

    @property
    def N(self) -> int:
        return len(self.arities)

    @cached_property
    def size(self) -> int:
        return math.prod(self.arities)

    @property
    def is_binary(self) -> bool:
        return all(a == 2 for a in self.arities)

    @cached_property
    def _place_values(self) -> tuple[int, ...]:
        values = []
        step = 1
        for arity in reversed(self.arities):
            values.append(step)
            step *= arity
        return tuple(reversed(values))

    def index_of(self, config: Sequence[int]) -> int:
        if len(config) != self.N:
            raise InvalidAssignmentError(f"configuration {config!r} has wrong length for N={self.N}")
        index = 0
        for symbol, arity, place in zip(config, self.arities, self._place_values):
            if not 0 <= symbol < arity:
                raise InvalidAssignmentError(f"symbol {symbol} outside alphabet of size {arity}")
            index += symbol * place
        return index

    def config_of(self, index: int) -> Configuration:
        if not 0 <= index < self.size:
            raise DomainError(f"index {index} outside sample space of size {self.size}")
        return tuple((index // place) % arity for arity, place in zip(self.arities, self._place_values))

    @cached_property
    def configurations(self) -> tuple[Configuration, ...]:
        return tuple(itertools.product(*(range(a) for a in self.arities)))

    @cached_property
    def is_wide(self) -> bool:
        """Some alphabet exceeds the one-character symbols; labels become comma-separated integers."""
        return any(a > len(_SYMBOLS) for a in self.arities)

    def format_config(self, config: Sequence[int]) -> str:
        if self.is_wide:
            return ",".join(str(s) for s in config)
        return "".join(_SYMBOLS[s] for s in config)

    def parse_config(self, text: str) -> Configuration:
        text = text.strip().lower()
        try:
            if self.is_wide:
                config = tuple(int(part) for part in text.split(","))
            else:
                config = tuple(_SYMBOLS.index(ch) for ch in text)
        except ValueError as exc:
            raise InvalidAssignmentError(f"cannot parse configuration {text!r}") from exc
        self.index_of(config)  # validates length and alphabet
        return config

    def label(self, index: int) -> str:
        return self.format_config(self.config_of(index))

    def full(self) -> "SampleSubset":
        return SampleSubset(self, tuple(range(self.size)))

    def subset(self, indices: Iterable[int]) -> "SampleSubset":
        return SampleSubset(self, tuple(indices))

    def subset_from_strings(self, texts: Iterable[str]) -> "SampleSubset":
        return SampleSubset(self, tuple(self.index_of(self.parse_config(t)) for t in texts))

    def subset_from_mask(self, mask: int) -> "SampleSubset":
        return SampleSubset.from_mask(self, mask)

    def to_json(self) -> dict:
        return {"arities": list(self.arities)}


@dataclass(frozen=True)
class SampleSubset:
    space: SampleSpace
    members: tuple[int, ...]

    def __post_init__(self):
        members = tuple(sorted(set(int(i) for i in self.members)))
        if members and (members[0] < 0 or members[-1] >= self.space.size):
            raise DomainError(f"subset indices out of range for |X|={self.space.size}")
        object.__setattr__(self, "members", members)

    @classmethod
    def from_mask(cls, space: SampleSpace, mask: int) -> "SampleSubset":
        members = []
        index = 0
        while mask:
            if mask & 1:
                members.append(index)
            mask >>= 1
            index += 1
        return cls(space, tuple(members))

    @cached_property
    def mask(self) -> int:
        value = 0
        for i in self.members:
            value |= 1 << i
        return value

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self) -> Iterator[int]:
        return iter(self.members)

    def __contains__(self, index: object) -> bool:
        return isinstance(index, int) and (self.mask >> index) & 1 == 1

    def is_empty(self) -> bool:
        return not self.members

    def issubset(self, other: "SampleSubset") -> bool:
        return self.mask & ~other.mask == 0

    def union(self, other: "SampleSubset") -> "SampleSubset":
        return SampleSubset.from_mask(self.space, self.mask | other.mask)

    def intersection(self, other: "SampleSubset") -> "SampleSubset":
        return SampleSubset.from_mask(self.space, self.mask & other.mask)

    def difference(self, other: "SampleSubset") -> "SampleSubset":
        return SampleSubset.from_mask(self.space, self.mask & ~other.mask)

    def complement(self) -> "SampleSubset":
        return SampleSubset.from_mask(self.space, ((1 << self.space.size) - 1) & ~self.mask)

    def configurations(self) -> list[Configuration]:
        return [self.space.config_of(i) for i in self.members]

    def to_strings(self) -> list[str]:
        return [self.space.label(i) for i in self.members]

    def to_json(self) -> list[str]:
        return self.to_strings()

    def __repr__(self) -> str:
        return f"SampleSubset({{{', '.join(self.to_strings())}}})"


@dataclass(frozen=True)
class ParityPair:
    even: SampleSubset
    odd: SampleSubset

    def to_json(self) -> dict:
        return {"even": self.even, "odd": self.odd}


def _require_binary(space: SampleSpace) -> None:
    if not space.is_binary:
        raise UnsupportedSpaceError(f"binary space required, got arities {space.arities}")


def cylinder_set(space: SampleSpace, fixed: Mapping[int, int]) -> SampleSubset:
    """All configurations agreeing with `fixed` (coordinate -> symbol)."""
    for coord, symbol in fixed.items():
        if not 0 <= coord < space.N:
            raise InvalidAssignmentError(f"coordinate {coord} outside [0, {space.N})")
        if not 0 <= symbol < space.arities[coord]:
            raise InvalidAssignmentError(
                f"symbol {symbol} outside alphabet of coordinate {coord} (size {space.arities[coord]})"
            )
    members = [
        i for i, config in enumerate(space.configurations)
        if all(config[c] == s for c, s in fixed.items())
    ]
    return SampleSubset(space, tuple(members))


def cylinder_sets(space: SampleSpace, free: Sequence[int]) -> list[SampleSubset]:
    """
    All cylinder sets whose free coordinates are exactly `free`, ordered by the
    assignment of the fixed coordinates.
    """
    free_set = set(free)
    fixed_coords = [c for c in range(space.N) if c not in free_set]
    blocks = []
    for values in itertools.product(*(range(space.arities[c]) for c in fixed_coords)):
        blocks.append(cylinder_set(space, dict(zip(fixed_coords, values))))
    return blocks


def cylinder_sets_of_dimension(space: SampleSpace, dim: int) -> list[SampleSubset]:
    """Every cylinder set with exactly `dim` free coordinates."""
    if not 0 <= dim <= space.N:
        raise DomainError(f"cylinder dimension {dim} outside [0, {space.N}]")
    result = []
    for free in itertools.combinations(range(space.N), dim):
        result.extend(cylinder_sets(space, free))
    return result


def parity_sets(space: SampleSpace) -> ParityPair:
    _require_binary(space)
    even = [i for i, config in enumerate(space.configurations) if sum(config) % 2 == 0]
    odd = [i for i, config in enumerate(space.configurations) if sum(config) % 2 == 1]
    return ParityPair(SampleSubset(space, tuple(even)), SampleSubset(space, tuple(odd)))


def xor_translate(x: Sequence[int], subset: SampleSubset) -> SampleSubset:
    """x * Y = {x + y mod 2 : y in Y}."""
    space = subset.space
    _require_binary(space)
    space.index_of(x)
    moved = [space.index_of(tuple(a ^ b for a, b in zip(x, config))) for config in subset.configurations()]
    return SampleSubset(space, tuple(moved))


def permute_coordinates(subset: SampleSubset, perm: Sequence[int]) -> SampleSubset:
    """Move coordinate i to position perm[i] in every member."""
    space = subset.space
    if sorted(perm) != list(range(space.N)):
        raise DomainError(f"{perm!r} is not a permutation of {space.N} coordinates")
    if any(space.arities[i] != space.arities[p] for i, p in enumerate(perm)):
        raise UnsupportedSpaceError("permutation must map coordinates onto equal alphabets")
    moved = []
    for config in subset.configurations():
        image = [0] * space.N
        for i, p in enumerate(perm):
            image[p] = config[i]
        moved.append(space.index_of(tuple(image)))
    return SampleSubset(space, tuple(moved))


def hamming_distance(x: Sequence[int], y: Sequence[int]) -> int:
    return sum(1 for a, b in zip(x, y) if a != b)


def hamming_ball_size(N: int, R: int) -> int:
    if N < 0 or not 0 <= R <= N:
        raise DomainError(f"radius {R} outside [0, {N}]")
    return sum(math.comb(N, i) for i in range(R + 1))


def hamming_ball(space: SampleSpace, center: Sequence[int], R: int) -> SampleSubset:
    if not 0 <= R <= space.N:
        raise DomainError(f"radius {R} outside [0, {space.N}]")
    space.index_of(center)
    members = [i for i, config in enumerate(space.configurations) if hamming_distance(center, config) <= R]
    return SampleSubset(space, tuple(members))
