# tests/test_face_oracle.py

import pytest

from analysis.distribution import Distribution
from analysis.face_oracle import (
    circuits,
    face_dimension,
    is_facial,
    is_sset,
    kernel_basis,
    sset_cardinality_bounds,
    sset_kernel_crosscheck,
    violating_supports,
)
from analysis.model_builder import moment_map
from analysis.sample_space import parity_sets
from utils.errors import CapacityError, DomainError, PreconditionError


def test_cube_edge_is_facial_with_certificate(cube3, cube3_e1):
    edge = cube3.subset_from_strings(["000", "001"])
    verdict = is_facial(cube3_e1, edge)
    assert verdict.is_facial
    assert verdict.witness is None
    assert verdict.certificate.check(cube3_e1)
    values = verdict.certificate.values(cube3_e1)
    assert all(values[x] == 0 for x in edge)
    assert all(v >= 1 for x, v in enumerate(values) if x not in edge)


def test_parity_class_is_not_facial_for_independence(cube3, cube3_e1):
    even = parity_sets(cube3).even
    verdict = is_facial(cube3_e1, even)
    assert not verdict.is_facial
    assert verdict.off_face_mass > 0
    # the witness has the moments of uniform-on-Y but puts mass elsewhere
    target = moment_map(cube3_e1, Distribution.uniform(cube3, even))
    assert moment_map(cube3_e1, verdict.witness) == target
    assert not verdict.witness.support.issubset(even)


def test_sset_verdicts(cube3, cube3_e1):
    assert is_sset(cube3_e1, cube3.subset_from_strings(["110"])).is_sset
    edge = is_sset(cube3_e1, cube3.subset_from_strings(["000", "010"]))
    assert edge.is_sset and edge.rank == 2
    full = is_sset(cube3_e1, cube3.full())
    assert full.facial.is_facial
    assert not full.is_sset
    assert full.rank == 4
    assert full.independent_rows is None


def test_empty_subset_is_excluded(cube3, cube3_e1):
    with pytest.raises(DomainError):
        is_facial(cube3_e1, cube3.subset([]))
    with pytest.raises(DomainError):
        is_sset(cube3_e1, cube3.subset([]))


def test_single_relation_family(cube3, cube3_e2):
    # ker E^2 on {0,1}^3 is spanned by the parity character
    assert len(kernel_basis(cube3_e2)) == 1
    found = circuits(cube3_e2)
    assert len(found) == 1
    pair = parity_sets(cube3)
    assert {found[0].positive_mask, found[0].negative_mask} == {pair.even.mask, pair.odd.mask}

    mixed = cube3.subset_from_strings(["000", "011", "101", "001"])
    assert is_sset(cube3_e2, mixed).is_sset
    assert sset_kernel_crosscheck(cube3_e2, mixed).is_sset

    all_but_one = cube3.full().difference(cube3.subset_from_strings(["000"]))
    assert not is_facial(cube3_e2, all_but_one).is_facial
    crosscheck = sset_kernel_crosscheck(cube3_e2, all_but_one)
    assert not crosscheck.is_sset
    assert crosscheck.violation.positive_mask & ~all_but_one.mask == 0


def test_kernel_crosscheck_agrees_with_lp_on_cube(cube3, cube3_e1):
    for mask in range(1, 1 << cube3.size, 7):
        subset = cube3.subset_from_mask(mask)
        assert sset_kernel_crosscheck(cube3_e1, subset).is_sset == is_sset(cube3_e1, subset).is_sset


def test_violating_supports_are_minimal(cube3_e1):
    supports = violating_supports(cube3_e1)
    assert supports
    for a in supports:
        assert not any(b != a and b & ~a == 0 for b in supports)
    # diagonals of the square faces
    assert min(bin(s).count("1") for s in supports) == 2


def test_guard_raises_capacity_error(cube3_e1):
    with pytest.raises(CapacityError):
        circuits(cube3_e1, guard=4)


def test_face_dimension(cube3, cube3_e1):
    assert face_dimension(cube3_e1, cube3.subset_from_strings(["000", "001"])) == 1
    assert face_dimension(cube3_e1, cube3.full()) == 3
    with pytest.raises(PreconditionError):
        face_dimension(cube3_e1, parity_sets(cube3).even)


def test_sset_cardinality_bounds():
    bounds = sset_cardinality_bounds(4, 2)
    assert bounds.marking.exact == 2
    assert bounds.parity_bound == 6
    assert bounds.interaction_count == 11
    assert bounds.size_bound == 11
    with pytest.raises(DomainError):
        sset_cardinality_bounds(3, 3)
