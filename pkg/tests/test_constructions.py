# tests/test_constructions.py

import pytest

from analysis.model_builder import k_interaction_statistics
from analysis.sample_space import SampleSpace
from covering.constructions import (
    cube_cover_count,
    cylinder_cover,
    product_line_cover,
    recursive_binary_cover,
)
from covering.engine import verify_cover
from covering.set_cover import PARAMETER_COUNT
from utils.errors import DomainError


def _is_partition(result) -> bool:
    union = 0
    for s in result.sets:
        if union & s.mask:
            return False
        union |= s.mask
    return union == result.target.mask


def test_product_lines_on_ternary_cube():
    result = product_line_cover(SampleSpace((3, 3, 3)))
    assert result.kappa == 9
    assert result.lower_bound.value == 9
    assert result.optimal
    assert result.verified is True
    assert _is_partition(result)
    assert result.construction == "lines(axis=1)"


def test_product_lines_use_largest_alphabet():
    result = product_line_cover(SampleSpace((2, 4)), verify=False)
    assert result.kappa == 2
    assert all(len(s) == 4 for s in result.sets)


def test_cylinder_cover():
    result = cylinder_cover(SampleSpace((3, 3, 3)), 1)
    assert result.kappa == 9
    assert result.verified is True
    assert result.lower_bound.value == 4
    assert result.lower_bound.provenance == PARAMETER_COUNT
    assert not result.optimal
    binary = cylinder_cover(SampleSpace.binary(4), 2)
    assert binary.kappa == 4 and binary.verified
    with pytest.raises(DomainError):
        cylinder_cover(SampleSpace.binary(3), 0)


@pytest.mark.parametrize(
    "N, k, expected",
    [(3, 1, 4), (4, 1, 8), (4, 2, 3), (5, 2, 6), (5, 3, 3), (6, 2, 11)],
)
def test_cube_cover_count(N, k, expected):
    assert cube_cover_count(N, k) == expected
    result = recursive_binary_cover(N, k, verify=False)
    assert result.kappa == expected
    assert _is_partition(result)


@pytest.mark.parametrize("N, k", [(3, 1), (4, 1), (4, 2), (5, 2)])
def test_recursive_cover_verifies(N, k):
    result = recursive_binary_cover(N, k)
    assert result.verified is True
    assert result.disjoint


def test_recursive_cover_for_pairs_on_four_bits():
    result = recursive_binary_cover(4, 2)
    assert result.kappa == 3
    assert sorted(len(s) for s in result.sets) == [4, 6, 6]
    assert result.lower_bound.provenance == PARAMETER_COUNT


def test_recursive_cover_domain():
    with pytest.raises(DomainError):
        recursive_binary_cover(3, 3)
    with pytest.raises(DomainError):
        recursive_binary_cover(3, 0)


@pytest.mark.slow
@pytest.mark.parametrize("N, k", [(5, 3), (6, 2)])
def test_larger_recursive_covers_are_sset_covers(N, k):
    result = recursive_binary_cover(N, k, verify=False)
    A = k_interaction_statistics(SampleSpace.binary(N), k)
    assert verify_cover(A, result).passed
    assert recursive_binary_cover(N, k).verified is True
