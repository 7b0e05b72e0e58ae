# tests/test_coding_bounds.py

import pytest

from analysis.coding_bounds import (
    covering_radius,
    gv_bound,
    marking_number,
    minimum_distance,
    parity_code,
    singleton_bound,
)
from analysis.sample_space import SampleSpace
from utils.errors import DomainError


@pytest.mark.parametrize(
    "q, N, d, gv, singleton",
    [
        (2, 4, 2, 4, 8),
        (3, 3, 2, 4, 9),
        (2, 5, 3, 2, 8),
    ],
)
def test_gv_and_singleton(q, N, d, gv, singleton):
    assert gv_bound(q, N, d) == gv
    assert singleton_bound(q, N, d) == singleton


def test_code_parameters_validated():
    with pytest.raises(DomainError):
        gv_bound(1, 3, 2)
    with pytest.raises(DomainError):
        singleton_bound(2, 3, 4)


@pytest.mark.parametrize("q, N", [(2, 4), (3, 3), (5, 2)])
def test_parity_code_meets_singleton_for_prime_alphabets(q, N):
    report = parity_code(q, N)
    assert report.exact == q ** (N - 1) == report.upper
    assert report.lower <= report.exact
    space = SampleSpace((q,) * N)
    assert minimum_distance([space.parse_config(w) for w in report.witness]) == 2


def test_parity_code_without_witness_for_composite_alphabet():
    report = parity_code(4, 3)
    assert report.exact is None
    assert report.witness is None
    assert report.note


def test_minimum_distance_edge_cases():
    assert minimum_distance([(0, 0)]) is None
    assert minimum_distance([(0, 0), (1, 1), (1, 0)]) == 1


@pytest.mark.parametrize(
    "N, R, expected",
    [
        (3, 3, 1),
        (3, 1, 2),
        (4, 3, 2),
        (4, 1, 4),
        (5, 2, 2),
    ],
)
def test_marking_numbers(N, R, expected):
    report = marking_number(N, R)
    assert report.exact == expected
    space = SampleSpace.binary(N)
    assert covering_radius(space, [space.parse_config(w) for w in report.witness]) <= R


def test_marking_number_above_exact_cap_reports_bounds():
    report = marking_number(6, 1, exact_max_n=4)
    assert report.exact is None
    assert report.lower == 10
    assert report.upper >= 12
    assert "capped" in report.note
    with pytest.raises(DomainError):
        marking_number(3, 0)
