# tests/test_census_tasks.py

from unittest.mock import patch

import pytest

from analysis.face_lattice import face_lattice
from analysis.model_builder import k_interaction_statistics
from analysis.sample_space import SampleSpace, cylinder_set, parity_sets
import tasks.census_tasks as census_tasks
from tasks.census_tasks import (
    lp_lattice_agreement,
    maximal_ssets_within,
    neighborliness,
    pentagon_batch,
    simplicial_below,
    sset_crosscheck_sweep,
    symmetry_violations,
)
from utils.config import get_settings


def test_crosscheck_sweep_on_cube(cube3_e1):
    report = sset_crosscheck_sweep(cube3_e1)
    assert report.agrees
    assert report.subsets_checked == 255
    assert report.sset_count == 20


def test_crosscheck_sweep_single_relation(cube3_e2):
    report = sset_crosscheck_sweep(cube3_e2)
    assert report.agrees
    assert report.sset_count == 224


def test_parallel_fallback_runs_sequentially(cube3_e1):
    with patch("tasks.census_tasks.Parallel", side_effect=PermissionError("no semaphores")):
        report = sset_crosscheck_sweep(cube3_e1, threads=2)
    assert report.agrees and report.sset_count == 20


def test_lp_and_lattice_agree_on_random_subsets(cube3_e1):
    assert lp_lattice_agreement(cube3_e1, samples=25, seed=3) == []


def test_cube_symmetries_preserve_verdicts(cube3_e1, cube3_e2):
    assert symmetry_violations(cube3_e1) == []
    assert symmetry_violations(cube3_e2, pairs=200, seed=1) == []


def test_neighborliness(cube3_e1, cube4_e2_lattice):
    assert neighborliness(face_lattice(cube3_e1)) == 1
    assert neighborliness(cube4_e2_lattice) == 3


def test_simplicial_below(cube3_e1, pentagon_lattice):
    assert simplicial_below(face_lattice(cube3_e1)) == 2
    assert simplicial_below(pentagon_lattice) == 2


def test_maximal_ssets_inside_a_three_cylinder(cube4_e2_lattice):
    space = cube4_e2_lattice.space
    block = cylinder_set(space, {3: 0})
    maximal = maximal_ssets_within(cube4_e2_lattice, block)
    assert len(maximal) == 16
    parity = parity_sets(space)
    for subset in maximal:
        assert subset.issubset(block)
        assert not block.intersection(parity.even).issubset(subset)
        assert not block.intersection(parity.odd).issubset(subset)


def test_pentagon_batch_with_stubbed_solver():
    with patch.object(census_tasks, "_pentagon_residual", return_value=0.0) as solver:
        batch = pentagon_batch(3, seed=11, tol=1e-8, threads=1)
    assert solver.call_count == 8
    assert batch["targets"] == 8
    assert batch["passed"] is True
    assert batch["seed"] == 11


@pytest.mark.slow
def test_pentagon_batch_converges():
    batch = pentagon_batch(100, seed=0, threads=1)
    assert batch["targets"] == 105
    assert batch["failures"] == []
    assert batch["max_residual"] < get_settings().pentagon_tol


@pytest.mark.slow
@pytest.mark.parametrize("k", [1, 2, 3])
def test_crosscheck_sweep_on_four_bits(k):
    A = k_interaction_statistics(SampleSpace.binary(4), k)
    report = sset_crosscheck_sweep(A)
    assert report.agrees
    assert report.subsets_checked == 2 ** 16 - 1


def test_crosscheck_sweep_on_pentagon(pentagon):
    report = sset_crosscheck_sweep(pentagon)
    assert report.agrees
    # five vertices and five edges
    assert report.sset_count == 10


def test_pair_interactions_simplicial_below_six(cube4_e2_lattice):
    assert simplicial_below(cube4_e2_lattice) >= 6


def test_random_symmetry_pairs_on_four_bits(cube4_e2):
    assert symmetry_violations(cube4_e2, pairs=200, seed=5) == []
