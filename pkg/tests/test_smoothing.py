# tests/test_smoothing.py

from fractions import Fraction

import numpy as np
import pytest

from analysis.distribution import Distribution, random_distribution
from analysis.face_oracle import is_facial
from analysis.model_builder import k_interaction_statistics
from analysis.sample_space import SampleSpace
from covering.constructions import product_line_cover
from mixtures.decomposition import decompose_by_cover
from mixtures.smoothing import positive_smoothing, smooth_mixture
from utils.errors import PreconditionError

SQUARE = SampleSpace.binary(2)


@pytest.fixture(scope="module")
def square_e1():
    return k_interaction_statistics(SQUARE, 1)


@pytest.fixture(scope="module")
def edge_target():
    return Distribution.from_mapping(SQUARE, {"00": "1/3", "01": "2/3"})


@pytest.fixture(scope="module")
def edge_certificate(square_e1, edge_target):
    return is_facial(square_e1, edge_target.support).certificate


def test_total_variation_decreases_along_the_ray(square_e1, edge_target, edge_certificate):
    steps = [positive_smoothing(square_e1, edge_target, edge_certificate, 2 ** i) for i in range(7)]
    tvs = [step.tv for step in steps]
    assert all(b <= a for a, b in zip(tvs, tvs[1:]))
    assert tvs[-1] < 1e-6
    for step in steps:
        assert step.min_probability > 0
        assert step.probs.sum() == pytest.approx(1.0)
        assert step.rowspan_residual == 0
        assert not step.flagged


def test_smoothed_component_keeps_ratio_on_the_set(square_e1, edge_target, edge_certificate):
    step = positive_smoothing(square_e1, edge_target, edge_certificate, Fraction(8))
    assert step.probs[1] / step.probs[0] == pytest.approx(2.0)
    assert step.tv == pytest.approx(step.probs[2] + step.probs[3])


def test_non_positive_t_is_flagged(square_e1, edge_target, edge_certificate):
    assert positive_smoothing(square_e1, edge_target, edge_certificate, 0).flagged


def test_smoothing_preconditions(square_e1, edge_target, edge_certificate):
    point = Distribution.point_mass(SQUARE, 0)
    with pytest.raises(PreconditionError):
        positive_smoothing(square_e1, point, edge_certificate, 1)
    uniform = Distribution.uniform(SQUARE)
    full_certificate = is_facial(square_e1, SQUARE.full()).certificate
    with pytest.raises(PreconditionError):
        positive_smoothing(square_e1, uniform, full_certificate, 1)


def test_smooth_mixture_within_budget():
    space = SampleSpace((3, 3))
    A = k_interaction_statistics(space, 1)
    p = random_distribution(space, np.random.default_rng(3))
    mix = decompose_by_cover(p, product_line_cover(space, verify=False))
    smoothed = smooth_mixture(mix, A, 1e-3)
    assert smoothed.tv_bound <= 1e-3
    assert all(c.min_probability > 0 for c in smoothed.components)
    dense = smoothed.probs
    assert dense.sum() == pytest.approx(1.0)
    assert 0.5 * np.abs(dense - p.as_array()).sum() <= 1e-3 + 1e-12


def test_smooth_mixture_rejects_empty_budget(square_e1):
    p = Distribution.uniform(SQUARE)
    mix = decompose_by_cover(p, product_line_cover(SQUARE, verify=False))
    with pytest.raises(PreconditionError):
        smooth_mixture(mix, square_e1, 0.0)


def _random_sset_components(lattice, count, seed):
    rng = np.random.default_rng(seed)
    masks = lattice.maximal_ssets()
    picks = rng.choice(len(masks), size=count, replace=True)
    for pick in picks:
        support = lattice.subset(masks[int(pick)])
        yield random_distribution(support.space, rng, support=support)


@pytest.mark.parametrize("case", range(20))
def test_pair_interaction_sset_components_smooth(cube4_e2, cube4_e2_lattice, case):
    (f,) = _random_sset_components(cube4_e2_lattice, 1, seed=case)
    certificate = is_facial(cube4_e2, f.support).certificate
    steps = [positive_smoothing(cube4_e2, f, certificate, 2 ** i) for i in range(7)]
    tvs = [step.tv for step in steps]
    assert all(b <= a for a, b in zip(tvs, tvs[1:]))
    assert tvs[-1] < 1e-6
    for step in steps:
        assert step.min_probability > 0
        assert step.rowspan_residual == 0
