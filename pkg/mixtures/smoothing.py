"""
smoothing.py
Purpose: push a distribution supported on an S-set into the open family E
along the ray of a supporting functional, and smooth whole mixtures within a
total-variation budget.
Pseudocode:
1) Y S-set, f > 0 on Y: since rank A_Y = |Y| there is theta with
   <theta, A_y> = log f(y) on Y. The exponents over X are E log f_Y with
   E = B^T B_Y (B_Y^T B_Y)^{-1} (B the row basis), exact rationals.
2) p_t(x) ∝ exp(E_x log f_Y - t <c, A_x>) with c the face certificate
   (0 on Y, >= 1 off Y). p_t lies in E and tends to f as t grows.
3) TV(p_t, f) equals the mass p_t puts off Y (the Y-part is f scaled).
4) smooth_mixture doubles t per component until its TV is below eps / m.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np
from scipy.special import logsumexp

from analysis import exact_linalg
from analysis.distribution import Distribution
from analysis.face_oracle import FaceCertificate, is_facial
from analysis.model_builder import SufficientStatistics
from analysis.sample_space import SampleSubset
from mixtures.decomposition import MixtureDecomposition
from utils.errors import PreconditionError, ShapeError
from utils.serialization import format_fraction

logger = logging.getLogger(__name__)

MAX_DOUBLINGS = 40


@dataclass(frozen=True)
class SmoothedComponent:
    support: SampleSubset
    t: Fraction
    probs: np.ndarray
    tv: float
    rowspan_residual: Fraction
    flagged: bool = False

    @property
    def min_probability(self) -> float:
        return float(self.probs.min())

    def to_json(self) -> dict:
        space = self.support.space
        return {
            "support": self.support,
            "t": format_fraction(self.t),
            "tv": self.tv,
            "min_probability": self.min_probability,
            "rowspan_residual": self.rowspan_residual,
            "flagged_nonpositive_t": self.flagged,
            "probs": {space.label(i): float(v) for i, v in enumerate(self.probs)},
        }


@lru_cache(maxsize=256)
def _exponent_map(A: SufficientStatistics, subset: SampleSubset) -> tuple[tuple[Fraction, ...], ...]:
    """E = B^T B_Y (B_Y^T B_Y)^{-1}, one row per configuration."""
    basis = A.basis_rows
    members = list(subset)
    basis_y = [[row[j] for j in members] for row in basis]
    gram = exact_linalg.matmul(exact_linalg.transpose(basis_y), basis_y)
    product = exact_linalg.matmul(exact_linalg.matmul(exact_linalg.transpose(basis), basis_y), exact_linalg.inverse(gram))
    return tuple(tuple(row) for row in product)


@lru_cache(maxsize=32)
def _kernel(A: SufficientStatistics) -> tuple[tuple[Fraction, ...], ...]:
    return tuple(tuple(v) for v in exact_linalg.nullspace(A.rows))


def _rowspan_residual(A: SufficientStatistics, exponents, slopes: list[Fraction]) -> Fraction:
    """Largest |entry| of K E and K (A^T c) for a kernel basis K; 0 iff log p_t lies in the row span."""
    kernel = _kernel(A)
    if not kernel:
        return Fraction(0)
    worst = Fraction(0)
    for vector in kernel:
        worst = max(worst, abs(exact_linalg.dot(vector, slopes)))
        for column in zip(*exponents):
            worst = max(worst, abs(exact_linalg.dot(vector, column)))
    return worst


def positive_smoothing(
    A: SufficientStatistics,
    f: Distribution,
    certificate: FaceCertificate,
    t: Fraction | int,
) -> SmoothedComponent:
    subset = certificate.zero_set
    if f.space != A.space or subset.space != A.space:
        raise ShapeError("distribution, certificate and statistics must share the sample space")
    if f.support != subset:
        raise PreconditionError("f must be strictly positive exactly on the certified set")
    if A.column_rank(subset) != len(subset):
        raise PreconditionError(f"{subset} is not an S-set: its columns are dependent")
    if not certificate.check(A):
        raise PreconditionError("certificate does not support the set")
    t = Fraction(t)
    flagged = t <= 0
    if flagged:
        logger.warning("smoothing with t=%s does not move mass towards the set", t)

    exponents = _exponent_map(A, subset)
    slopes = certificate.values(A)
    log_f = np.log(np.array([float(f.probs[y]) for y in subset], dtype=float))
    weights = np.array([[float(v) for v in row] for row in exponents], dtype=float)
    exponent = weights @ log_f - float(t) * np.array([float(v) for v in slopes], dtype=float)
    log_p = exponent - logsumexp(exponent)
    probs = np.exp(log_p)

    off = [x for x in range(A.n_columns) if x not in subset]
    tv = float(np.exp(logsumexp(log_p[off]))) if off else 0.0
    residual = _rowspan_residual(A, exponents, slopes)
    return SmoothedComponent(subset, t, probs, tv, residual, flagged)


@dataclass(frozen=True)
class SmoothedMixture:
    weights: tuple[Fraction, ...]
    components: tuple[SmoothedComponent, ...]
    epsilon: float
    tv_bound: float

    @property
    def probs(self) -> np.ndarray:
        return sum(float(w) * c.probs for w, c in zip(self.weights, self.components))

    def to_json(self) -> dict:
        return {
            "epsilon": self.epsilon,
            "tv_bound": self.tv_bound,
            "approximation": "epsilon",
            "weights": [format_fraction(w) for w in self.weights],
            "components": list(self.components),
        }


def smooth_mixture(mix: MixtureDecomposition, A: SufficientStatistics, epsilon: float) -> SmoothedMixture:
    """Strictly positive members of E with the same weights, within TV epsilon of the mixture."""
    if epsilon <= 0:
        raise PreconditionError("the TV budget must be positive")
    budget = epsilon / mix.m
    smoothed = []
    for component in mix.components:
        support = component.support
        verdict = is_facial(A, support)
        if not verdict.is_facial:
            raise PreconditionError(f"component support {support} is not facial")
        t = Fraction(1)
        result = positive_smoothing(A, component, verdict.certificate, t)
        for _ in range(MAX_DOUBLINGS):
            if result.tv <= budget:
                break
            t *= 2
            result = positive_smoothing(A, component, verdict.certificate, t)
        else:
            logger.warning("component on %s stayed at TV %.3g after t=%s", support, result.tv, t)
        smoothed.append(result)
    tv_bound = sum(float(w) * c.tv for w, c in zip(mix.weights, smoothed))
    return SmoothedMixture(mix.weights, tuple(smoothed), epsilon, tv_bound)
