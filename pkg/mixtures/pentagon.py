"""
pentagon.py
Purpose: two-component mixtures of the pentagon family (moment curve on five
points) for a given target distribution.
Pseudocode:
1) Support not full: the support is covered by at most two S-sets (edges and
   vertices of the pentagon), so the exact decomposition applies.
2) Full support: least squares over (logit alpha, theta_1, theta_2) with
   p_theta(t) ∝ exp(theta . (t - 2, (t - 2)^2)); starts on a 5 x 5 x 5 grid of
   alpha values and component parameters pointing at the five edges.
3) Report the first start whose max-norm residual is below tol, otherwise the
   best start (ties broken by start index).
"""
from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass

import numpy as np
from scipy.optimize import least_squares
from scipy.special import expit, logit, softmax

from analysis.distribution import Distribution
from analysis.model_builder import ngon_statistics
from covering.engine import min_sset_cover
from mixtures.decomposition import MixtureDecomposition, decompose_by_cover
from utils.config import get_settings
from utils.errors import ShapeError

logger = logging.getLogger(__name__)

_POINTS = np.arange(5, dtype=float) - 2.0
_FEATURES = np.stack([_POINTS, _POINTS ** 2], axis=1)
_ALPHAS = (0.1, 0.3, 0.5, 0.7, 0.9)
_RADIUS = 2.0
# outward normals of the edges {t, t+1} and of the closing edge {4, 0}
_EDGE_NORMALS = tuple((2.0 * i - 3.0, -1.0) for i in range(4)) + ((0.0, 1.0),)


@dataclass(frozen=True)
class PentagonSolution:
    success: bool
    alpha: float
    components: tuple[np.ndarray, np.ndarray]
    residual: float
    start: int | None
    thetas: tuple[np.ndarray, np.ndarray] | None = None
    exact: MixtureDecomposition | None = None

    def to_json(self) -> dict:
        payload = {
            "success": self.success,
            "alpha": self.alpha,
            "residual": self.residual,
            "components": [component.tolist() for component in self.components],
        }
        if self.start is not None:
            payload["start"] = self.start
        if self.thetas is not None:
            payload["thetas"] = [theta.tolist() for theta in self.thetas]
        if self.exact is not None:
            payload["exact"] = self.exact
        if not self.success:
            payload["note"] = "no start reached the tolerance; this is not a disproof"
        return payload


def pentagon_density(theta: np.ndarray) -> np.ndarray:
    return softmax(_FEATURES @ theta)


def _unpack(params: np.ndarray) -> tuple[float, np.ndarray, np.ndarray]:
    return expit(params[0]), params[1:3], params[3:5]


def _mixture(params: np.ndarray) -> np.ndarray:
    alpha, first, second = _unpack(params)
    return alpha * pentagon_density(first) + (1.0 - alpha) * pentagon_density(second)


def starting_points() -> list[np.ndarray]:
    starts = []
    for alpha, first, second in itertools.product(_ALPHAS, _EDGE_NORMALS, _EDGE_NORMALS):
        starts.append(np.array([logit(alpha), *(_RADIUS * np.array(first)), *(_RADIUS * np.array(second))]))
    return starts


def _exact_solution(p: Distribution) -> PentagonSolution:
    A = ngon_statistics(5)
    cover = min_sset_cover(A, p.support)
    mix = decompose_by_cover(p, cover, family=A.name)
    dense = [np.array([float(v) for v in component.probs]) for component in mix.components]
    alpha = float(mix.weights[0])
    first = dense[0]
    second = dense[1] if len(dense) > 1 else dense[0]
    return PentagonSolution(True, alpha, (first, second), 0.0, None, exact=mix)


def pentagon_two_mixture_solve(p: Distribution, tol: float | None = None) -> PentagonSolution:
    if p.space.arities != (5,):
        raise ShapeError(f"the pentagon family lives on five points, got arities {p.space.arities}")
    tol = get_settings().pentagon_tol if tol is None else tol
    if len(p.support) < 5:
        return _exact_solution(p)

    target = p.as_array()
    best: PentagonSolution | None = None
    for index, start in enumerate(starting_points()):
        fit = least_squares(
            lambda params: _mixture(params) - target,
            start,
            method="lm",
            xtol=1e-15,
            ftol=1e-15,
            gtol=1e-15,
            max_nfev=2000,
        )
        residual = float(np.max(np.abs(_mixture(fit.x) - target)))
        if best is None or residual < best.residual:
            alpha, first, second = _unpack(fit.x)
            best = PentagonSolution(
                success=residual < tol,
                alpha=float(alpha),
                components=(pentagon_density(first), pentagon_density(second)),
                residual=residual,
                start=index,
                thetas=(first.copy(), second.copy()),
            )
        if best.success:
            break
        logger.debug("pentagon start %d ended at residual %.3g", index, residual)
    if not best.success:
        logger.warning("pentagon solve did not converge: best residual %.3g (start %d)", best.residual, best.start)
    return best
