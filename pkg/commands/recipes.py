"""
recipes.py
Purpose: named reproduction runs for `reproduce EXAMPLE`. Each recipe computes
its quantities from scratch, lists the expected values next to the observed
ones and sets "matches".
"""
from __future__ import annotations

import logging

import numpy as np

from analysis.coding_bounds import gv_bound, marking_number, parity_code, singleton_bound
from analysis.distribution import Distribution, random_distribution
from analysis.face_lattice import cyclic_facets_gale, face_lattice, facet_census
from analysis.face_oracle import sset_cardinality_bounds
from analysis.model_builder import k_interaction_statistics, ngon_statistics
from analysis.sample_space import SampleSpace, cylinder_set, parity_sets
from covering.constructions import cube_cover_count, product_line_cover, recursive_binary_cover
from covering.engine import min_facial_packing, min_sset_cover
from mixtures.decomposition import (
    component_lower_bound,
    decompose_by_cover,
    product_mixture_lower_bound,
    reconstruct,
)
from tasks.census_tasks import maximal_ssets_within, pentagon_batch
from utils.config import get_settings

logger = logging.getLogger(__name__)


def _seed(job) -> int:
    seed = job.options.get("seed")
    return get_settings().seed if seed is None else int(seed)


def census(job) -> dict:
    lattice = face_lattice(k_interaction_statistics(SampleSpace.binary(4), 2))
    report = facet_census(lattice)
    expected = {
        "facet_count": 56,
        "simplex_facets": 16,
        "simplex_facet_vertex_counts": {"10": 16},
        "non_simplex_12_vertex_facets": 40,
        "simplex_facets_by_even_count_6": 8,
        "simplex_facets_by_odd_count_6": 8,
    }
    observed = {
        "facet_count": report["facet_count"],
        "simplex_facets": report["simplex_facets"],
        "simplex_facet_vertex_counts": report["simplex_facet_vertex_counts"],
        "non_simplex_12_vertex_facets": report["facet_vertex_counts"].get("12", 0),
        "simplex_facets_by_even_count_6": report["simplex_facets_by_even_count"].get("6", 0),
        "simplex_facets_by_odd_count_6": report["simplex_facets_by_odd_count"].get("6", 0),
    }
    return {"census": report, "expected": expected, "observed": observed, "matches": observed == expected}


def pentagon(job) -> dict:
    A = ngon_statistics(5)
    lattice = face_lattice(A)
    cover = min_sset_cover(A, lattice=lattice)
    worst = max(min_facial_packing(A, lattice.subset(m), lattice=lattice).kappa for m in range(1, 1 << 5))
    batch = pentagon_batch(int(job.options.get("random") or 100), seed=_seed(job))
    matches = cover.kappa == 3 and worst == 2 and batch["passed"]
    return {"kappa_s": cover.kappa, "max_kappa_f": worst, "batch": batch, "matches": matches}


def product_lines(job) -> dict:
    space = SampleSpace((3, 3, 3))
    cover = product_line_cover(space)
    rng = np.random.default_rng(_seed(job))
    trials = int(job.options.get("random") or 50)
    exact, sizes = 0, set()
    for _ in range(trials):
        p = random_distribution(space, rng)
        mix = decompose_by_cover(p, cover)
        exact += reconstruct(mix) == p
        sizes.add(mix.m)
    matches = cover.verified and exact == trials and sizes == {9}
    return {"cover": cover, "exact_reconstructions": exact, "trials": trials,
            "component_counts": sorted(sizes), "matches": matches}


def cube_cover(job) -> dict:
    rows = []
    for N, k in ((3, 1), (4, 1), (4, 2), (5, 2), (5, 3), (6, 2)):
        cover = recursive_binary_cover(N, k)
        union = 0
        for s in cover.sets:
            union |= s.mask
        rows.append({
            "N": N,
            "k": k,
            "sets": cover.kappa,
            "expected": cube_cover_count(N, k),
            "verified": cover.verified,
            "partition": union == (1 << (2 ** N)) - 1 and sum(len(s) for s in cover.sets) == 2 ** N,
        })
    optimum = min_sset_cover(k_interaction_statistics(SampleSpace.binary(4), 2))
    matches = all(r["sets"] == r["expected"] and r["verified"] and r["partition"] for r in rows)
    matches = matches and optimum.kappa == 2 and optimum.optimal
    return {"constructions": rows, "optimum_4_2": optimum, "expected_optimum_4_2": 2, "matches": matches}


def parity_lower_bound(job) -> dict:
    rows = []
    for N in (2, 3, 4):
        space = SampleSpace.binary(N)
        A = k_interaction_statistics(space, 1)
        for side, subset in (("even", parity_sets(space).even), ("odd", parity_sets(space).odd)):
            bound = component_lower_bound(Distribution.uniform(space, subset), A)
            searched = bound.packing.kappa if bound.packing is not None else None
            rows.append({"N": N, "parity": side, "bound": bound.value, "search": searched, "expected": 2 ** (N - 1)})
    matches = all(r["bound"] == r["expected"] == r["search"] for r in rows)
    return {"rows": rows, "matches": matches}


def cyclic(job) -> dict:
    counts = {k: len(cyclic_facets_gale(2 ** (k + 1), 2 ** (k + 1) - 2)) for k in (1, 2, 3)}
    space = SampleSpace.binary(4)
    lattice = face_lattice(k_interaction_statistics(space, 2))
    block = cylinder_set(space, {3: 0})
    maximal = maximal_ssets_within(lattice, block)
    parity = parity_sets(space)
    omits_both = all(
        (block.mask & parity.even.mask) & ~s.mask and (block.mask & parity.odd.mask) & ~s.mask for s in maximal
    )
    matches = counts == {k: 2 ** (2 * k) for k in (1, 2, 3)} and len(maximal) == 16 and omits_both
    return {"gale_facet_counts": {str(k): v for k, v in counts.items()},
            "maximal_ssets_in_3_cylinder": len(maximal), "omit_each_parity": bool(omits_both), "matches": matches}


def coding_bounds(job) -> dict:
    rows = []
    for q in (2, 3, 5):
        for N in range(2, 6):
            code = parity_code(q, N)
            rows.append({"q": q, "N": N, "gv": gv_bound(q, N, 2), "size": code.exact,
                         "singleton": singleton_bound(q, N, 2)})
    brackets = all(r["gv"] <= r["size"] == r["singleton"] for r in rows)
    marking = marking_number(4, 3)
    cardinality = sset_cardinality_bounds(4, 2)
    matches = brackets and marking.exact == 2 and cardinality.parity_bound == 6
    return {"codes": rows, "marking_4_3": marking, "sset_cardinality_4_2": cardinality, "matches": matches}


def product_mixture_bounds(job) -> dict:
    second = product_mixture_lower_bound(4, 2)
    third = product_mixture_lower_bound(4, 3)
    matches = second.parity_packing == 6 and third.parity_packing == 7 and third.parameter_bound == 3
    return {"j2": second, "j3": third, "matches": matches}


RECIPES = {
    "census": census,
    "pentagon": pentagon,
    "product-lines": product_lines,
    "cube-cover": cube_cover,
    "parity-lower-bound": parity_lower_bound,
    "cyclic": cyclic,
    "coding-bounds": coding_bounds,
    "product-mixture-bounds": product_mixture_bounds,
}
