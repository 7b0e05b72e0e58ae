"""
jobs.py
Purpose: the job layer behind every CLI command. A JobSpec names a command,
a family of sufficient statistics, an optional target subset or distribution
and free-form options; run(job) dispatches it and renders the JSON report.
Pseudocode:
1) FamilySpec -> SufficientStatistics (k-interaction, product, n-gon, or a
   custom hierarchical complex).
2) Distribution specs: a JSON file path, an inline mapping, "uniform",
   "parity:even|odd", "point:<config>" or "random:<seed>".
3) The registry maps command names to handlers returning (payload, status);
   status 2 marks a verification failure.
"""
from __future__ import annotations

import json
import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Mapping

import numpy as np

from analysis.coding_bounds import gv_bound, marking_number, parity_code, singleton_bound
from analysis.distribution import Distribution, random_distribution
from analysis.face_lattice import (
    cyclic_facets_gale,
    enumerate_facial_sets,
    face_lattice,
    facet_census,
    facet_table,
)
from analysis.face_oracle import circuits, is_facial, is_sset, sset_cardinality_bounds, sset_kernel_crosscheck
from analysis.model_builder import (
    InteractionComplex,
    SufficientStatistics,
    character_matrix,
    k_interaction_statistics,
    ngon_statistics,
    qary_statistics,
)
from analysis.sample_space import SampleSpace, SampleSubset, parity_sets
from covering.constructions import cylinder_cover, product_line_cover, recursive_binary_cover
from covering.engine import CoverResult, kappa_cross, min_facial_packing, min_sset_cover, verify_cover
from commands.recipes import RECIPES
from mixtures.decomposition import (
    component_lower_bound,
    decompose_by_cover,
    reconstruction_check,
    sufficient_components,
)
from mixtures.pentagon import pentagon_two_mixture_solve
from mixtures.smoothing import positive_smoothing, smooth_mixture
from tasks.census_tasks import pentagon_batch, sset_crosscheck_sweep
from utils.config import get_settings
from utils.errors import CapacityError, MalformedJobError, PreconditionError
from utils.serialization import dump_report, parse_fraction

logger = logging.getLogger(__name__)

OK = 0
VERIFICATION_FAILED = 2

FAMILY_KINDS = ("kinteraction", "product", "ngon", "interactions")


# ────────────────────────────────────────────────────────────────
# Specs
# ────────────────────────────────────────────────────────────────
@dataclass(frozen=True)
class FamilySpec:
    kind: str
    arities: tuple[int, ...] = ()
    k: int | None = None
    n: int | None = None
    interactions: tuple[tuple[int, ...], ...] = ()

    def __post_init__(self):
        if self.kind not in FAMILY_KINDS:
            raise MalformedJobError(f"unknown family kind {self.kind!r}; expected one of {FAMILY_KINDS}")
        if self.kind == "ngon" and not self.n:
            raise MalformedJobError("the ngon family needs n")
        if self.kind != "ngon" and not self.arities:
            raise MalformedJobError(f"the {self.kind} family needs arities")
        if self.kind == "kinteraction" and self.k is None:
            raise MalformedJobError("the kinteraction family needs k")
        if self.kind == "interactions" and not self.interactions:
            raise MalformedJobError("the interactions family needs at least one interaction")

    @property
    def space(self) -> SampleSpace:
        if self.kind == "ngon":
            return SampleSpace((self.n,))
        return SampleSpace(self.arities)

    def to_json(self) -> dict:
        payload: dict = {"kind": self.kind}
        if self.arities:
            payload["arities"] = list(self.arities)
        if self.k is not None:
            payload["k"] = self.k
        if self.n is not None:
            payload["n"] = self.n
        if self.interactions:
            payload["interactions"] = [list(i) for i in self.interactions]
        return payload

    @classmethod
    def from_json(cls, payload: Mapping) -> "FamilySpec":
        try:
            return cls(
                kind=payload["kind"],
                arities=tuple(int(a) for a in payload.get("arities", ())),
                k=int(payload["k"]) if payload.get("k") is not None else None,
                n=int(payload["n"]) if payload.get("n") is not None else None,
                interactions=tuple(tuple(int(i) for i in g) for g in payload.get("interactions", ())),
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise MalformedJobError(f"malformed family spec: {exc}") from exc


def build_statistics(family: FamilySpec) -> SufficientStatistics:
    if family.kind == "ngon":
        return ngon_statistics(family.n)
    space = family.space
    if family.kind == "product":
        return k_interaction_statistics(space, 1)
    if family.kind == "kinteraction":
        return k_interaction_statistics(space, family.k)
    # interactions are 1-based on the command line
    complex_ = InteractionComplex.from_generators(space.N, [[i - 1 for i in g] for g in family.interactions])
    if space.is_binary:
        return character_matrix(space.N, complex_)
    return qary_statistics(space, complex_)


@dataclass(frozen=True)
class JobSpec:
    command: str
    family: FamilySpec | None = None
    target: tuple[str, ...] | None = None
    distribution: str | Mapping | None = None
    options: Mapping = field(default_factory=dict)

    def to_json(self) -> dict:
        payload: dict = {"command": self.command}
        if self.family is not None:
            payload["family"] = self.family.to_json()
        if self.target is not None:
            payload["target"] = list(self.target)
        if self.distribution is not None:
            payload["distribution"] = self.distribution
        payload["options"] = {k: self.options[k] for k in sorted(self.options) if self.options[k] is not None}
        return payload

    @classmethod
    def from_json(cls, payload: Mapping) -> "JobSpec":
        if not isinstance(payload, Mapping) or "command" not in payload:
            raise MalformedJobError("a job needs a 'command'")
        family = payload.get("family")
        target = payload.get("target")
        return cls(
            command=str(payload["command"]),
            family=FamilySpec.from_json(family) if family is not None else None,
            target=tuple(target) if target is not None else None,
            distribution=payload.get("distribution"),
            options=dict(payload.get("options", {})),
        )

    @classmethod
    def load(cls, path: str | Path) -> "JobSpec":
        try:
            payload = json.loads(Path(path).read_text(encoding="utf-8"))
        except (OSError, json.JSONDecodeError) as exc:
            raise MalformedJobError(f"cannot read job file {path}: {exc}") from exc
        return cls.from_json(payload)

    def option(self, name: str, default=None):
        value = self.options.get(name)
        return default if value is None else value


@dataclass(frozen=True)
class JobOutcome:
    status: int
    report: str


# ────────────────────────────────────────────────────────────────
# Resolution helpers
# ────────────────────────────────────────────────────────────────
def _require_family(job: JobSpec) -> FamilySpec:
    if job.family is None:
        raise MalformedJobError(f"command {job.command!r} needs a family (--binary, --arity or --ngon)")
    return job.family


def _interaction_order(job: JobSpec, family: FamilySpec) -> int:
    """Explicit k option, else the family's k, else 1."""
    k = job.option("k", family.k)
    return 1 if k is None else int(k)


def _statistics(job: JobSpec) -> SufficientStatistics:
    return build_statistics(_require_family(job))


def _target(job: JobSpec, space: SampleSpace, required: bool = True) -> SampleSubset | None:
    if not job.target:
        if required:
            raise MalformedJobError(f"command {job.command!r} needs a target subset")
        return None
    return space.subset_from_strings(job.target)


def resolve_distribution(spec: str | Mapping | None, space: SampleSpace) -> Distribution:
    if spec is None:
        raise MalformedJobError("a distribution is required (--dist)")
    if isinstance(spec, Mapping):
        p = Distribution.from_json(spec) if "arities" in spec else Distribution.from_mapping(space, spec.get("probs", spec))
    elif spec == "uniform":
        p = Distribution.uniform(space)
    elif spec.startswith("parity:"):
        pair = parity_sets(space)
        side = spec.split(":", 1)[1]
        if side not in ("even", "odd"):
            raise MalformedJobError(f"parity distribution must be even or odd, got {side!r}")
        p = Distribution.uniform(space, pair.even if side == "even" else pair.odd)
    elif spec.startswith("point:"):
        p = Distribution.point_mass(space, space.index_of(space.parse_config(spec.split(":", 1)[1])))
    elif spec.startswith("random:"):
        try:
            seed = int(spec.split(":", 1)[1])
        except ValueError as exc:
            raise MalformedJobError(f"bad random seed in {spec!r}") from exc
        p = random_distribution(space, np.random.default_rng(seed))
    else:
        p = Distribution.load(spec)
    if p.space != space:
        raise MalformedJobError(f"distribution lives on arities {p.space.arities}, family on {space.arities}")
    return p


def _lattice(job: JobSpec, A: SufficientStatistics):
    return face_lattice(A, job.option("guard"), job.option("threads"))


def _status(passed: bool) -> int:
    return OK if passed else VERIFICATION_FAILED


# ────────────────────────────────────────────────────────────────
# Handlers
# ────────────────────────────────────────────────────────────────
Handler = Callable[[JobSpec], tuple[dict, int]]
REGISTRY: dict[str, Handler] = {}


def handler(name: str):
    def register(func: Handler) -> Handler:
        REGISTRY[name] = func
        return func
    return register


@handler("stats-build")
def _stats_build(job: JobSpec):
    A = _statistics(job)
    payload = {"statistics": A}
    csv_path = job.option("csv")
    if csv_path:
        A.export_csv(csv_path)
        payload["csv"] = str(csv_path)
    return payload, OK


@handler("facial-check")
def _facial_check(job: JobSpec):
    A = _statistics(job)
    return {"verdict": is_facial(A, _target(job, A.space))}, OK


@handler("sset-check")
def _sset_check(job: JobSpec):
    A = _statistics(job)
    subset = _target(job, A.space)
    payload = {"verdict": is_sset(A, subset)}
    try:
        payload["kernel_crosscheck"] = sset_kernel_crosscheck(A, subset, job.option("guard"))
    except CapacityError as exc:
        logger.warning("kernel crosscheck skipped: %s", exc)
    return payload, OK


@handler("crosscheck")
def _crosscheck(job: JobSpec):
    A = _statistics(job)
    subset = _target(job, A.space, required=False)
    if subset is not None:
        verdict = sset_kernel_crosscheck(A, subset, job.option("guard"))
        lp = is_sset(A, subset)
        return {"verdict": verdict, "lp_verdict": lp.is_sset, "agrees": verdict.is_sset == lp.is_sset}, _status(
            verdict.is_sset == lp.is_sset
        )
    sweep = sset_crosscheck_sweep(A, threads=job.option("threads"), guard=job.option("guard"))
    return {"circuits": len(circuits(A, job.option("guard"))), "sweep": sweep}, _status(sweep.agrees)


@handler("enumerate-faces")
def _enumerate_faces(job: JobSpec):
    A = _statistics(job)
    lattice = enumerate_facial_sets(A, guard=job.option("guard"), threads=job.option("threads"))
    payload = {"census": facet_census(lattice)}
    if job.option("list_facets"):
        payload["facets"] = facet_table(lattice)
    return payload, OK


@handler("gale")
def _gale(job: JobSpec):
    v, d = int(job.option("v")), int(job.option("d"))
    facets = cyclic_facets_gale(v, d)
    return {"v": v, "d": d, "facet_count": len(facets), "facets": [list(f) for f in facets]}, OK


def _cover_payload(A: SufficientStatistics, result: CoverResult) -> tuple[dict, int]:
    report = verify_cover(A, result)
    return {"cover": result, "verification": report}, _status(report.passed)


@handler("cover min")
def _cover_min(job: JobSpec):
    A = _statistics(job)
    result = min_sset_cover(A, _target(job, A.space, required=False), lattice=_lattice(job, A),
                            node_budget=job.option("node_budget"))
    return _cover_payload(A, result)


@handler("cover packing")
def _cover_packing(job: JobSpec):
    A = _statistics(job)
    result = min_facial_packing(A, _target(job, A.space), lattice=_lattice(job, A),
                                node_budget=job.option("node_budget"))
    return _cover_payload(A, result)


@handler("cover cylinder")
def _cover_cylinder(job: JobSpec):
    family = _require_family(job)
    k = _interaction_order(job, family)
    result = cylinder_cover(family.space, k, verify=False)
    return _cover_payload(build_statistics(FamilySpec("kinteraction", family.space.arities, k=k)), result)


@handler("cover lines")
def _cover_lines(job: JobSpec):
    family = _require_family(job)
    result = product_line_cover(family.space, verify=False)
    return _cover_payload(build_statistics(FamilySpec("product", family.space.arities)), result)


@handler("cover recursive")
def _cover_recursive(job: JobSpec):
    family = _require_family(job)
    space = family.space
    k = _interaction_order(job, family)
    result = recursive_binary_cover(space.N, k, verify=False)
    return _cover_payload(k_interaction_statistics(space, k), result)


@handler("kappa-cross")
def _kappa_cross(job: JobSpec):
    A = _statistics(job)
    other = job.option("other")
    if other is None:
        raise MalformedJobError("kappa-cross needs a second family (--other-k)")
    A_prime = build_statistics(FamilySpec.from_json(other))
    result = kappa_cross(A, A_prime, guard=job.option("guard"), node_budget=job.option("node_budget"))
    return {"first": A.name, "second": A_prime.name, "result": result}, OK


@handler("verify")
def _verify(job: JobSpec):
    A = _statistics(job)
    path = job.option("cover")
    if not path:
        raise MalformedJobError("verify needs --cover FILE")
    try:
        payload = json.loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise MalformedJobError(f"cannot read cover file {path}: {exc}") from exc
    result = CoverResult.from_json(payload.get("cover", payload), A.space)
    report = verify_cover(A, result)
    return {"verification": report}, _status(report.passed)


def _cover_for_mixture(job: JobSpec, A: SufficientStatistics, family: FamilySpec, support: SampleSubset) -> CoverResult:
    strategy = job.option("cover", "auto")
    space = A.space
    if strategy == "auto":
        if family.kind == "product":
            strategy = "lines"
        elif family.kind == "kinteraction" and space.is_binary and 0 < family.k < space.N:
            strategy = "recursive"
        elif family.kind == "kinteraction":
            strategy = "cylinder"
        else:
            strategy = "min"
    if strategy == "lines":
        return product_line_cover(space, verify=False)
    if strategy == "cylinder":
        return cylinder_cover(space, family.k or 1, verify=False)
    if strategy == "recursive":
        return recursive_binary_cover(space.N, family.k or 1, verify=False)
    if strategy == "min":
        return min_sset_cover(A, support, lattice=_lattice(job, A), node_budget=job.option("node_budget"))
    raise MalformedJobError(f"unknown cover strategy {strategy!r}")


@handler("decompose")
def _decompose(job: JobSpec):
    family = _require_family(job)
    A = build_statistics(family)
    p = resolve_distribution(job.distribution, A.space)
    cover = _cover_for_mixture(job, A, family, p.support)
    verification = verify_cover(A, cover)
    mix = decompose_by_cover(p, cover, family=A.name)
    check = reconstruction_check(p, mix, A)
    payload = {"mixture": mix, "reconstruction_check": check, "cover_verification": verification}
    epsilon = job.option("epsilon")
    if epsilon is not None:
        smoothed = smooth_mixture(mix, A, float(epsilon))
        payload["smoothed"] = smoothed
    return payload, _status(check == "exact" and verification.passed)


@handler("lower-bound")
def _lower_bound(job: JobSpec):
    A = _statistics(job)
    p = resolve_distribution(job.distribution, A.space)
    return {"lower_bound": component_lower_bound(p, A)}, OK


@handler("sufficient")
def _sufficient(job: JobSpec):
    family = _require_family(job)
    k = _interaction_order(job, family)
    p = resolve_distribution(job.distribution, family.space)
    return {"sufficient": sufficient_components(p, k, job.option("node_budget"))}, OK


@handler("smooth")
def _smooth(job: JobSpec):
    A = _statistics(job)
    f = resolve_distribution(job.distribution, A.space)
    verdict = is_sset(A, f.support)
    if not verdict.is_sset:
        raise PreconditionError(f"the support {f.support} is not an S-set")
    ladder = [parse_fraction(t) for t in job.option("t", ["1", "2", "4", "8", "16", "32", "64"])]
    steps = [positive_smoothing(A, f, verdict.facial.certificate, t) for t in ladder]
    monotone = all(b.tv <= a.tv for a, b in zip(steps, steps[1:]))
    return {"support": f.support, "steps": steps, "tv_nonincreasing": monotone}, OK


@handler("pentagon-solve")
def _pentagon_solve(job: JobSpec):
    tol = job.option("tol")
    if job.distribution is None:
        batch = pentagon_batch(int(job.option("random", 100)), seed=job.option("seed"), tol=tol,
                               threads=job.option("threads"))
        return {"batch": batch}, _status(batch["passed"])
    p = resolve_distribution(job.distribution, SampleSpace((5,)))
    solution = pentagon_two_mixture_solve(p, tol)
    return {"solution": solution}, _status(solution.success)


@handler("bounds gv")
def _bounds_gv(job: JobSpec):
    q, N, d = int(job.option("q")), int(job.option("N")), int(job.option("d"))
    return {"q": q, "N": N, "d": d, "gv_bound": gv_bound(q, N, d)}, OK


@handler("bounds singleton")
def _bounds_singleton(job: JobSpec):
    q, N, d = int(job.option("q")), int(job.option("N")), int(job.option("d"))
    return {"q": q, "N": N, "d": d, "singleton_bound": singleton_bound(q, N, d)}, OK


@handler("bounds parity")
def _bounds_parity(job: JobSpec):
    report = parity_code(int(job.option("q")), int(job.option("N")))
    return {"code": report}, OK


@handler("bounds marking")
def _bounds_marking(job: JobSpec):
    settings = get_settings()
    report = marking_number(
        int(job.option("N")),
        int(job.option("R")),
        exact_max_n=job.option("exact_max_n", settings.marking_exact_max_n),
        node_budget=job.option("node_budget", settings.node_budget),
    )
    return {"marking": report}, OK


@handler("bounds sset-cardinality")
def _bounds_sset_cardinality(job: JobSpec):
    return {"bounds": sset_cardinality_bounds(int(job.option("N")), int(job.option("k")))}, OK


@handler("reproduce")
def _reproduce(job: JobSpec):
    name = job.option("example")
    if name not in RECIPES:
        raise MalformedJobError(f"unknown example {name!r}; choose from {sorted(RECIPES)}")
    payload = RECIPES[name](job)
    return payload, _status(payload.get("matches", True))


# ────────────────────────────────────────────────────────────────
# Dispatch
# ────────────────────────────────────────────────────────────────
def run(job: JobSpec) -> JobOutcome:
    """Dispatch the job; the report is written to options["output"] when present."""
    func = REGISTRY.get(job.command)
    if func is None:
        raise MalformedJobError(f"unknown command {job.command!r}")
    logger.info("running %s", job.command)
    payload, status = func(job)
    payload = {"job": job.to_json(), **payload}
    text = dump_report(job.command, payload, job.option("output"))
    return JobOutcome(status, text)
