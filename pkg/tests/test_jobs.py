# tests/test_jobs.py

import json
from fractions import Fraction

import pytest

from analysis.sample_space import SampleSpace
from commands.jobs import (
    REGISTRY,
    FamilySpec,
    JobSpec,
    build_statistics,
    resolve_distribution,
    run,
)
from utils.errors import DomainError, MalformedJobError


def _family(k=1, n=3):
    return FamilySpec("kinteraction", (2,) * n, k=k)


@pytest.mark.parametrize(
    "kwargs",
    [
        {"kind": "bogus", "arities": (2, 2)},
        {"kind": "ngon"},
        {"kind": "product"},
        {"kind": "kinteraction", "arities": (2, 2)},
        {"kind": "interactions", "arities": (2, 2)},
    ],
)
def test_family_spec_validation(kwargs):
    with pytest.raises(MalformedJobError):
        FamilySpec(**kwargs)


def test_build_statistics_kinds():
    assert build_statistics(FamilySpec("ngon", n=5)).rank == 3
    assert build_statistics(FamilySpec("product", (3, 3))).rank == 5
    custom = build_statistics(FamilySpec("interactions", (2, 2, 2), interactions=((1, 2), (2, 3))))
    assert custom.rank == 6
    ternary = build_statistics(FamilySpec("interactions", (3, 3), interactions=((1, 2),)))
    assert ternary.rank == 9


def test_job_spec_json_round_trip(tmp_path):
    job = JobSpec("cover min", _family(), ("000", "001"), None, {"guard": None, "node_budget": 10})
    payload = job.to_json()
    assert payload["options"] == {"node_budget": 10}
    path = tmp_path / "job.json"
    path.write_text(json.dumps(payload), encoding="utf-8")
    loaded = JobSpec.load(path)
    assert loaded.family == job.family
    assert loaded.target == job.target
    assert loaded.option("node_budget") == 10
    assert loaded.option("guard", 5) == 5


def test_job_load_errors(tmp_path):
    with pytest.raises(MalformedJobError):
        JobSpec.from_json({"family": {}})
    bad = tmp_path / "bad.json"
    bad.write_text("{not json", encoding="utf-8")
    with pytest.raises(MalformedJobError):
        JobSpec.load(bad)


def test_resolve_distribution_specs(tmp_path):
    space = SampleSpace.binary(3)
    assert resolve_distribution("uniform", space).probs[0] == Fraction(1, 8)
    even = resolve_distribution("parity:even", space)
    assert even.support.to_strings() == ["000", "011", "101", "110"]
    assert resolve_distribution("point:101", space).support.to_strings() == ["101"]
    first = resolve_distribution("random:4", space)
    assert first == resolve_distribution("random:4", space)
    inline = resolve_distribution({"000": "1/2", "111": "1/2"}, space)
    assert len(inline.support) == 2
    path = tmp_path / "p.json"
    path.write_text(json.dumps({"arities": [2, 2, 2], "probs": {"010": "1/1"}}), encoding="utf-8")
    assert resolve_distribution(str(path), space).support.to_strings() == ["010"]

    for spec in (None, "parity:middle", "random:x"):
        with pytest.raises(MalformedJobError):
            resolve_distribution(spec, space)
    with pytest.raises(MalformedJobError):
        resolve_distribution({"arities": [2, 2], "probs": {"00": "1"}}, space)


def test_every_cli_command_has_a_handler():
    expected = {
        "stats-build", "facial-check", "sset-check", "crosscheck", "enumerate-faces", "gale",
        "cover min", "cover packing", "cover cylinder", "cover lines", "cover recursive",
        "kappa-cross", "verify", "decompose", "lower-bound", "sufficient", "smooth",
        "pentagon-solve", "bounds gv", "bounds singleton", "bounds parity", "bounds marking",
        "bounds sset-cardinality", "reproduce",
    }
    assert expected <= set(REGISTRY)


def test_run_cover_min_report():
    outcome = run(JobSpec("cover min", _family()))
    assert outcome.status == 0
    report = json.loads(outcome.report)
    assert report["schema"] == "sset-kit/1"
    assert report["command"] == "cover min"
    assert report["cover"]["kappa"] == 4
    assert report["verification"]["passed"] is True
    assert report["job"]["family"]["kind"] == "kinteraction"


def test_run_writes_output_file(tmp_path):
    path = tmp_path / "facial.json"
    outcome = run(JobSpec("facial-check", _family(), ("000", "011"), None, {"output": str(path)}))
    report = json.loads(path.read_text(encoding="utf-8"))
    assert outcome.status == 0
    assert report["verdict"]["is_facial"] is False
    assert report["verdict"]["off_face_mass"] != "0/1"


def test_run_decompose_and_lower_bound():
    family = FamilySpec("product", (3, 3, 3))
    outcome = run(JobSpec("decompose", family, None, "random:1"))
    report = json.loads(outcome.report)
    assert outcome.status == 0
    assert report["mixture"]["m"] == 9
    assert report["reconstruction_check"] == "exact"

    bound = run(JobSpec("lower-bound", _family(), None, "parity:odd"))
    assert json.loads(bound.report)["lower_bound"]["value"] == 4


def test_verify_reports_failure_status(tmp_path):
    cover = {
        "mode": "sset-cover",
        "kappa": 4,
        "optimal": False,
        "lower_bound": {"value": 4, "provenance": "dual bound"},
        "sets": [["000", "011"], ["001", "010"], ["100", "101"], ["110", "111"]],
    }
    path = tmp_path / "cover.json"
    path.write_text(json.dumps({"cover": cover}), encoding="utf-8")
    outcome = run(JobSpec("verify", _family(), None, None, {"cover": str(path)}))
    assert outcome.status == 2
    assert json.loads(outcome.report)["verification"]["passed"] is False


def test_run_rejects_unknown_and_incomplete_jobs():
    with pytest.raises(MalformedJobError):
        run(JobSpec("nope"))
    with pytest.raises(MalformedJobError):
        run(JobSpec("facial-check", _family()))
    with pytest.raises(MalformedJobError):
        run(JobSpec("cover min"))


def test_bounds_and_reproduce_jobs():
    gv = json.loads(run(JobSpec("bounds gv", options={"q": 2, "N": 4, "d": 2})).report)
    assert gv["gv_bound"] == 4
    gale = json.loads(run(JobSpec("gale", options={"v": 6, "d": 3})).report)
    assert gale["facet_count"] == 8
    outcome = run(JobSpec("reproduce", options={"example": "coding-bounds"}))
    assert outcome.status == 0
    assert json.loads(outcome.report)["matches"] is True


@pytest.mark.slow
def test_reproduce_cube_cover_job():
    outcome = run(JobSpec("reproduce", options={"example": "cube-cover"}))
    report = json.loads(outcome.report)
    assert outcome.status == 0
    assert report["matches"] is True
    assert report["optimum_4_2"]["kappa"] == 2
    row = next(r for r in report["constructions"] if (r["N"], r["k"]) == (4, 2))
    assert row["sets"] == 3


@pytest.mark.parametrize("command", ["cover cylinder", "cover recursive", "sufficient"])
def test_explicit_zero_order_is_rejected(command):
    family = FamilySpec("product", (2, 2, 2))
    with pytest.raises(DomainError):
        run(JobSpec(command, family, None, "uniform", {"k": 0}))
    with pytest.raises(DomainError):
        run(JobSpec(command, FamilySpec("kinteraction", (2, 2, 2), k=0), None, "uniform"))


def test_cylinder_order_defaults_to_one():
    report = json.loads(run(JobSpec("cover cylinder", FamilySpec("product", (2, 2, 2)))).report)
    assert report["cover"]["kappa"] == 4
