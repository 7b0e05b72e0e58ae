# tests/test_app.py
import json
from unittest.mock import patch

from app import EXIT_CAPACITY, EXIT_MALFORMED, EXIT_OK, EXIT_VERIFICATION, create_cli, main
from commands.cli_common import parse_target


def test_cli_registers_command_groups():
    cli = create_cli()
    for name in ("stats-build", "facial-check", "cover", "verify", "decompose", "pentagon-solve",
                 "bounds", "reproduce", "run-job", "gale"):
        assert name in cli.commands
    assert set(cli.commands["cover"].commands) == {"min", "packing", "cylinder", "lines", "recursive"}


def test_cover_min_prints_report(capsys):
    assert main(["cover", "min", "--binary", "3", "--k", "1"]) == EXIT_OK
    report = json.loads(capsys.readouterr().out)
    assert report["command"] == "cover min"
    assert report["cover"]["kappa"] == 4


def test_global_options_reach_the_job(capsys):
    assert main(["--node-budget", "500", "--log-level", "debug", "sset-check", "--binary", "3", "--k", "2",
                 "--target", "000,011,101,001"]) == EXIT_OK
    report = json.loads(capsys.readouterr().out)
    assert report["job"]["options"]["node_budget"] == 500
    assert report["verdict"]["is_sset"] is True
    assert report["kernel_crosscheck"]["is_sset"] is True


def test_output_option_writes_file(tmp_path, capsys):
    path = tmp_path / "gale.json"
    assert main(["gale", "--v", "6", "--d", "3", "--output", str(path)]) == EXIT_OK
    assert capsys.readouterr().out == ""
    assert json.loads(path.read_text(encoding="utf-8"))["facet_count"] == 8


def test_malformed_input_exit_code(capsys):
    assert main(["facial-check", "--binary", "3", "--k", "1", "--target", "000,0"]) == EXIT_MALFORMED
    assert "Error" in capsys.readouterr().err
    assert main(["cover", "min"]) == EXIT_MALFORMED
    assert main(["no-such-command"]) == EXIT_MALFORMED


def test_capacity_exit_code(capsys):
    assert main(["--guard", "4", "enumerate-faces", "--binary", "3", "--k", "1"]) == EXIT_CAPACITY
    assert "capacity" in capsys.readouterr().err


def test_verification_exit_code(tmp_path):
    cover = {
        "mode": "sset-cover",
        "kappa": 1,
        "optimal": False,
        "lower_bound": {"value": 1, "provenance": "dual bound"},
        "sets": [["000", "001", "010", "011", "100", "101", "110", "111"]],
    }
    path = tmp_path / "cover.json"
    path.write_text(json.dumps(cover), encoding="utf-8")
    out = tmp_path / "report.json"
    status = main(["verify", "--binary", "3", "--k", "1", "--cover", str(path), "-o", str(out)])
    assert status == EXIT_VERIFICATION
    assert json.loads(out.read_text(encoding="utf-8"))["verification"]["passed"] is False


def test_run_job_replays_a_report_job(tmp_path, capsys):
    assert main(["bounds", "parity", "--q", "3", "--n", "3"]) == EXIT_OK
    first = json.loads(capsys.readouterr().out)
    path = tmp_path / "job.json"
    path.write_text(json.dumps(first["job"]), encoding="utf-8")
    assert main(["run-job", str(path)]) == EXIT_OK
    replay = json.loads(capsys.readouterr().out)
    assert replay == first


def test_reproduce_failure_maps_to_verification_status(capsys):
    with patch.dict("commands.recipes.RECIPES", {"census": lambda job: {"matches": False}}):
        assert main(["reproduce", "census"]) == EXIT_VERIFICATION
    assert json.loads(capsys.readouterr().out)["matches"] is False


def test_target_lists_accept_semicolons():
    assert parse_target("000,011") == ("000", "011")
    assert parse_target("1,39; 0,2") == ("1,39", "0,2")
    assert parse_target("") is None
