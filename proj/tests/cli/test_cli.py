import json
import os
import subprocess
from pathlib import Path

import pytest

CLI = os.environ.get("ADELIC_CLI", "adelic")
INSTANCES = Path(__file__).resolve().parents[2] / "instances"


def run(*args):
    return subprocess.run([CLI, *map(str, args)], capture_output=True, text=True, timeout=60)


@pytest.mark.parametrize(
    "command, instance, code",
    [
        ("separable", "kummer.adl", 0),
        ("separable", "zero_override.adl", 0),
        ("decompose", "kummer_decompose.adl", 0),
        ("content", "content_T.adl", 0),
        ("content", "content_split.adl", 0),
        ("content", "not_unit.adl", 4),
        ("verify-cover", "canonical.adl", 0),
        ("verify-cover", "sigma_in_kummer.adl", 0),
        ("verify-cover", "cubic.adl", 0),
        ("verify-cover", "twisted.adl", 5),
        ("verify-cover", "wild.adl", 3),
        ("separable", "malformed.adl", 2),
    ],
)
def test_exit_codes(command, instance, code):
    r = run(command, INSTANCES / instance)
    assert r.returncode == code, r.stderr


def test_errors_as_json():
    r = run("--json", "separable", INSTANCES / "malformed.adl")
    assert r.returncode == 2
    assert json.loads(r.stdout)["error"] == "ParseError"


def test_missing_file():
    assert run("separable", INSTANCES / "no_such_file.adl").returncode != 0


def test_separable_report():
    out = json.loads(run("--json", "separable", INSTANCES / "kummer.adl").stdout)
    assert out["separable"] and out["certificate"]["verified"]
    assert out["bad_set"] == ["@0", "@inf"]
    out = json.loads(run("--json", "separable", INSTANCES / "zero_override.adl").stdout)
    assert not out["separable"] and out["witness"] == "@2"


def test_content_values():
    assert json.loads(run("--json", "content", INSTANCES / "content_T.adl").stdout)["valuation"]["total"] == 0
    assert json.loads(run("--json", "content", INSTANCES / "content_split.adl").stdout)["valuation"]["total"] == 1


def test_twisted_report():
    out = json.loads(run("--json", "verify-cover", INSTANCES / "twisted.adl").stdout)
    assert out["verdict"] == "NonDiscrete"
    assert out["missed"] == [{"place": "@1", "fiber": 1, "e": 1}]
    assert out["witness_content"] >= 1
    assert out["shipped_witness"]["valid"] and out["shipped_witness"]["content"] == 1


def test_flags_override_file():
    out = json.loads(run("--json", "--precision", "6", "decompose", INSTANCES / "kummer_decompose.adl").stdout)
    assert out["precision"] == 6
    out = json.loads(run("--json", "decompose", "--place", "@0", INSTANCES / "kummer_decompose.adl").stdout)
    assert out["place"] == "@0"


@pytest.mark.parametrize(
    "command, instance",
    [
        ("separable", "kummer.adl"),
        ("separable", "zero_override.adl"),
        ("decompose", "kummer_decompose.adl"),
        ("content", "content_split.adl"),
        ("verify-cover", "canonical.adl"),
        ("verify-cover", "twisted.adl"),
        ("verify-cover", "cubic.adl"),
    ],
)
def test_echo_round_trip(command, instance, tmp_path):
    first = run("--json", command, INSTANCES / instance)
    a = json.loads(first.stdout)
    echoed = tmp_path / "echo.adl"
    echoed.write_text(a["instance"])
    second = run("--json", command, echoed)
    assert second.returncode == first.returncode
    assert json.loads(second.stdout) == a


def test_global_flags_after_subcommand():
    out = json.loads(run("separable", "--json", "--field", "Q", INSTANCES / "kummer.adl").stdout)
    assert out["separable"] and out["bad_set"] == ["@0", "@inf"]
    assert out["instance"].startswith("field Q\n")
