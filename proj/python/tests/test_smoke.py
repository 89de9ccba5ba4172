from pathlib import Path

import pytest

import adelic

INSTANCES = Path(__file__).resolve().parents[2] / "instances"


def test_content_of_global_function_is_zero():
    assert adelic.content_idele("u^2 (u - 1) / (u - 3)^3", "F_5") == 0
    assert adelic.content_idele("(generic: u; at @0: t^2)", "F_5") == 1


def test_kummer_bad_set_and_separability():
    assert adelic.bad_set("T^2 - u", "F_5") == ["@0", "@inf"]
    r = adelic.is_separable("T^2 - u", "F_5")
    assert r["separable"] and r["verified"] and r["witness"] is None
    r = adelic.is_separable("T^3 - (generic: u + 1; at @2: 0)", "F_5")
    assert not r["separable"] and r["witness"] == "@2"


def test_content():
    assert adelic.content("T^2 - u", "T", "F_5") == 0
    with pytest.raises(adelic.NotAUnit):
        adelic.run("content", (INSTANCES / "not_unit.adl").read_text())


def test_covers():
    assert adelic.is_discrete("U^2 - u", "F_5")
    assert adelic.is_discrete("U^3 - u (u - 1)", "F_7")


def test_run_matches_cli_verdicts():
    report, code = adelic.run("verify-cover", (INSTANCES / "twisted.adl").read_text())
    assert code == 5 and report["verdict"] == "NonDiscrete"
    report, code = adelic.run("verify-cover", (INSTANCES / "canonical.adl").read_text())
    assert code == 0 and report["verdict"] == "Discrete"


def test_errors():
    with pytest.raises(adelic.ParseError):
        adelic.run("separable", "field F_5\npoly: T^2 - (\n")
    with pytest.raises(adelic.PreconditionViolation):
        adelic.bad_set("T^2", "F_5")
    assert issubclass(adelic.PreconditionViolation, adelic.AdelicError)
