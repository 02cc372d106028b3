import json

import pytest

from rydeit import run_validation


def test_fast_level_passes(tmp_path):
    report = run_validation("fast")
    assert report.passed, report.summary()
    names = [c.name for c in report.checks]
    # the suite must wire the independent paths against each other
    for expected in (
        "single_particle_limit",
        "recursion_equivalence",
        "transfer_oracle",
        "mode_residuals",
        "exact_residual",
        "kernel_backends",
        "cross_path",
        "relaxation_bound",
    ):
        assert expected in names

    path = tmp_path / "report.json"
    report.to_json(path)
    doc = json.loads(path.read_text())
    assert doc["passed"] is True
    assert doc["level"] == "fast"
    assert all("deviation" in c for c in doc["checks"])


def test_summary_is_one_line_per_check():
    report = run_validation("fast")
    lines = report.summary().splitlines()
    assert len(lines) == len(report.checks) + 1
    assert lines[-1].startswith("PASS")


def test_unknown_level_rejected():
    with pytest.raises(ValueError):
        run_validation("paranoid")
