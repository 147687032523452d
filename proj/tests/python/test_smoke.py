"""End-to-end smoke tests for the python bindings and the CLI JSON surface.

Requires the build-tree layout: PYTHONPATH points at <build>/python, the
INCOHERENT_CLI env var at the command-line binary, and INCOHERENT_SCHEMA at
the report-v1 JSON schema.
"""

import json
import os
import subprocess

import jsonschema
import numpy as np
import pytest

import incoherent


def _cli(*args):
    exe = os.environ["INCOHERENT_CLI"]
    return subprocess.run([exe, *args], capture_output=True, text=True)


@pytest.fixture(scope="module")
def schema():
    with open(os.environ["INCOHERENT_SCHEMA"], encoding="utf-8") as f:
        return json.load(f)


@pytest.fixture(scope="module")
def built():
    matrix, report = incoherent.construct(20, 2, seed=1)
    assert report["success"] is True
    return matrix, report


def test_version_and_generator_pins():
    assert incoherent.__version__ == "0.1.0"
    assert incoherent.GENERATOR_ID == "mt19937_64/canonical53/polar-v1"


def test_closed_form_bounds():
    assert incoherent.required_m(2, 200) == 180
    assert incoherent.required_m(1, 10) == 17
    assert incoherent.welch_bound(180, 200) == pytest.approx(
        0.023629373500277863, abs=1e-15
    )
    assert incoherent.cap_measure_exact(3, 0.25) == pytest.approx(0.75, abs=1e-12)
    assert incoherent.pair_reject_bound(2, 180) == pytest.approx(
        0.0019738282514469114, rel=1e-12
    )
    report = incoherent.bounds_report(2, 200)
    assert report["required_m"] == 180
    assert report["welch_vacuous"] is False
    assert report["bound_le_target"] is True


def test_construction_is_deterministic(built):
    matrix, report = built
    again, report_again = incoherent.construct(20, 2, seed=1)
    assert np.array_equal(matrix, again)
    for r in (report, report_again):
        r.pop("elapsed_seconds")
    assert report == report_again
    assert matrix.shape == (106, 20)  # sizing rule fills m when omitted


def test_analysis_and_text_round_trip(built):
    matrix, report = built
    assert report["achieved_coherence"] <= 0.25 + 1e-12
    assert incoherent.coherence(matrix) == report["achieved_coherence"]
    analysis = incoherent.analyze(matrix, s=2)
    assert analysis["condition_for_s"] is True
    assert analysis["max_recoverable_sparsity"] >= 2
    round_trip = incoherent.parse_matrix(incoherent.matrix_to_text(matrix))
    assert np.array_equal(matrix, round_trip)
    assert incoherent.matrix_sha256(matrix) == incoherent.matrix_sha256(round_trip)


def test_unbounded_sparsity_marker():
    assert incoherent.max_recoverable_sparsity(0.0) is None
    assert incoherent.max_recoverable_sparsity(0.25) == 2
    identity = np.eye(4)
    assert incoherent.analyze(identity)["max_recoverable_sparsity"] == "unbounded"


def test_sparse_recovery_round_trip(built):
    matrix, _ = built
    x = np.zeros(20)
    x[2], x[7] = 1.5, -0.75  # columns 3 and 8, 1-based
    b = matrix @ x
    greedy = incoherent.omp(matrix, b, 2)
    assert greedy["support"] == [3, 8]
    assert not greedy["degenerate"]
    assert greedy["coefficients"] == pytest.approx([1.5, -0.75], abs=1e-10)
    exhaustive = incoherent.brute_force_l0(matrix, b, 2)
    assert exhaustive is not None
    assert exhaustive["support"] == [3, 8]
    experiment = incoherent.recovery_experiment(matrix, 2, 50, 7)
    assert experiment["success_rate"] == 1.0
    assert experiment["condition_held"] is True


def test_monte_carlo_matches_dimension_three_law():
    cap = incoherent.monte_carlo_cap(3, 0.5, 20000, 11)
    assert abs(cap["estimate"] - 0.5) <= 4 * cap["standard_error"]
    assert incoherent.ric_brute_force(np.eye(4), 2)["delta"] == 0.0


def test_cli_reports_validate_against_schema(schema, tmp_path):
    matrix_path = str(tmp_path / "a.txt")
    report_path = str(tmp_path / "a.json")

    runs = []
    built = _cli(
        "construct", "--s", "2", "--N", "20", "--seed", "1",
        "--out", matrix_path, "--report", report_path,
    )
    assert built.returncode == 0, built.stderr
    runs.append(("construction", built.stdout))
    runs.append(("analysis", _cli("analyze", "--matrix", matrix_path, "--s", "2").stdout))
    runs.append(
        (
            "recovery",
            _cli(
                "recover", "--matrix", matrix_path, "--s", "2",
                "--trials", "20", "--seed", "4",
            ).stdout,
        )
    )
    runs.append(("bounds", _cli("bounds", "--s", "2", "--N", "200").stdout))
    runs.append(
        ("montecarlo", _cli("montecarlo", "--m", "5", "--t", "0.3",
                            "--samples", "2000", "--seed", "2").stdout)
    )
    runs.append(("ric", _cli("ric", "--matrix", matrix_path, "--s", "2").stdout))

    for kind, stdout in runs:
        envelope = json.loads(stdout)
        assert envelope["kind"] == kind
        jsonschema.validate(envelope, schema)

    with open(report_path, encoding="utf-8") as f:
        jsonschema.validate(json.load(f), schema)
