#!/usr/bin/env python3

import csv
import io
import sys

import pytest

sys.path.append('.')

from core.registry_loader import golden_pair, load_goldens
from main import main
from models.golden_models import GoldenCheck
from services.bench_service import BenchService, bench_service
from services.generate_random import trial_rngs
from utils.error_handler import InputValidationError


def test_registry_loads():
    registry = load_goldens()
    assert "han_park" in registry.pairs
    assert any(check.discrepancy for check in registry.checks)


def test_unknown_pair_is_rejected():
    with pytest.raises(InputValidationError):
        golden_pair("nowhere")


def test_approx_check_needs_curve():
    with pytest.raises(ValueError):
        GoldenCheck(name="x", pair="han_park", quantity="approx", expected=1.0, tolerance=1e-3)


def test_trial_streams_are_reproducible():
    first = [rng.uniform() for rng in trial_rngs(3, 4, 1, 2)]
    second = [rng.uniform() for rng in trial_rngs(3, 4, 1, 2)]
    other = [rng.uniform() for rng in trial_rngs(3, 4, 2, 2)]
    assert first == second
    assert first != other
    assert len(set(first)) == 4


def test_worker_count_does_not_change_results():
    serial = BenchService(workers=1).run_bounds_table([2], 6, 20, 9)
    threaded = BenchService(workers=3).run_bounds_table([2], 6, 20, 9)
    assert [r.value for r in serial.rows] == [r.value for r in threaded.rows]


def test_known_discrepancies_do_not_fail():
    check = next(c for c in load_goldens().checks if c.name == "example1 killing")
    n1, n2 = golden_pair(check.pair)
    assert bench_service.evaluate_check(check, n1, n2) == pytest.approx(8.40894, abs=1e-4)


@pytest.mark.slow
def test_examples_suite_passes(capsys):
    code = main(["bench", "examples"])
    out, err = capsys.readouterr()
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    statuses = {r["name"]: r["status"] for r in rows}
    assert "fail" not in statuses.values()
    assert statuses["example1 killing"] == "known-discrepancy"
    assert statuses["han_park mahalanobis-spd"] == "known-discrepancy"
    assert statuses["han_park approx co T=10"] == "known-discrepancy"
    assert statuses["han_park approx co T=100"] == "pass"
    assert statuses["han_park approx co T=500"] == "pass"
    assert any(line.startswith("examples: ") for line in err.splitlines())


@pytest.mark.slow
def test_tsweep_stays_above_lower_bound():
    summary = bench_service.run_tsweep()
    assert summary.ok
    assert len(summary.rows) == 99
    assert summary.rows[-1].name == "min full chain >= co_lower"


@pytest.mark.slow
def test_bounds_table_orders_bounds():
    summary = bench_service.run_bounds_table([1, 2, 3], 10, 100, 0)
    assert summary.ok
    names = [r.name for r in summary.rows]
    assert "d=3 co_lower <= approx_co <= spc_upper" in names


@pytest.mark.slow
def test_kappa_table_runs_both_scenarios():
    summary = bench_service.run_kappa_table([2], 5, 1000, 0)
    names = [r.name for r in summary.rows]
    assert "scenario1 d=2 kappa_co" in names
    assert "scenario2 d=2 kappa_m" in names
    values = [r.value for r in summary.rows if r.name.startswith("scenario") and "kappa_" in r.name and r.status == "info"]
    assert all(v >= 1.0 - 1e-6 for v in values)
