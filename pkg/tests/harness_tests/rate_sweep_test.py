from fractions import Fraction

import pandas as pd
import pytest

from src.harness.rate_sweep import (
    CONVERGENCE_RATIO_BOUND,
    SWEEP_COLUMNS,
    aggregate_sweep,
    rate_convergence_report,
    rate_sweep,
    sweep_trial,
)
from src.models import Comparison
from src.rd_math.entropy import binary_entropy
from tests.utils import small_experiment


def _trial_rows(gaps_by_length: dict[int, list[float]]) -> pd.DataFrame:
    rows = []
    for length, gaps in gaps_by_length.items():
        for seed, gap in enumerate(gaps):
            rows.append(
                {
                    "row_type": "trial",
                    "n": length,
                    "D": "1/4",
                    "p": 0.5,
                    "seed": seed,
                    "ell": 2,
                    "rate": 0.2 + gap,
                    "rate_distortion": 0.2,
                    "gap": gap,
                    "escapes": 10,
                    "give_ups": 0,
                    "runtime_s": 0.1,
                    "mean_phrase_length": 4.0,
                    "target_phrase_length": 40.0,
                    "measured_distortion": 0.2,
                }
            )
    return pd.DataFrame(rows, columns=SWEEP_COLUMNS)


def test_sweep_trial_row():
    # arrange
    cfg = small_experiment()

    # act
    row = sweep_trial(cfg, 512, 0, 1)

    # assert
    assert list(row) == SWEEP_COLUMNS
    assert (row["row_type"], row["n"], row["D"], row["seed"], row["ell"]) == ("trial", 512, "1/4", 1, 4)
    assert row["measured_distortion"] <= 0.25
    assert row["rate_distortion"] == pytest.approx(1 - binary_entropy(0.25))
    assert row["gap"] == pytest.approx(row["rate"] - row["rate_distortion"])
    assert row["mean_phrase_length"] >= 1.0


def test_sweep_trial_is_reproducible():
    cfg = small_experiment()

    first = sweep_trial(cfg, 300, 1, 0)
    second = sweep_trial(cfg, 300, 1, 0)

    assert first["rate"] == second["rate"]
    assert first["measured_distortion"] == second["measured_distortion"]


def test_means_per_length():
    aggregated = aggregate_sweep(_trial_rows({100: [0.4, 0.6], 1000: [0.1, 0.3]}))

    assert list(aggregated.columns) == SWEEP_COLUMNS
    assert aggregated["n"].tolist() == [100, 1000]
    assert aggregated["gap"].tolist() == pytest.approx([0.5, 0.2])
    assert set(aggregated["row_type"]) == {"mean"}


def test_convergence_report_of_shrinking_gap():
    report = rate_convergence_report(small_experiment(), _trial_rows({100: [0.5, 0.5], 1000: [0.2, 0.2]}))

    assert report.check_name == "rate_convergence"
    assert report.comparison == Comparison.AT_MOST
    assert report.bound == CONVERGENCE_RATIO_BOUND
    assert report.estimate == pytest.approx(0.4)
    assert report.details["strictly_decreasing"]
    assert report.passed


def test_convergence_report_of_growing_gap_fails():
    report = rate_convergence_report(small_experiment(), _trial_rows({100: [0.2, 0.2], 1000: [0.3, 0.3]}))

    assert not report.details["strictly_decreasing"]
    assert not report.passed


def test_convergence_needs_two_lengths():
    assert rate_convergence_report(small_experiment(), _trial_rows({100: [0.2, 0.3]})) is None


def test_rate_sweep_rows():
    # arrange
    cfg = small_experiment(n_values=[128, 256], sweep_seeds=2, distortion=Fraction(1, 10))

    # act
    rows, report = rate_sweep(cfg, 1)

    # assert
    assert rows["row_type"].tolist() == ["trial"] * 4 + ["mean"] * 2
    assert rows.loc[rows["row_type"] == "trial", "n"].tolist() == [128, 128, 256, 256]
    assert (rows["measured_distortion"] <= 0.1).all()
    assert report is not None
    assert report.sample_count == 4
