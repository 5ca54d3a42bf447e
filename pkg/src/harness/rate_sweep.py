import logging
import math
import time
from typing import Any, Optional

import numpy as np
import pandas as pd

from src.codec.decoder import coding_rate
from src.codec.idealized_encoder import build_level_config, encode_idealized
from src.config import ExperimentConfig
from src.harness.dictionary_sampling import experiment_distortion, experiment_source
from src.harness.lemma_checks import cell_parameters
from src.harness.rng import SWEEP_STREAMS, bernoulli_bits, create_generator
from src.harness.trial_runner import run_trials
from src.matching.distance import hamming_distance
from src.models import BitSequence, Comparison, LemmaReport
from src.rd_math.rate_distortion import rate_distortion
from src.utils import format_fraction

CONVERGENCE_RATIO_BOUND = 0.8
SWEEP_COLUMNS = [
    "row_type",
    "n",
    "D",
    "p",
    "seed",
    "ell",
    "rate",
    "rate_distortion",
    "gap",
    "escapes",
    "give_ups",
    "runtime_s",
    "mean_phrase_length",
    "target_phrase_length",
    "measured_distortion",
]


def sweep_trial(cfg: ExperimentConfig, length: int, length_index: int, seed_index: int) -> dict[str, Any]:
    """
    Encode one random input of given length with the idealized variant and measure its coding rate.
    :param cfg: Experiment cell.
    :param length: Input length n.
    :param length_index: Position of n in the cell's n values (selects the random stream).
    :param seed_index: Trial index for this n.
    :return: One csv row.
    """
    source = experiment_source(cfg)
    distortion = experiment_distortion(cfg)
    rng = create_generator(cfg.seed, SWEEP_STREAMS + (length_index << 20) + seed_index)
    x = BitSequence.from_array(bernoulli_bits(rng, cfg.p, length))
    level_cfg = build_level_config(length, distortion, source, delta=cfg.delta)

    start = time.perf_counter()
    result = encode_idealized(x, distortion, source, level_cfg)
    runtime = time.perf_counter() - start

    mismatches = hamming_distance(x, result.y)
    if not distortion.allows(mismatches, length):
        logging.error(
            "Reconstruction of n=%s seed %s exceeds distortion: %s mismatches.", length, seed_index, mismatches
        )
    rate = coding_rate(result.stream)
    rd_value = rate_distortion(source, distortion)
    return {
        "row_type": "trial",
        "n": length,
        "D": format_fraction(cfg.distortion),
        "p": cfg.p,
        "seed": seed_index,
        "ell": level_cfg.ell,
        "rate": rate,
        "rate_distortion": rd_value,
        "gap": rate - rd_value,
        "escapes": result.stats.escape_count,
        "give_ups": result.stats.give_up_count,
        "runtime_s": runtime,
        "mean_phrase_length": length / len(result.events) if result.events else 0.0,
        "target_phrase_length": math.log2(length) / rd_value if rd_value > 0.0 and length > 1 else math.nan,
        "measured_distortion": mismatches / length,
    }


def aggregate_sweep(trial_rows: pd.DataFrame) -> pd.DataFrame:
    """
    Mean of every numeric column per n, one row per n.
    """
    numeric_columns = ["rate", "gap", "escapes", "give_ups", "runtime_s", "mean_phrase_length", "measured_distortion"]
    first_columns = ["D", "p", "ell", "rate_distortion", "target_phrase_length"]
    aggregations = {column: "mean" for column in numeric_columns}
    aggregations.update({column: "first" for column in first_columns})
    aggregated = trial_rows.groupby("n", sort=True).agg(aggregations)
    aggregated = aggregated.reset_index()
    aggregated["row_type"] = "mean"
    aggregated["seed"] = np.nan
    return aggregated[SWEEP_COLUMNS]


def rate_convergence_report(cfg: ExperimentConfig, trial_rows: pd.DataFrame) -> Optional[LemmaReport]:
    """
    Ratio of the mean gap at the largest n to the mean gap at the smallest n.
    :param cfg: Experiment cell.
    :param trial_rows: Per-trial rows of the sweep.
    :return: Report (AT_MOST 0.8 within slack), None for a single n.
    """
    gaps = trial_rows.groupby("n", sort=True)["gap"]
    mean_gaps = gaps.mean()
    if len(mean_gaps) < 2:
        logging.warning("Rate convergence needs at least two n values, got %s.", len(mean_gaps))
        return None
    first_gap = float(mean_gaps.iloc[0])
    last_gap = float(mean_gaps.iloc[-1])
    last_n = int(mean_gaps.index[-1])
    last_gaps = trial_rows.loc[trial_rows["n"] == last_n, "gap"]
    ratio, standard_error = math.nan, 0.0
    if first_gap > 0.0:
        ratio = last_gap / first_gap
        if len(last_gaps) > 1:
            standard_error = float(last_gaps.std(ddof=1)) / math.sqrt(len(last_gaps)) / first_gap
    gap_values = [float(gap) for gap in mean_gaps]
    return LemmaReport(
        check_name="rate_convergence",
        parameters=cell_parameters(cfg, n_values=",".join(str(n) for n in mean_gaps.index)),
        estimate=ratio,
        bound=CONVERGENCE_RATIO_BOUND,
        sample_count=len(trial_rows),
        standard_error=standard_error,
        comparison=Comparison.AT_MOST,
        details={
            "mean_gaps": dict(zip([int(n) for n in mean_gaps.index], gap_values)),
            "strictly_decreasing": all(later < earlier for earlier, later in zip(gap_values, gap_values[1:])),
        },
    )


def rate_sweep(cfg: ExperimentConfig, process_count: int) -> tuple[pd.DataFrame, Optional[LemmaReport]]:
    """
    Run the idealized encoder for every (n, seed) of the cell.
    :param cfg: Experiment cell.
    :param process_count: Maximum number of worker processes.
    :return: Sweep rows (trial rows followed by mean rows) and the convergence report.
    """
    arguments = [
        (cfg, length, length_index, seed_index)
        for length_index, length in enumerate(cfg.n_values)
        for seed_index in range(cfg.sweep_seeds)
    ]
    trial_rows = pd.DataFrame(run_trials(sweep_trial, arguments, process_count), columns=SWEEP_COLUMNS)
    rows = pd.concat([trial_rows, aggregate_sweep(trial_rows)], ignore_index=True)
    return rows, rate_convergence_report(cfg, trial_rows)
