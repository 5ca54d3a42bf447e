import logging
import math
from itertools import combinations
from typing import Any, Sequence

import numpy as np
from scipy.stats import chisquare

from src.codec.idealized_encoder import build_level_config, encode_idealized
from src.config import ExperimentConfig
from src.exception import ZeroRateError
from src.harness.dictionary_sampling import (
    BuildSample,
    builder_level_config,
    experiment_distortion,
    experiment_source,
)
from src.harness.rng import FRONTIER_STREAMS, SHORT_PHRASE_STREAMS, bernoulli_bits, create_generator
from src.matching.probabilities import match_probability, optimal_type_ones, optimal_type_sequence
from src.models import BitSequence, Comparison, Diagnostics, LemmaReport
from src.rd_math.rate_distortion import rate_distortion
from src.utils import format_fraction

SYMMETRY_SIGNIFICANCE = 0.01
SYMMETRY_MAX_DEPTH = 8


def cell_parameters(cfg: ExperimentConfig, **extra: Any) -> dict[str, Any]:
    """
    Parameters identifying the cell in a report row.
    """
    parameters = {
        "p": cfg.p,
        "distortion": format_fraction(cfg.distortion),
        "ell": cfg.ell,
        "level": cfg.level,
        "delta": cfg.delta,
        "seed": cfg.seed,
    }
    parameters.update(extra)
    return parameters


def level_match_probability(cfg: ExperimentConfig, depth: int) -> float:
    """
    p_L of the canonical optimal-type codelet of given depth.
    """
    source = experiment_source(cfg)
    distortion = experiment_distortion(cfg)
    return match_probability(optimal_type_sequence(depth, source, distortion), distortion, source)


def mean_and_standard_error(per_build: Sequence[np.ndarray]) -> tuple[float, float, int]:
    """
    Pooled mean with standard error taken from spread of per-build means (or of the samples for a single build).
    :param per_build: Sample values of every build.
    :return: Mean, standard error and sample count.
    """
    values = np.concatenate([np.asarray(chunk, dtype=np.float64) for chunk in per_build])
    sample_count = int(values.size)
    if sample_count == 0:
        return math.nan, math.nan, 0
    nonempty = [chunk for chunk in per_build if len(chunk) > 0]
    if len(nonempty) > 1:
        build_means = np.array([np.mean(chunk) for chunk in nonempty])
        standard_error = float(np.std(build_means, ddof=1) / math.sqrt(len(build_means)))
    elif sample_count > 1:
        standard_error = float(np.std(values, ddof=1) / math.sqrt(sample_count))
    else:
        standard_error = 0.0
    return float(np.mean(values)), standard_error, sample_count


def _mean_live_count(builds: Sequence[BuildSample], depth: int) -> float:
    return float(np.mean([build.live_count(depth) for build in builds]))


def _note_unsaturated(
    cfg: ExperimentConfig, builds: Sequence[BuildSample], depth: int, diagnostics: Diagnostics
) -> None:
    target = builder_level_config(cfg).size_at(depth)
    mean_live = _mean_live_count(builds, depth)
    if mean_live < target:
        diagnostics.add(f"Level at depth {depth} holds {mean_live:.2f} codelets on average, capacity is {target}.")


def check_match_count_mean(
    cfg: ExperimentConfig, builds: Sequence[BuildSample], diagnostics: Diagnostics
) -> LemmaReport:
    """
    Mean number of live depth-L codelets matching a fresh sample, against live count times p_L.
    :param cfg: Experiment cell.
    :param builds: Builder runs with their match counts.
    :param diagnostics: Collects non-critical issues.
    :return: Report (EQUAL within slack).
    """
    p_level = level_match_probability(cfg, cfg.level)
    mean_live = _mean_live_count(builds, cfg.level)
    estimate, standard_error, sample_count = mean_and_standard_error([build.counts_level for build in builds])
    _note_unsaturated(cfg, builds, cfg.level, diagnostics)
    return LemmaReport(
        check_name="match_count_mean",
        parameters=cell_parameters(cfg, trials=cfg.trials, builds=cfg.builds),
        estimate=estimate,
        bound=mean_live * p_level,
        sample_count=sample_count,
        standard_error=standard_error,
        comparison=Comparison.EQUAL,
        details={
            "p_level": p_level,
            "mean_live_count": mean_live,
            "level_capacity_expectation": builder_level_config(cfg).size_at(cfg.level) * p_level,
            "conditional_expectation": float(np.mean([build.conditional_mean for build in builds])),
        },
    )


def _growth_factor(cfg: ExperimentConfig, builds: Sequence[BuildSample]) -> float:
    next_depth = cfg.level + cfg.ell
    level_mass = _mean_live_count(builds, cfg.level) * level_match_probability(cfg, cfg.level)
    next_mass = _mean_live_count(builds, next_depth) * level_match_probability(cfg, next_depth)
    if level_mass <= 0.0:
        return math.inf
    return next_mass / level_mass


def check_match_count_second_moment(
    cfg: ExperimentConfig, builds: Sequence[BuildSample], diagnostics: Diagnostics
) -> LemmaReport:
    """
    Second moment of the depth-(L + ell) match count against (E N_L^2 + E N_L) times squared growth of M p.
    :param cfg: Experiment cell.
    :param builds: Builder runs with their match counts.
    :param diagnostics: Collects non-critical issues.
    :return: Report (AT_MOST within slack).
    """
    level_counts = np.concatenate([build.counts_level for build in builds]).astype(np.float64)
    estimate, standard_error, sample_count = mean_and_standard_error(
        [np.square(build.counts_next.astype(np.float64)) for build in builds]
    )
    growth = _growth_factor(cfg, builds)
    level_first = float(np.mean(level_counts))
    level_second = float(np.mean(np.square(level_counts)))
    if math.isinf(growth):
        diagnostics.add(f"No live codelets at depth {cfg.level}, second moment bound is unbounded.")
    _note_unsaturated(cfg, builds, cfg.level + cfg.ell, diagnostics)
    return LemmaReport(
        check_name="match_count_second_moment",
        parameters=cell_parameters(cfg, trials=cfg.trials, builds=cfg.builds),
        estimate=estimate,
        bound=(level_second + level_first) * growth**2 if not math.isinf(growth) else math.inf,
        sample_count=sample_count,
        standard_error=standard_error,
        comparison=Comparison.AT_MOST,
        details={
            "level_first_moment": level_first,
            "level_second_moment": level_second,
            "growth_factor": growth,
            "next_first_moment": float(np.mean(np.concatenate([build.counts_next for build in builds]))),
        },
    )


def check_coverage_probability(
    cfg: ExperimentConfig, builds: Sequence[BuildSample], diagnostics: Diagnostics
) -> LemmaReport:
    """
    Probability that some depth-(L + ell) codelet matches, against P_L / (P_L + 1 / (M_L p_L)).
    :param cfg: Experiment cell.
    :param builds: Builder runs with their match counts.
    :param diagnostics: Collects non-critical issues.
    :return: Report (AT_LEAST within slack).
    """
    level_covered = float(np.mean(np.concatenate([build.counts_level for build in builds]) > 0))
    estimate, standard_error, sample_count = mean_and_standard_error(
        [(build.counts_next > 0).astype(np.float64) for build in builds]
    )
    level_mass = _mean_live_count(builds, cfg.level) * level_match_probability(cfg, cfg.level)
    if level_mass <= 0.0 or level_covered <= 0.0:
        bound = 0.0
        diagnostics.add(f"No coverage at depth {cfg.level}, coverage bound is trivial.")
    else:
        bound = level_covered / (level_covered + 1.0 / level_mass)
    return LemmaReport(
        check_name="coverage_probability",
        parameters=cell_parameters(cfg, trials=cfg.trials, builds=cfg.builds),
        estimate=estimate,
        bound=bound,
        sample_count=sample_count,
        standard_error=standard_error,
        comparison=Comparison.AT_LEAST,
        details={"level_coverage": level_covered, "level_mass": level_mass},
    )


def symmetry_depth(cfg: ExperimentConfig) -> int:
    """
    Deepest level not deeper than L whose type class is small enough to enumerate.
    """
    depth = min(cfg.level, SYMMETRY_MAX_DEPTH) // cfg.ell * cfg.ell
    return max(depth, cfg.ell)


def type_class_values(depth: int, ones: int) -> list[int]:
    """
    All values of given bit width with given number of ones, ascending.
    """
    return sorted(
        sum(1 << (depth - 1 - position) for position in chosen) for chosen in combinations(range(depth), ones)
    )


def check_symmetry(cfg: ExperimentConfig, builds: Sequence[BuildSample], diagnostics: Diagnostics) -> LemmaReport:
    """
    Inclusion frequencies of the optimal type class members in the live set, tested for uniformity by chi-square.
    :param cfg: Experiment cell.
    :param builds: Builder runs.
    :param diagnostics: Collects non-critical issues.
    :return: Report (p-value AT_LEAST significance).
    """
    depth = symmetry_depth(cfg)
    ones = optimal_type_ones(depth, experiment_source(cfg), experiment_distortion(cfg))
    members = type_class_values(depth, ones)
    inclusion_counts = np.zeros(len(members), dtype=np.int64)
    for build in builds:
        live = set(build.live_values.get(depth, []))
        inclusion_counts += np.array([value in live for value in members], dtype=np.int64)

    p_value = math.nan
    if len(members) > 1 and inclusion_counts.sum() > 0:
        p_value = float(chisquare(inclusion_counts).pvalue)
    if math.isnan(p_value):
        diagnostics.add(f"Symmetry at depth {depth} is untestable (counts {inclusion_counts.tolist()}), p-value 1.")
        p_value = 1.0
    return LemmaReport(
        check_name="symmetry",
        parameters=cell_parameters(cfg, builds=cfg.builds, symmetry_depth=depth),
        estimate=p_value,
        bound=SYMMETRY_SIGNIFICANCE,
        sample_count=len(builds),
        standard_error=0.0,
        comparison=Comparison.AT_LEAST,
        slack=0.0,
        details={
            "type_class_size": len(members),
            "frequencies": (inclusion_counts / len(builds)).tolist(),
            "expected_frequency": builder_level_config(cfg).size_at(depth) / len(members),
        },
    )


def frontier_violated(cfg: ExperimentConfig, run_index: int) -> bool:
    """
    Encode one random input and tell whether any frontier outgrew its limit.
    """
    level_cfg = builder_level_config(cfg)
    rng = create_generator(cfg.seed, FRONTIER_STREAMS + run_index)
    x = BitSequence.from_array(bernoulli_bits(rng, cfg.p, cfg.horizon_n))
    stats = encode_idealized(x, experiment_distortion(cfg), experiment_source(cfg), level_cfg).stats
    exceeded = any(size > level_cfg.frontier_limit(depth) for depth, size in stats.max_frontier_sizes.items())
    return exceeded or stats.give_up_count > 0


def check_frontier_growth(cfg: ExperimentConfig, violations: Sequence[bool]) -> LemmaReport:
    """
    Fraction of encodes in which some frontier exceeded (k ell)^4 / delta, against delta.
    :param cfg: Experiment cell.
    :param violations: Outcome of every run of frontier_violated.
    :return: Report (AT_MOST within slack).
    """
    run_count = len(violations)
    return LemmaReport(
        check_name="frontier_growth",
        parameters=cell_parameters(cfg, runs=run_count, horizon_n=cfg.horizon_n),
        estimate=float(np.mean(violations)),
        bound=cfg.delta,
        sample_count=run_count,
        standard_error=math.sqrt(cfg.delta * (1.0 - cfg.delta) / run_count),
        comparison=Comparison.AT_MOST,
        details={"violating_runs": int(np.sum(violations))},
    )


def check_short_phrases(cfg: ExperimentConfig) -> LemmaReport:
    """
    Number of live codelets shorter than (log2 n - 7 ell) / R(D) after encoding the largest n, against
    n / (log2 n)^2. The bound holds for n large enough only, the report is informative at small n.
    :param cfg: Experiment cell.
    :return: Report (AT_MOST, no slack).
    :raises ZeroRateError: If R(D) is zero.
    """
    source = experiment_source(cfg)
    distortion = experiment_distortion(cfg)
    rate = rate_distortion(source, distortion)
    if rate <= 0.0:
        raise ZeroRateError(f"R(D) is zero for p={cfg.p}, D={format_fraction(cfg.distortion)}.")
    length = max(cfg.n_values)
    rng = create_generator(cfg.seed, SHORT_PHRASE_STREAMS)
    x = BitSequence.from_array(bernoulli_bits(rng, cfg.p, length))
    level_cfg = build_level_config(length, distortion, source, cfg.ell, cfg.delta)
    stats = encode_idealized(x, distortion, source, level_cfg).stats

    log_length = math.log2(length) if length > 1 else 0.0
    threshold = (log_length - 7 * cfg.ell) / rate
    short_count = sum(size for depth, size in stats.live_set_sizes.items() if depth < threshold)
    bound = length / log_length**2 if log_length > 0 else math.inf
    logging.debug("Short phrase threshold %.3f at n=%s, %s live codelets below it.", threshold, length, short_count)
    return LemmaReport(
        check_name="short_phrases",
        parameters=cell_parameters(cfg, n=length),
        estimate=float(short_count),
        bound=bound,
        sample_count=1,
        standard_error=0.0,
        comparison=Comparison.AT_MOST,
        slack=0.0,
        details={
            "threshold_depth": threshold,
            "rate_distortion": rate,
            "note": "asymptotic bound, holds for n sufficiently large",
        },
    )
