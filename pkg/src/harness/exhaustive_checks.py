import math
from typing import Optional, Sequence

import numpy as np

from src.config import ExperimentConfig
from src.dictionary.level_config import level_size
from src.harness.dictionary_sampling import (
    experiment_distortion,
    experiment_source,
    prefixwise_match_counts,
    values_to_matrix,
)
from src.harness.lemma_checks import cell_parameters, type_class_values
from src.harness.rng import BASELINE_STREAMS, PAIR_STREAMS, bernoulli_bits, create_generator
from src.matching.distance import bit_count64
from src.matching.probabilities import (
    cycle_lemma_lower_bound,
    match_probability,
    optimal_type_ones,
    optimal_type_sequence,
)
from src.models import BitSequence, Comparison, Diagnostics, LemmaReport

MAX_ENUMERATED_WIDTH = 16
_MAX_PAIR_DRAWS = 64


def check_cycle_lemma(cfg: ExperimentConfig) -> LemmaReport:
    """
    Exact match probability of the canonical optimal-type codelet against (1 - D/2)^2 / L * P(B(y, D)), for every
    L up to the configured maximum. No sampling.
    :param cfg: Experiment cell.
    :return: Report with the smallest ratio (AT_LEAST 1, no slack).
    """
    source = experiment_source(cfg)
    distortion = experiment_distortion(cfg)
    ratios = {}
    for length in range(1, cfg.max_exhaustive_length + 1):
        y = optimal_type_sequence(length, source, distortion)
        lower_bound = cycle_lemma_lower_bound(y, distortion, source)
        probability = match_probability(y, distortion, source)
        ratios[length] = probability / lower_bound if lower_bound > 0.0 else math.inf
    worst_length = min(ratios, key=ratios.get)
    return LemmaReport(
        check_name="cycle_lemma",
        parameters=cell_parameters(cfg, max_length=cfg.max_exhaustive_length),
        estimate=ratios[worst_length],
        bound=1.0,
        sample_count=len(ratios),
        standard_error=0.0,
        comparison=Comparison.AT_LEAST,
        slack=0.0,
        details={"worst_length": worst_length, "ratios": ratios},
    )


def _enumerated_source(width: int, p: float) -> tuple[np.ndarray, np.ndarray]:
    """
    All strings of given width as integers (first symbol most significant) with their source probabilities.
    """
    strings = np.arange(1 << width, dtype=np.uint64)
    ones = bit_count64(strings).astype(np.int64)
    probabilities = np.power(p, ones) * np.power(1.0 - p, width - ones)
    return strings, probabilities


def _in_ball(strings: np.ndarray, center: int, radius: int) -> np.ndarray:
    return bit_count64(np.bitwise_xor(strings, np.uint64(center))) <= np.uint64(radius)


def _type_class_draw(rng: np.random.Generator, canonical: np.ndarray) -> int:
    weights = 1 << np.arange(canonical.size - 1, -1, -1, dtype=np.int64)
    return int(np.dot(rng.permutation(canonical), weights))


def random_type_pair(
    rng: np.random.Generator, prefix_canonical: np.ndarray, block_canonical: np.ndarray
) -> Optional[tuple[int, int]]:
    """
    Two distinct strings y_L y_ell, the depth-L part drawn from the type class of prefix_canonical and the ell-bit
    block from the type class of block_canonical.
    """
    ell = block_canonical.size
    for _ in range(_MAX_PAIR_DRAWS):
        first, second = (
            (_type_class_draw(rng, prefix_canonical) << ell) | _type_class_draw(rng, block_canonical) for _ in range(2)
        )
        if first != second:
            return first, second
    return None


def ball_intersection_depth(cfg: ExperimentConfig) -> int:
    """
    Deepest multiple of ell not deeper than L with L + ell small enough to enumerate.
    """
    depth = min(cfg.level, MAX_ENUMERATED_WIDTH - cfg.ell) // cfg.ell * cfg.ell
    return max(depth, cfg.ell)


def check_ball_intersection(cfg: ExperimentConfig, diagnostics: Diagnostics) -> LemmaReport:
    """
    For random distinct pairs y_L y_ell, each block drawn from its own optimal-type class, exact mass of the
    intersection of their full Hamming balls against the intersection of the depth-L balls times
    (p_{L+ell} / p_L)^2, p being prefix-wise match probabilities of the canonical sequences.
    :param cfg: Experiment cell.
    :param diagnostics: Collects non-critical issues.
    :return: Report with the largest ratio (AT_MOST 1, no slack).
    :raises ValueError: If 2 ell is too wide to enumerate.
    """
    if 2 * cfg.ell > MAX_ENUMERATED_WIDTH:
        raise ValueError(f"Ball intersection enumerates 2^(L + ell) strings, ell {cfg.ell} is too wide.")
    source = experiment_source(cfg)
    distortion = experiment_distortion(cfg)
    depth = ball_intersection_depth(cfg)
    width = depth + cfg.ell
    if depth != cfg.level:
        diagnostics.add(f"Ball intersection evaluated at depth {depth} instead of {cfg.level}.")

    strings, probabilities = _enumerated_source(width, cfg.p)
    prefixes = strings >> np.uint64(cfg.ell)
    radius = distortion.max_mismatches(width)
    prefix_radius = distortion.max_mismatches(depth)
    prefix_canonical = optimal_type_sequence(depth, source, distortion)
    block_canonical = optimal_type_sequence(cfg.ell, source, distortion)
    full_canonical = BitSequence.from_array(np.concatenate([prefix_canonical.bits, block_canonical.bits]))
    growth = (
        match_probability(full_canonical, distortion, source) / match_probability(prefix_canonical, distortion, source)
    ) ** 2
    prefix_bits = prefix_canonical.bits.astype(np.int64)
    block_bits = block_canonical.bits.astype(np.int64)

    ratios = []
    for pair_index in range(cfg.pair_count):
        rng = create_generator(cfg.seed, PAIR_STREAMS + pair_index)
        pair = random_type_pair(rng, prefix_bits, block_bits)
        if pair is None:
            diagnostics.add(f"Type classes at depth {depth} and width {cfg.ell} are singletons, pair is identical.")
            value = _type_class_draw(rng, full_canonical.bits.astype(np.int64))
            pair = (value, value)
        first, second = pair
        joint = float(probabilities[_in_ball(strings, first, radius) & _in_ball(strings, second, radius)].sum())
        prefix_mask = _in_ball(prefixes, first >> cfg.ell, prefix_radius)
        prefix_mask &= _in_ball(prefixes, second >> cfg.ell, prefix_radius)
        prefix_joint = float(probabilities[prefix_mask].sum())
        bound = prefix_joint * growth
        if bound > 0.0:
            ratios.append(joint / bound)
        else:
            ratios.append(0.0 if joint <= 0.0 else math.inf)
        if pair[0] == pair[1]:
            break

    return LemmaReport(
        check_name="ball_intersection",
        parameters=cell_parameters(cfg, pairs=len(ratios), depth=depth),
        estimate=float(max(ratios)),
        bound=1.0,
        sample_count=len(ratios),
        standard_error=0.0,
        comparison=Comparison.AT_MOST,
        slack=0.0,
        details={"failing_pairs": int(sum(ratio > 1.0 for ratio in ratios)), "growth_factor": growth},
    )


def baseline_depth(cfg: ExperimentConfig) -> int:
    return min(cfg.level, MAX_ENUMERATED_WIDTH)


def baseline_codebook_size(cfg: ExperimentConfig, class_size: int) -> int:
    """
    Requested codebook size, or min(M_L, N_L).
    """
    depth = baseline_depth(cfg)
    if cfg.codebook_size is not None:
        return min(cfg.codebook_size, class_size)
    return min(level_size(depth, experiment_source(cfg), experiment_distortion(cfg)), class_size)


def random_codebook_trials(cfg: ExperimentConfig, first_trial: int, trial_count: int) -> tuple[np.ndarray, np.ndarray]:
    """
    Build random codebooks: draw uniform X, pick a uniformly random optimal-type codeword whose ball contains X, until
    the codebook has M distinct codewords. Every trial then tests one random distinct pair of the type class and
    counts prefix-wise matches of a fresh source sample.
    :param cfg: Experiment cell.
    :param first_trial: Index of the first trial (selects the random streams).
    :param trial_count:
    :return: Pair inclusion indicators and squared match counts, one per trial.
    """
    distortion = experiment_distortion(cfg)
    depth = baseline_depth(cfg)
    ones = optimal_type_ones(depth, experiment_source(cfg), distortion)
    members = np.array(type_class_values(depth, ones), dtype=np.uint64)
    size = baseline_codebook_size(cfg, members.size)
    radius = distortion.max_mismatches(depth)

    pair_hits = np.zeros(trial_count, dtype=np.float64)
    squared_counts = np.zeros(trial_count, dtype=np.float64)
    for offset in range(trial_count):
        rng = create_generator(cfg.seed, BASELINE_STREAMS + first_trial + offset)
        chosen: set[int] = set()
        while len(chosen) < size:
            x = int(rng.integers(0, 1 << depth))
            covering = members[_in_ball(members, x, radius)]
            if covering.size:
                chosen.add(int(covering[rng.integers(0, covering.size)]))
        if members.size > 1:
            first, second = rng.choice(members.size, size=2, replace=False)
            pair_hits[offset] = float(int(members[first]) in chosen and int(members[second]) in chosen)
        sample = bernoulli_bits(rng, cfg.p, (1, depth))
        codebook = values_to_matrix(sorted(chosen), depth)
        squared_counts[offset] = float(prefixwise_match_counts(sample, codebook, distortion)[0]) ** 2
    return pair_hits, squared_counts


def check_random_codebook_baseline(
    cfg: ExperimentConfig, trial_results: Sequence[tuple[np.ndarray, np.ndarray]], diagnostics: Diagnostics
) -> LemmaReport:
    """
    Pair inclusion frequency of the random codebook construction against M (M - 1) / (N (N - 1)).
    :param cfg: Experiment cell.
    :param trial_results: Chunks returned by random_codebook_trials, in trial order.
    :param diagnostics: Collects non-critical issues.
    :return: Report (EQUAL within slack).
    """
    depth = baseline_depth(cfg)
    class_size = math.comb(depth, optimal_type_ones(depth, experiment_source(cfg), experiment_distortion(cfg)))
    size = baseline_codebook_size(cfg, class_size)
    if depth != cfg.level:
        diagnostics.add(f"Random codebook baseline evaluated at depth {depth} instead of {cfg.level}.")
    pair_hits = np.concatenate([hits for hits, _ in trial_results])
    squared_counts = np.concatenate([squares for _, squares in trial_results])
    if class_size > 1:
        expected = size * (size - 1) / (class_size * (class_size - 1))
    else:
        expected = 0.0
        diagnostics.add(f"Type class at depth {depth} has a single member, no distinct pair exists.")
    return LemmaReport(
        check_name="random_codebook_baseline",
        parameters=cell_parameters(cfg, trials=int(pair_hits.size), depth=depth, codebook_size=size),
        estimate=float(np.mean(pair_hits)),
        bound=expected,
        sample_count=int(pair_hits.size),
        standard_error=math.sqrt(expected * (1.0 - expected) / pair_hits.size),
        comparison=Comparison.EQUAL,
        details={"type_class_size": class_size, "second_moment": float(np.mean(squared_counts))},
    )
