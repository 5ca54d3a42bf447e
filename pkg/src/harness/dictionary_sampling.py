import logging
from dataclasses import dataclass, field

import numpy as np

from src.codec.idealized_encoder import build_level_config, encode_idealized
from src.config import ExperimentConfig
from src.dictionary.level_config import LevelConfig
from src.harness.rng import BUILD_STREAMS, SAMPLE_STREAMS, bernoulli_bits, create_generator
from src.matching.probabilities import match_probability
from src.models import BitSequence, DistortionBudget, EncodeStats, SourceModel

# bounds the T x M x L mismatch tensor of one vectorized batch
_MAX_BATCH_CELLS = 1 << 24


@dataclass(slots=True)
class BuildSample:
    """
    One builder run: dictionary built by the idealized encoder on a random input, and match counts of fresh
    source samples against its live codelets.
    :param live_values: Live codelet values per depth (first symbol most significant).
    :param counts_level: Number of live depth-L codelets matching each sample.
    :param counts_next: Number of live depth-(L + ell) codelets matching each extended sample.
    :param conditional_mean: Sum of exact match probabilities of the depth-L live codelets.
    :param stats: Encoder instrumentation of the build.
    """

    live_values: dict[int, list[int]]
    counts_level: np.ndarray
    counts_next: np.ndarray
    conditional_mean: float
    stats: EncodeStats = field(default_factory=EncodeStats)

    def live_count(self, depth: int) -> int:
        return len(self.live_values.get(depth, []))


def experiment_source(cfg: ExperimentConfig) -> SourceModel:
    return SourceModel(cfg.p)


def experiment_distortion(cfg: ExperimentConfig) -> DistortionBudget:
    return DistortionBudget(cfg.distortion)


def builder_level_config(cfg: ExperimentConfig) -> LevelConfig:
    """
    Level configuration of the builder runs of given cell.
    """
    return build_level_config(cfg.horizon_n, experiment_distortion(cfg), experiment_source(cfg), cfg.ell, cfg.delta)


def values_to_matrix(values: list[int], depth: int) -> np.ndarray:
    """
    Spell codelet values into rows of a uint8 matrix, first symbol most significant.
    """
    shifts = np.arange(depth - 1, -1, -1, dtype=np.int64)
    return ((np.asarray(values, dtype=np.int64)[:, None] >> shifts) & 1).astype(np.uint8)


def prefixwise_match_counts(samples: np.ndarray, codelets: np.ndarray, distortion: DistortionBudget) -> np.ndarray:
    """
    For every sample row count codelet rows it prefix-wise matches. Samples longer than codelets are cut.
    :param samples: T x L' uint8 matrix, L' >= L.
    :param codelets: M x L uint8 matrix.
    :param distortion:
    :return: T match counts.
    """
    sample_count = samples.shape[0]
    if codelets.shape[0] == 0 or sample_count == 0:
        return np.zeros(sample_count, dtype=np.int64)
    depth = codelets.shape[1]
    budgets = distortion.prefix_budgets(depth)
    samples = samples[:, :depth]
    batch = max(1, _MAX_BATCH_CELLS // (codelets.shape[0] * depth))
    counts = np.empty(sample_count, dtype=np.int64)
    for start in range(0, sample_count, batch):
        mismatches = np.cumsum(samples[start:start + batch, None, :] != codelets[None, :, :], axis=2)
        counts[start:start + batch] = np.all(mismatches <= budgets, axis=2).sum(axis=1)
    return counts


def build_and_sample(cfg: ExperimentConfig, build_index: int, sample_count: int) -> BuildSample:
    """
    Build one dictionary and count matches of fresh samples against its live codelets at depths L and L + ell.
    :param cfg: Experiment cell.
    :param build_index: Index of the builder run, selects the random streams.
    :param sample_count: Number of fresh samples X.
    :return: Build sample.
    """
    source = experiment_source(cfg)
    distortion = experiment_distortion(cfg)
    build_rng = create_generator(cfg.seed, BUILD_STREAMS + build_index)
    x = BitSequence.from_array(bernoulli_bits(build_rng, cfg.p, cfg.horizon_n))
    result = encode_idealized(x, distortion, source, builder_level_config(cfg))

    live_values = {
        depth: [node.value for node in members]
        for depth, members in sorted(result.tree.live_sets.items())
        if depth <= cfg.level + cfg.ell
    }
    next_depth = cfg.level + cfg.ell
    sample_rng = create_generator(cfg.seed, SAMPLE_STREAMS + build_index)
    samples = bernoulli_bits(sample_rng, cfg.p, (sample_count, next_depth))
    level_codelets = values_to_matrix(live_values.get(cfg.level, []), cfg.level)
    next_codelets = values_to_matrix(live_values.get(next_depth, []), next_depth)
    conditional_mean = sum(
        match_probability(BitSequence.from_array(row), distortion, source) for row in level_codelets
    )
    logging.debug(
        "Build %s: %s live codelets at depth %s, %s at depth %s.",
        build_index,
        len(level_codelets),
        cfg.level,
        len(next_codelets),
        next_depth,
    )
    return BuildSample(
        live_values=live_values,
        counts_level=prefixwise_match_counts(samples, level_codelets, distortion),
        counts_next=prefixwise_match_counts(samples, next_codelets, distortion),
        conditional_mean=float(conditional_mean),
        stats=result.stats,
    )
