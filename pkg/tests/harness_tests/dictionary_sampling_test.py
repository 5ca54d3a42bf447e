from fractions import Fraction

import numpy as np
import pytest

from src.harness.dictionary_sampling import (
    build_and_sample,
    builder_level_config,
    prefixwise_match_counts,
    values_to_matrix,
)
from src.matching.distance import matches_prefixwise
from src.models import BitSequence, DistortionBudget
from tests.utils import small_experiment


def test_values_are_spelled_most_significant_first():
    matrix = values_to_matrix([0b0110, 0b1001, 0], 4)

    assert matrix.dtype == np.uint8
    assert matrix.tolist() == [[0, 1, 1, 0], [1, 0, 0, 1], [0, 0, 0, 0]]
    assert values_to_matrix([], 3).shape == (0, 3)


@pytest.mark.parametrize("distortion", ["0", "1/4", "1/3", "1/2"])
def test_match_counts_agree_with_relation(distortion):
    # arrange
    budget = DistortionBudget.of(distortion)
    rng = np.random.default_rng(51)
    samples = rng.integers(0, 2, size=(40, 8), dtype=np.uint8)
    codelets = rng.integers(0, 2, size=(15, 6), dtype=np.uint8)

    # act
    counts = prefixwise_match_counts(samples, codelets, budget)

    # assert
    expected = [
        sum(
            matches_prefixwise(BitSequence.from_array(sample[:6]), BitSequence.from_array(codelet), budget)
            for codelet in codelets
        )
        for sample in samples
    ]
    assert counts.tolist() == expected


def test_empty_codebook_has_no_matches():
    samples = np.ones((5, 4), dtype=np.uint8)

    counts = prefixwise_match_counts(samples, np.zeros((0, 4), dtype=np.uint8), DistortionBudget.of("1/2"))

    assert counts.tolist() == [0] * 5


def test_builder_config_follows_cell():
    cfg = small_experiment(ell=3, level=6, horizon_n=999)

    level_cfg = builder_level_config(cfg)

    assert (level_cfg.ell, level_cfg.horizon_n, level_cfg.delta) == (3, 999, 0.01)
    assert level_cfg.distortion.value == Fraction(1, 4)


def test_build_sample_shapes():
    # arrange
    cfg = small_experiment()

    # act
    sample = build_and_sample(cfg, 0, 150)

    # assert
    assert sample.counts_level.shape == (150,)
    assert sample.counts_next.shape == (150,)
    assert all(depth % cfg.ell == 0 and depth <= cfg.level + cfg.ell for depth in sample.live_values)
    assert sample.live_count(cfg.level) <= builder_level_config(cfg).size_at(cfg.level)
    assert np.all(sample.counts_level <= sample.live_count(cfg.level))
    assert sample.conditional_mean >= 0.0
    assert sample.stats.codelet_count + sample.stats.escape_count > 0


def test_build_is_reproducible():
    cfg = small_experiment()

    first = build_and_sample(cfg, 2, 100)
    second = build_and_sample(cfg, 2, 100)
    other = build_and_sample(cfg, 3, 100)

    assert first.live_values == second.live_values
    assert np.array_equal(first.counts_level, second.counts_level)
    assert first.live_values != other.live_values or not np.array_equal(first.counts_level, other.counts_level)


def test_sample_matches_follow_conditional_expectation():
    cfg = small_experiment(horizon_n=1024)

    sample = build_and_sample(cfg, 0, 4000)

    assert float(np.mean(sample.counts_level)) == pytest.approx(sample.conditional_mean, rel=0.15, abs=0.05)
