import numpy as np
import pytest
from scipy.stats import binomtest

from src.config import MAX_SEED
from src.harness.rng import BUILD_STREAMS, SWEEP_STREAMS, bernoulli_bits, create_generator


def test_same_key_gives_same_numbers():
    first = create_generator(42, BUILD_STREAMS + 3).random(100)
    second = create_generator(42, BUILD_STREAMS + 3).random(100)

    assert np.array_equal(first, second)


@pytest.mark.parametrize("other_key", [(43, BUILD_STREAMS + 3), (42, BUILD_STREAMS + 4), (42, SWEEP_STREAMS + 3)])
def test_different_key_gives_different_numbers(other_key):
    first = create_generator(42, BUILD_STREAMS + 3).random(100)
    second = create_generator(*other_key).random(100)

    assert not np.array_equal(first, second)


@pytest.mark.parametrize("seed, stream", [(-1, 0), (MAX_SEED + 1, 0), (0, -1), (0, MAX_SEED + 1)])
def test_key_out_of_range_is_rejected(seed, stream):
    with pytest.raises(ValueError):
        create_generator(seed, stream)


def test_largest_key_is_accepted():
    assert 0.0 <= create_generator(MAX_SEED, MAX_SEED).random() < 1.0


@pytest.mark.parametrize("p", [0.1, 0.5, 0.77])
def test_bernoulli_bits_have_requested_frequency(p):
    bits = bernoulli_bits(create_generator(1, 0), p, 20_000)

    assert bits.dtype == np.uint8
    assert set(np.unique(bits).tolist()) <= {0, 1}
    assert binomtest(int(bits.sum()), bits.size, p).pvalue > 1e-4


def test_degenerate_bernoulli_bits():
    rng = create_generator(1, 1)

    assert not bernoulli_bits(rng, 0.0, (10, 5)).any()
    assert bernoulli_bits(rng, 1.0, (10, 5)).all()
    assert bernoulli_bits(rng, 0.5, (10, 5)).shape == (10, 5)
