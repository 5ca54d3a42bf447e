import numpy as np

from src.config import MAX_SEED

# stream id families, one per kind of random work so that no two checks share a key
BUILD_STREAMS = 1 << 32
FRONTIER_STREAMS = 2 << 32
BASELINE_STREAMS = 3 << 32
SWEEP_STREAMS = 4 << 32
PAIR_STREAMS = 5 << 32
SHORT_PHRASE_STREAMS = 6 << 32
SAMPLE_STREAMS = 7 << 32


def create_generator(seed: int, stream: int) -> np.random.Generator:
    """
    Counter-based generator keyed by (seed, stream). Same key gives the same numbers on every platform and in
    every worker process.
    :param seed: Experiment seed, unsigned 64-bit.
    :param stream: Stream id (trial index within a stream family).
    :return: Numpy generator backed by Philox.
    :raises ValueError: If seed or stream is out of range.
    """
    if not 0 <= seed <= MAX_SEED:
        raise ValueError(f"Seed needs to be an unsigned 64-bit integer, got {seed}.")
    if not 0 <= stream <= MAX_SEED:
        raise ValueError(f"Stream id needs to be an unsigned 64-bit integer, got {stream}.")
    return np.random.Generator(np.random.Philox(key=(stream << 64) | seed))


def bernoulli_bits(rng: np.random.Generator, p: float, shape) -> np.ndarray:
    """
    I.i.d. Bernoulli(p) symbols as uint8 array.
    """
    return (rng.random(shape) < p).astype(np.uint8)
