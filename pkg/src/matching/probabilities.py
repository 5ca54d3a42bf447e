import math

import numpy as np
from scipy.stats import binom

from src.models import BitSequence, DistortionBudget, SourceModel
from src.rd_math.rate_distortion import optimal_reproduction_type


def ball_probability(y: BitSequence, distortion: DistortionBudget, source: SourceModel) -> float:
    """
    Probability that a source string falls into the Hamming ball of radius D * L around y. Flips on the ones of y
    and on the zeros of y are independent binomials, so the ball mass is their convolution summed up to the radius.
    :param y: Center of the ball, length L >= 1.
    :param distortion:
    :param source:
    :return: P(d(X, y) <= D * L).
    """
    length = y.length
    ones = y.count_ones()
    radius = distortion.max_mismatches(length)
    flips_on_ones = binom.pmf(np.arange(ones + 1), ones, 1.0 - source.p)
    flips_on_zeros = binom.pmf(np.arange(length - ones + 1), length - ones, source.p)
    mismatch_distribution = np.convolve(flips_on_ones, flips_on_zeros)
    return float(min(1.0, np.sum(mismatch_distribution[: radius + 1])))


def match_log2_probability(y: BitSequence, distortion: DistortionBudget, source: SourceModel) -> float:
    """
    Base-2 logarithm of the probability that a source string prefix-wise matches y. Dynamic programming over
    the number of mismatches, states above floor(D * l) are dropped after every position. The state vector is
    renormalized every step, the scale is kept in log domain so long codelets do not underflow.
    :param y: Codelet, length L >= 1.
    :param distortion:
    :param source:
    :return: log2 P(X ~ y), -inf if no string matches.
    """
    budgets = distortion.prefix_budgets(y.length)
    states = np.zeros(y.length + 2, dtype=np.float64)
    states[0] = 1.0
    log2_scale = 0.0
    for position, bit in enumerate(y.bits.tolist()):
        mismatch = (1.0 - source.p) if bit else source.p
        shifted = np.empty_like(states)
        shifted[0] = 0.0
        shifted[1:] = states[:-1]
        states = states * (1.0 - mismatch) + shifted * mismatch
        states[budgets[position] + 1:] = 0.0
        total = states.sum()
        if total <= 0.0:
            return -math.inf
        states /= total
        log2_scale += math.log2(total)
    return log2_scale


def match_probability(y: BitSequence, distortion: DistortionBudget, source: SourceModel) -> float:
    """
    Probability p_L = P(X ~ y) that a source string of the same length prefix-wise matches y.
    :param y: Codelet, length L >= 1.
    :param distortion:
    :param source:
    :return: Match probability.
    """
    return 2.0 ** match_log2_probability(y, distortion, source)


def cycle_lemma_lower_bound(y: BitSequence, distortion: DistortionBudget, source: SourceModel) -> float:
    """
    Lower bound (1 - D/2)^2 / L * P(B(y, D)) on the prefix-wise match probability.
    :param y: Codelet, length L >= 1.
    :param distortion:
    :param source:
    :return: Bound value.
    """
    return (1.0 - distortion.as_float / 2.0) ** 2 / y.length * ball_probability(y, distortion, source)


def optimal_type_ones(length: int, source: SourceModel, distortion: DistortionBudget) -> int:
    """
    Number of ones of a length-L sequence with the optimal reproduction type, rounded to nearest.
    """
    return min(length, int(math.floor(optimal_reproduction_type(source, distortion) * length + 0.5)))


def optimal_type_sequence(length: int, source: SourceModel, distortion: DistortionBudget) -> BitSequence:
    """
    Canonical sequence of the optimal reproduction type, ones spread evenly (position i, counted from 1, holds one
    iff floor(i * k / L) > floor((i - 1) * k / L)).
    :param length: L >= 1.
    :param source:
    :param distortion:
    :return: Canonical sequence.
    """
    ones = optimal_type_ones(length, source, distortion)
    positions = np.arange(1, length + 1, dtype=np.int64)
    return BitSequence.from_array((positions * ones) // length > ((positions - 1) * ones) // length)
