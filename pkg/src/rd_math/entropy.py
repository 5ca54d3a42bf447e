import numpy as np
from scipy.special import entr, rel_entr

from src.models import BinaryJoint

LN_2 = np.log(2.0)


def binary_entropy(t: float) -> float:
    """
    Entropy of a Bernoulli(t) bit in bits, with 0 log 0 = 0.
    :param t: Probability of one.
    :return: h(t).
    """
    return float((entr(t) + entr(1.0 - t)) / LN_2)


def mutual_information(joint: BinaryJoint) -> float:
    """
    Mutual information of the 2x2 joint in bits.
    :param joint:
    :return: I(X;Y).
    """
    return float(mutual_information_grid(np.asarray(joint.a), joint.p, joint.q))


def mutual_information_grid(a_values: np.ndarray, p: float, q: float) -> np.ndarray:
    """
    Mutual information for many values of P(X=1, Y=1) with fixed marginals at once.
    :param a_values: Array of joint probabilities a.
    :param p: Marginal P(X=1).
    :param q: Marginal P(Y=1).
    :return: Array of I(X;Y) in bits, same shape as a_values.
    """
    a_values = np.asarray(a_values, dtype=np.float64)
    cells = np.clip(np.stack([a_values, p - a_values, q - a_values, 1.0 - p - q + a_values]), 0.0, None)
    independent = np.array([p * q, p * (1.0 - q), (1.0 - p) * q, (1.0 - p) * (1.0 - q)])
    independent = independent.reshape((4,) + (1,) * a_values.ndim)
    cells = np.where(independent > 0.0, cells, 0.0)
    return np.sum(rel_entr(cells, independent), axis=0) / LN_2
