from dataclasses import dataclass
from fractions import Fraction
from typing import Union

import numpy as np

from src.utils import to_fraction

JOINT_TOLERANCE = 1e-12


@dataclass(slots=True, frozen=True)
class SourceModel:
    """
    Memoryless binary source emitting ones with probability p.
    """

    p: float

    def __post_init__(self):
        if not 0.0 <= self.p <= 1.0:
            raise ValueError(f"Source probability needs to be from interval [0, 1], got {self.p}.")


@dataclass(slots=True, frozen=True)
class DistortionBudget:
    """
    Target fraction of flipped bits, held as exact fraction so that distortion checks can be done in integers
    (mismatches * denominator <= numerator * length).
    """

    value: Fraction

    def __post_init__(self):
        if not 0 <= self.value <= Fraction(1, 2):
            raise ValueError(f"Distortion needs to be from interval [0, 1/2], got {self.value}.")

    @classmethod
    def of(cls, value: Union[Fraction, float, int, str]) -> "DistortionBudget":
        """
        Create budget from fraction, decimal number or string like "11/100".
        :param value:
        :return: Distortion budget.
        :raises ValueError: If value is not a number from [0, 1/2].
        """
        fraction = to_fraction(value)
        if fraction is None:
            raise ValueError(f"Distortion '{value}' is not a valid number.")
        return cls(fraction)

    @property
    def numerator(self) -> int:
        return self.value.numerator

    @property
    def denominator(self) -> int:
        return self.value.denominator

    @property
    def as_float(self) -> float:
        return float(self.value)

    def allows(self, mismatches: int, length: int) -> bool:
        """
        Check mismatches / length <= D exactly.
        :param mismatches: Number of differing positions.
        :param length: Number of compared positions.
        :return: True if within budget.
        """
        return mismatches * self.denominator <= self.numerator * length

    def max_mismatches(self, length: int) -> int:
        """
        Largest mismatch count allowed over given length, floor(D * length).
        """
        return (self.numerator * length) // self.denominator

    def prefix_budgets(self, length: int) -> np.ndarray:
        """
        Allowed mismatches for every prefix length 1..length.
        :param length:
        :return: Array with floor(D * l) at index l - 1.
        """
        lengths = np.arange(1, length + 1, dtype=np.int64)
        return (self.numerator * lengths) // self.denominator


@dataclass(slots=True, frozen=True)
class TypeFraction:
    """
    Empirical type of a sequence, count of ones over length.
    """

    ones: int
    length: int

    def __post_init__(self):
        if self.length < 1 or not 0 <= self.ones <= self.length:
            raise ValueError(f"Invalid type {self.ones}/{self.length}.")

    @property
    def value(self) -> float:
        return self.ones / self.length


@dataclass(slots=True, frozen=True)
class BinaryJoint:
    """
    Joint distribution of bit pair (X, Y) given by a = P(X=1, Y=1) and marginals p = P(X=1), q = P(Y=1).
    """

    a: float
    p: float
    q: float

    def __post_init__(self):
        lower = max(0.0, self.p + self.q - 1.0)
        upper = min(self.p, self.q)
        if not lower - JOINT_TOLERANCE <= self.a <= upper + JOINT_TOLERANCE:
            raise ValueError(f"Joint probability {self.a} outside of bounds [{lower}, {upper}].")

    def cells(self) -> np.ndarray:
        """
        Cell probabilities in order (X=1,Y=1), (X=1,Y=0), (X=0,Y=1), (X=0,Y=0), clipped to be nonnegative.
        """
        cells = np.array([self.a, self.p - self.a, self.q - self.a, 1.0 - self.p - self.q + self.a])
        return np.clip(cells, 0.0, None)

    @property
    def distortion(self) -> float:
        """
        Expected Hamming distortion P(X != Y).
        """
        return self.p + self.q - 2.0 * self.a
