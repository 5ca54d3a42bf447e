import itertools
from dataclasses import dataclass, field, asdict
from fractions import Fraction
from typing import Optional, Any, Iterator

import numpy as np
import pytest

from src.config import ExperimentConfig
from src.models import Bitstream, BitSequence


@dataclass(slots=True)
class Difference:
    """
    One difference (in one field) between two dataclasses.
    """

    item_name: str
    expected_value: Optional[Any]
    actual_value: Optional[Any]


@dataclass(slots=True)
class Differences:
    """
    Class holding information about differences between two dataclasses.
    """

    items: list[Difference] = field(default_factory=list)

    @property
    def count(self):
        return len(self.items)

    def get_difference_description(self) -> str:
        return " | ".join(
            [f"{diff.item_name}: expected {diff.expected_value}, got {diff.actual_value}" for diff in self.items]
        )


def compare_dataclasses(
    actual: dataclass,
    expected: dataclass,
    ignored_fields: Optional[list[str]] = None,
    float_precision: float = 1e-3,
) -> Differences:
    """
    Compares all fields of given dataclasses. Takes into account imprecise nature of floats.
    :param actual: Dataclass instance produced by the test.
    :param expected: Expected value of dataclass instance.
    :param ignored_fields: List of field names to ignore.
    :param float_precision: Maximum difference of floats that will still be considered as the same value.
    :return: Found differences object.
    """
    differences = Differences()
    ignored_fields = ignored_fields if ignored_fields else []

    for field_name, actual_value in asdict(actual).items():
        expected_value = getattr(expected, field_name, None)
        if field_name in ignored_fields:
            continue
        if isinstance(actual_value, float) or isinstance(expected_value, float):
            if expected_value != pytest.approx(actual_value, rel=float_precision):
                differences.items.append(Difference(field_name, expected_value, actual_value))
        else:
            if actual_value != expected_value:
                differences.items.append(Difference(field_name, expected_value, actual_value))

    return differences


def all_strings(length: int) -> Iterator[tuple[int, ...]]:
    """
    Every binary string of given length, lexicographic order.
    """
    return itertools.product((0, 1), repeat=length)


def string_probability(bits: tuple[int, ...], p: float) -> float:
    ones = sum(bits)
    return p**ones * (1.0 - p) ** (len(bits) - ones)


def within(mismatches: int, length: int, distortion: Fraction) -> bool:
    return mismatches <= distortion * length


def naive_full_match(x: tuple[int, ...], y: tuple[int, ...], distortion: Fraction) -> bool:
    return within(sum(a != b for a, b in zip(x, y)), len(x), distortion)


def naive_prefixwise_match(x: tuple[int, ...], y: tuple[int, ...], distortion: Fraction) -> bool:
    mismatches = 0
    for index, (a, b) in enumerate(zip(x, y), start=1):
        mismatches += a != b
        if not within(mismatches, index, distortion):
            return False
    return True


def enumerated_ball_probability(y: tuple[int, ...], distortion: Fraction, p: float) -> float:
    """
    Ball mass by summing over all 2^L strings.
    """
    return sum(string_probability(x, p) for x in all_strings(len(y)) if naive_full_match(x, y, distortion))


def enumerated_match_probability(y: tuple[int, ...], distortion: Fraction, p: float) -> float:
    """
    Prefix-wise match probability by summing over all 2^L strings.
    """
    return sum(
        string_probability(x, p) for x in all_strings(len(y)) if naive_prefixwise_match(x, y, distortion)
    )


def naive_lz78_phrases(bits: list[int]) -> list[tuple[int, ...]]:
    """
    Textbook LZ78 parse into phrases, the last one may repeat an earlier phrase.
    """
    seen = {()}
    phrases = []
    current: tuple[int, ...] = ()
    for bit in bits:
        current = current + (bit,)
        if current not in seen:
            seen.add(current)
            phrases.append(current)
            current = ()
    if current:
        phrases.append(current)
    return phrases


def random_sequence(rng: np.random.Generator, length: int, p: float = 0.5) -> BitSequence:
    return BitSequence.from_array((rng.random(length) < p).astype(np.uint8))


def bitstream_to_string(bitstream: Bitstream) -> str:
    """
    Payload bits as text, padding left out.
    """
    bits = np.unpackbits(np.frombuffer(bitstream.data, dtype=np.uint8), bitorder="big")[: bitstream.bit_length]
    return "".join(str(bit) for bit in bits.tolist())


def small_experiment(**changes: Any) -> ExperimentConfig:
    """
    Experiment cell small enough for unit tests, values overridden by changes.
    """
    values = {
        "p": 0.5,
        "distortion": Fraction(1, 4),
        "ell": 2,
        "delta": 0.01,
        "n_values": [256, 1024],
        "trials": 600,
        "builds": 3,
        "horizon_n": 512,
        "level": 4,
        "max_exhaustive_length": 10,
        "pair_count": 5,
        "codebook_size": None,
        "frontier_runs": 4,
        "sweep_seeds": 2,
        "seed": 7,
        "output_path": "lemma_reports.csv",
        "checks": ["all"],
    }
    values.update(changes)
    return ExperimentConfig(**values)
