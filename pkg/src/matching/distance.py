import numpy as np

from src.exception import EmptySequenceError, LengthMismatchError
from src.models import BitSequence, DistortionBudget, TypeFraction

_M1 = np.uint64(0x5555555555555555)
_M2 = np.uint64(0x3333333333333333)
_M4 = np.uint64(0x0F0F0F0F0F0F0F0F)
_H01 = np.uint64(0x0101010101010101)
_BYTE_SHIFT = np.uint64(56)


def bit_count64(words: np.ndarray) -> np.ndarray:
    """
    Population count of every 64-bit word (SWAR, no lookup tables).
    :param words: Array of np.uint64.
    :return: Array of np.uint64 counts.
    """
    words = words - ((words >> np.uint64(1)) & _M1)
    words = (words & _M2) + ((words >> np.uint64(2)) & _M2)
    words = (words + (words >> np.uint64(4))) & _M4
    return (words * _H01) >> _BYTE_SHIFT


def _check_same_length(x: BitSequence, y: BitSequence) -> None:
    if x.length != y.length:
        raise LengthMismatchError(f"Cannot compare sequences of lengths {x.length} and {y.length}.")


def hamming_distance(x: BitSequence, y: BitSequence) -> int:
    """
    Number of positions where x and y differ.
    :raises LengthMismatchError:
    """
    _check_same_length(x, y)
    if x.length == 0:
        return 0
    return int(np.sum(bit_count64(np.bitwise_xor(x.words, y.words))))


def matches_full(x: BitSequence, y: BitSequence, distortion: DistortionBudget) -> bool:
    """
    Whole-phrase match: d(x, y) <= D * length.
    :raises LengthMismatchError:
    :raises EmptySequenceError:
    """
    _check_same_length(x, y)
    if x.length == 0:
        raise EmptySequenceError("Matching needs sequences of at least one symbol.")
    return distortion.allows(hamming_distance(x, y), x.length)


def matches_prefixwise(x: BitSequence, y: BitSequence, distortion: DistortionBudget) -> bool:
    """
    Prefix-wise match x ~ y: every prefix of length l has at most D * l mismatches.
    :raises LengthMismatchError:
    :raises EmptySequenceError:
    """
    _check_same_length(x, y)
    if x.length == 0:
        raise EmptySequenceError("Matching needs sequences of at least one symbol.")
    mismatches = np.cumsum(np.bitwise_xor(x.bits, y.bits), dtype=np.int64)
    return bool(np.all(mismatches <= distortion.prefix_budgets(x.length)))


def type_of(sequence: BitSequence) -> TypeFraction:
    """
    Empirical type of the sequence.
    :raises EmptySequenceError:
    """
    if sequence.length == 0:
        raise EmptySequenceError("Type of empty sequence is not defined.")
    return TypeFraction(ones=sequence.count_ones(), length=sequence.length)
