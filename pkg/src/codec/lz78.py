"""
LZ78 bit-level format.

The payload starts with a partial flag (omitted for empty input): 1 if the last phrase repeats an earlier phrase
without a new bit. Phrase t (counted from 1) is written as the index of its longest earlier phrase in
bit_length(t - 1) bits (index 0 is the empty phrase) followed by the new bit. A partial last phrase has the index
only. The decoder needs the output length, which the stream header provides.
"""
from typing import Optional, Sequence

import numpy as np

from src.codec.bit_io import BitReader, BitWriter
from src.exception import CorruptStreamError
from src.models import Bitstream, BitSequence


def lz78_parse(bits: Sequence[int]) -> list[tuple[int, Optional[int]]]:
    """
    Parse bits into (index of longest earlier phrase, new bit) pairs. The last pair has new bit None when the input
    ends inside an already known phrase.
    :param bits: Input symbols.
    :return: Parsed phrases.
    """
    dictionary: dict[tuple[int, int], int] = {}
    phrases: list[tuple[int, Optional[int]]] = []
    prefix = 0
    for bit in bits:
        known = dictionary.get((prefix, bit))
        if known is not None:
            prefix = known
        else:
            phrases.append((prefix, bit))
            dictionary[(prefix, bit)] = len(phrases)
            prefix = 0
    if prefix:
        phrases.append((prefix, None))
    return phrases


def lz78_phrase_lengths(bits: Sequence[int]) -> list[int]:
    """
    Lengths of LZ78 phrases of the input, in order.
    """
    lengths = [0]
    result = []
    for prefix, bit in lz78_parse(bits):
        length = lengths[prefix] + (bit is not None)
        lengths.append(length)
        result.append(length)
    return result


def lz78_encode(y: BitSequence) -> Bitstream:
    """
    Losslessly encode the sequence.
    :param y:
    :return: Payload bits.
    """
    writer = BitWriter()
    if y.length == 0:
        return writer.to_bitstream()
    phrases = lz78_parse(y.bits.tolist())
    writer.write_bit(1 if phrases[-1][1] is None else 0)
    for number, (prefix, bit) in enumerate(phrases, start=1):
        writer.write_bits(prefix, (number - 1).bit_length())
        if bit is not None:
            writer.write_bit(bit)
    return writer.to_bitstream()


def lz78_decode(bitstream: Bitstream, length: int) -> BitSequence:
    """
    Decode payload produced by lz78_encode.
    :param bitstream: Payload bits.
    :param length: Number of symbols to reconstruct.
    :return: Decoded sequence.
    :raises CorruptStreamError: On truncated payload, index out of range or length mismatch.
    """
    reader = BitReader(bitstream)
    output: list[int] = []
    if length > 0:
        partial = reader.read_bit()
        phrases: list[tuple[int, ...]] = [()]
        while len(output) < length:
            number = len(phrases)
            prefix = reader.read_bits((number - 1).bit_length())
            if prefix >= number:
                raise CorruptStreamError(f"Phrase {number} refers to unknown phrase {prefix}.")
            missing = length - len(output)
            known = phrases[prefix]
            if len(known) == missing and partial and prefix > 0:
                output.extend(known)
                break
            phrase = known + (reader.read_bit(),)
            if len(phrase) > missing:
                raise CorruptStreamError(f"Phrase {number} runs past declared length {length}.")
            phrases.append(phrase)
            output.extend(phrase)
    reader.ensure_consumed()
    return BitSequence.from_array(np.asarray(output, dtype=np.uint8))
