import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Optional, Sequence

import numpy as np

from src.codec.header import source_fraction
from src.codec.lz78 import lz78_encode
from src.dictionary.codebook_tree import TrieNode, extend_codelet, find_matching_leaves, init_practical
from src.exception import EmptyMatchSetError
from src.models import (
    BitSequence,
    CodecVariant,
    DistortionBudget,
    EncodedStream,
    Header,
    MatchRelation,
    ParseEvent,
    PhraseKind,
    SourceModel,
)
from src.rd_math.rate_distortion import cached_lower_mutual_info

METRIC_TIE_TOLERANCE = 1e-12


@dataclass(slots=True)
class EncodeResult:
    """
    Output of an encoder.
    :param y: Reconstruction, same length as the input.
    :param stream: Encoded stream decoding to y.
    :param events: Parse, one event per phrase.
    """

    y: BitSequence
    stream: EncodedStream
    events: list[ParseEvent]


@lru_cache(maxsize=1 << 16)
def codelet_metric(codelet_type: Fraction, parsed_type: Fraction, distortion: Fraction) -> float:
    """
    Lower mutual information between codelet type and type of the would-be parsed prefix, +inf when infeasible.
    Feasibility |q - p| <= D is decided exactly.
    """
    if abs(codelet_type - parsed_type) > distortion:
        return math.inf
    return cached_lower_mutual_info(float(codelet_type), float(parsed_type), float(distortion))


def _select(
    matches: Sequence[TrieNode],
    parsed_ones: int,
    parsed_length: int,
    phrase_ones: Sequence[int],
    distortion: DistortionBudget,
) -> TrieNode:
    if not matches:
        raise EmptyMatchSetError("Cannot select codelet from empty match set.")
    metrics = [
        codelet_metric(
            Fraction(leaf.ones, leaf.depth),
            Fraction(parsed_ones + ones, parsed_length + leaf.depth),
            distortion.value,
        )
        for leaf, ones in zip(matches, phrase_ones)
    ]
    best_metric = min(metrics)
    tied = [
        leaf
        for leaf, metric in zip(matches, metrics)
        if metric == best_metric or metric - best_metric <= METRIC_TIE_TOLERANCE
    ]
    # longer codelet first, then lexicographically smaller
    return min(tied, key=lambda leaf: (-leaf.depth, leaf.value))


def select_codelet(
    matches: Sequence[TrieNode],
    parsed_so_far: BitSequence,
    candidate_phrases: Sequence[BitSequence],
    distortion: DistortionBudget,
) -> TrieNode:
    """
    Choose codelet with the smallest I_m(type(m), type(r), D), r being the parsed prefix extended by the source
    phrase m would represent. Ties go to the longer codelet, then to the lexicographically smaller one.
    :param matches: Matching codelets.
    :param parsed_so_far: Source prefix parsed so far.
    :param candidate_phrases: Source phrase for every match, same order.
    :param distortion:
    :return: Chosen codelet.
    :raises EmptyMatchSetError: If there is no match.
    """
    return _select(
        matches,
        parsed_so_far.count_ones(),
        parsed_so_far.length,
        [phrase.count_ones() for phrase in candidate_phrases],
        distortion,
    )


def encode_practical(
    x: BitSequence,
    distortion: DistortionBudget,
    source: Optional[SourceModel] = None,
    relation: MatchRelation = MatchRelation.FULL_CODELET,
) -> EncodeResult:
    """
    Practical codelet parsing: at every step find codelets matching the unparsed input, pick one by the lower mutual
    information metric, emit it and replace it in the codebook by its two one-bit extensions. The reconstruction
    is then coded by LZ78. A tail shorter than every matching codelet is copied verbatim.
    :param x: Source sequence.
    :param distortion:
    :param source: Source model, only recorded in the header (None for unknown statistics).
    :param relation: Match relation of the codelet search.
    :return: Reconstruction, stream and parse events.
    """
    length = x.length
    x_bits = x.bits.tolist()
    y_bits = np.zeros(length, dtype=np.uint8)
    prefix_ones = np.concatenate([[0], np.cumsum(x.bits, dtype=np.int64)]).tolist()
    tree = init_practical()
    events: list[ParseEvent] = []
    position = 0
    while position < length:
        remaining = length - position
        window = x_bits[position:position + tree.root.max_leaf_depth]
        matches = find_matching_leaves(tree, window, remaining, distortion, relation)
        if not matches:
            tail = x.bits[position:]
            y_bits[position:] = tail
            events.append(ParseEvent(kind=PhraseKind.ESCAPE, codelet_bits=BitSequence.from_array(tail)))
            break
        phrase_ones = [prefix_ones[position + leaf.depth] - prefix_ones[position] for leaf in matches]
        chosen = _select(matches, prefix_ones[position], position, phrase_ones, distortion)
        codelet = chosen.bits()
        y_bits[position:position + chosen.depth] = codelet.bits
        events.append(ParseEvent(kind=PhraseKind.CODELET, codelet_bits=codelet))
        extend_codelet(tree, chosen)
        position += chosen.depth

    y = BitSequence.from_array(y_bits)
    header = Header(
        length=length,
        distortion=distortion,
        source_p=source_fraction(source.p) if source is not None else None,
        ell=1,
        variant=CodecVariant.PRACTICAL,
        relation=relation,
    )
    stream = EncodedStream(header=header, payload=lz78_encode(y))
    logging.debug(
        "Practical encode of %s bits finished with %s phrases and %s payload bits.",
        length,
        len(events),
        stream.payload.bit_length,
    )
    return EncodeResult(y=y, stream=stream, events=events)
