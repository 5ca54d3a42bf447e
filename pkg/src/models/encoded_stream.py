from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from src.models.match_relation import CodecVariant, MatchRelation
from src.models.source_model import DistortionBudget

STREAM_MAGIC = b"CLP1"
STREAM_VERSION = 1


@dataclass(slots=True)
class Header:
    """
    Fixed-size stream header.
    :param length: Number of source (and reconstruction) symbols n.
    :param distortion: Distortion budget D.
    :param source_p: Source probability as exact fraction, None if unknown to encoder.
    :param ell: Base level width of the idealized dictionary (1 for practical variant).
    :param variant: Encoder variant.
    :param relation: Match relation used by the encoder.
    """

    length: int
    distortion: DistortionBudget
    source_p: Optional[Fraction]
    ell: int
    variant: CodecVariant
    relation: MatchRelation
    magic: bytes = STREAM_MAGIC
    version: int = STREAM_VERSION


@dataclass(slots=True)
class Bitstream:
    """
    Bits packed most significant bit first into bytes, zero padded. Bit length is kept exact.
    """

    data: bytes
    bit_length: int


@dataclass(slots=True)
class EncodedStream:
    """
    Header plus payload. The payload is LZ78 code of the reconstruction (practical variant) or sequence
    of codelet/escape records (idealized variant).
    """

    header: Header
    payload: Bitstream
