import struct
from fractions import Fraction
from typing import Optional

from src.exception import BadMagicError, CorruptStreamError, UnsupportedVersionError
from src.models import (
    Bitstream,
    CodecVariant,
    DistortionBudget,
    EncodedStream,
    Header,
    MatchRelation,
    STREAM_MAGIC,
    STREAM_VERSION,
)

# magic, version, n, D num, D den, p num, p den, ell, variant, relation
HEADER_FORMAT = ">4sBQIIIIHBB"
HEADER_SIZE = struct.calcsize(HEADER_FORMAT)
UNKNOWN_P_DENOMINATOR = 0xFFFFFFFF
_MAX_U32 = 0xFFFFFFFF


def source_fraction(p: float) -> Fraction:
    """
    Closest fraction to p whose denominator fits the header field.
    """
    return Fraction(p).limit_denominator(UNKNOWN_P_DENOMINATOR - 1)


def pack_header(header: Header) -> bytes:
    """
    Serialize header into its fixed-size binary form.
    :param header:
    :return: Header bytes.
    :raises ValueError: If some value does not fit its field.
    """
    distortion = header.distortion.value
    if distortion.numerator > _MAX_U32 or distortion.denominator > _MAX_U32:
        raise ValueError(f"Distortion {distortion} does not fit 32-bit numerator and denominator.")
    if header.source_p is None:
        p_numerator, p_denominator = 0, UNKNOWN_P_DENOMINATOR
    else:
        p_numerator, p_denominator = header.source_p.numerator, header.source_p.denominator
        if p_denominator >= UNKNOWN_P_DENOMINATOR:
            raise ValueError(f"Source probability {header.source_p} does not fit the header.")
    return struct.pack(
        HEADER_FORMAT,
        header.magic,
        header.version,
        header.length,
        distortion.numerator,
        distortion.denominator,
        p_numerator,
        p_denominator,
        header.ell,
        header.variant.value,
        header.relation.value,
    )


def unpack_header(content: bytes) -> Header:
    """
    Parse header from the start of given bytes.
    :param content: Stream bytes (at least the header).
    :return: Header.
    :raises BadMagicError:
    :raises UnsupportedVersionError:
    :raises CorruptStreamError: If header is truncated or holds invalid values.
    """
    if len(content) < HEADER_SIZE:
        raise CorruptStreamError(f"Stream has {len(content)} bytes, header alone needs {HEADER_SIZE}.")
    magic, version, length, d_num, d_den, p_num, p_den, ell, variant, relation = struct.unpack(
        HEADER_FORMAT, content[:HEADER_SIZE]
    )
    if magic != STREAM_MAGIC:
        raise BadMagicError(f"Stream starts with {magic!r}, expected {STREAM_MAGIC!r}.")
    if version != STREAM_VERSION:
        raise UnsupportedVersionError(f"Stream version {version} is not supported (expected {STREAM_VERSION}).")
    try:
        source_p: Optional[Fraction] = None if p_den == UNKNOWN_P_DENOMINATOR else Fraction(p_num, p_den)
        if source_p is not None and not 0 <= source_p <= 1:
            raise ValueError(f"source probability {source_p} out of range")
        return Header(
            length=length,
            distortion=DistortionBudget(Fraction(d_num, d_den)),
            source_p=source_p,
            ell=ell,
            variant=CodecVariant(variant),
            relation=MatchRelation(relation),
        )
    except (ValueError, ZeroDivisionError) as ex:
        raise CorruptStreamError(f"Stream header holds invalid values: {ex}") from ex


def stream_to_bytes(stream: EncodedStream) -> bytes:
    return pack_header(stream.header) + stream.payload.data


def stream_from_bytes(content: bytes) -> EncodedStream:
    """
    Split stored stream into header and payload. Payload bit length is taken as whole bytes, the decoders accept
    up to seven zero padding bits.
    """
    header = unpack_header(content)
    payload = content[HEADER_SIZE:]
    return EncodedStream(header=header, payload=Bitstream(data=payload, bit_length=len(payload) * 8))
