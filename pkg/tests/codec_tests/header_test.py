import struct
from fractions import Fraction

import pytest

from src.codec.header import (
    HEADER_FORMAT,
    HEADER_SIZE,
    UNKNOWN_P_DENOMINATOR,
    pack_header,
    source_fraction,
    stream_from_bytes,
    stream_to_bytes,
    unpack_header,
)
from src.exception import BadMagicError, CorruptStreamError, UnsupportedVersionError
from src.models import Bitstream, CodecVariant, DistortionBudget, EncodedStream, Header, MatchRelation
from tests.test_constants import HEADER_BYTE_SIZE
from tests.utils import compare_dataclasses


def _header(source_p=Fraction(1, 2)) -> Header:
    return Header(
        length=1 << 40,
        distortion=DistortionBudget.of("11/100"),
        source_p=source_p,
        ell=5,
        variant=CodecVariant.IDEALIZED,
        relation=MatchRelation.PREFIX_WISE,
    )


def _raw_header(**changes) -> bytes:
    values = {
        "magic": b"CLP1",
        "version": 1,
        "length": 8,
        "d_num": 1,
        "d_den": 4,
        "p_num": 1,
        "p_den": 2,
        "ell": 1,
        "variant": 0,
        "relation": 0,
    }
    values.update(changes)
    return struct.pack(HEADER_FORMAT, *values.values())


def test_header_has_fixed_size():
    assert HEADER_SIZE == HEADER_BYTE_SIZE
    assert len(pack_header(_header())) == HEADER_BYTE_SIZE


@pytest.mark.parametrize("source_p", [Fraction(1, 2), Fraction(3, 10), None])
def test_header_survives_packing(source_p):
    header = _header(source_p)

    restored = unpack_header(pack_header(header))
    differences = compare_dataclasses(restored, header, ignored_fields=["distortion"])

    assert differences.count == 0, differences.get_difference_description()
    assert restored.distortion == header.distortion


def test_unknown_source_probability_uses_sentinel():
    content = pack_header(_header(None))

    assert struct.unpack(HEADER_FORMAT, content)[6] == UNKNOWN_P_DENOMINATOR


@pytest.mark.parametrize(
    "changes, error",
    [
        ({"magic": b"CLP2"}, BadMagicError),
        ({"version": 9}, UnsupportedVersionError),
        ({"d_den": 0}, CorruptStreamError),
        ({"d_num": 3, "d_den": 4}, CorruptStreamError),
        ({"p_num": 3, "p_den": 2}, CorruptStreamError),
        ({"variant": 7}, CorruptStreamError),
        ({"relation": 2}, CorruptStreamError),
    ],
)
def test_invalid_header_is_rejected(changes, error):
    with pytest.raises(error):
        unpack_header(_raw_header(**changes))


def test_truncated_header_is_rejected():
    with pytest.raises(CorruptStreamError):
        unpack_header(_raw_header()[:-1])


def test_stream_bytes_split_into_header_and_payload():
    stream = EncodedStream(header=_header(), payload=Bitstream(data=b"\xa0", bit_length=3))

    restored = stream_from_bytes(stream_to_bytes(stream))

    assert restored.payload.data == b"\xa0"
    assert restored.payload.bit_length == 8
    assert restored.header.length == 1 << 40


def test_source_probability_is_stored_as_fraction():
    assert source_fraction(0.5) == Fraction(1, 2)
    assert source_fraction(0.11) == Fraction(11, 100)
    assert source_fraction(1 / 3).denominator < UNKNOWN_P_DENOMINATOR


def test_oversized_distortion_fraction_is_rejected():
    header = _header()
    header.distortion = DistortionBudget(Fraction(1, (1 << 33) + 1))

    with pytest.raises(ValueError):
        pack_header(header)
