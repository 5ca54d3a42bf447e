import pytest

from src.codec.bit_io import BitReader, BitWriter
from src.exception import CorruptStreamError
from src.models import Bitstream
from tests.utils import bitstream_to_string


@pytest.mark.parametrize(
    "value, alphabet_size, expected",
    [(0, 1, ""), (1, 2, "1"), (0, 3, "0"), (1, 3, "10"), (2, 3, "11"), (2, 5, "10"), (3, 5, "110"), (4, 5, "111")],
)
def test_truncated_binary_codes(value, alphabet_size, expected):
    writer = BitWriter()

    writer.write_truncated(value, alphabet_size)

    assert bitstream_to_string(writer.to_bitstream()) == expected
    assert BitReader(writer.to_bitstream()).read_truncated(alphabet_size) == value


def test_written_values_read_back():
    # arrange
    writer = BitWriter()
    writer.write_bit(1)
    writer.write_bits(5, 3)
    writer.write_bits(0, 0)
    writer.write_truncated(13, 20)
    writer.write_bits(0xABC, 12)
    stream = writer.to_bitstream()

    # act
    reader = BitReader(stream)
    values = [reader.read_bit(), reader.read_bits(3), reader.read_bits(0)]
    values += [reader.read_truncated(20), reader.read_bits(12)]

    # assert
    assert values == [1, 5, 0, 13, 0xABC]
    assert stream.bit_length == 1 + 3 + 5 + 12
    assert len(stream.data) == 3
    reader.ensure_consumed()


def test_value_wider_than_field_is_rejected():
    with pytest.raises(ValueError):
        BitWriter().write_bits(4, 2)
    with pytest.raises(ValueError):
        BitWriter().write_truncated(3, 3)
    with pytest.raises(ValueError):
        BitWriter().write_truncated(0, 0)


def test_reading_past_end_is_corrupt():
    reader = BitReader(Bitstream(data=b"\xf0", bit_length=4))
    reader.read_bits(3)

    with pytest.raises(CorruptStreamError):
        reader.read_bits(2)
    with pytest.raises(CorruptStreamError):
        reader.read_list(2)


def test_declared_length_longer_than_data_is_corrupt():
    with pytest.raises(CorruptStreamError):
        BitReader(Bitstream(data=b"\x00", bit_length=9))


def test_trailing_bits_are_corrupt():
    reader = BitReader(Bitstream(data=b"\x81", bit_length=8))
    reader.read_bit()

    with pytest.raises(CorruptStreamError):
        reader.ensure_consumed()


def test_zero_padding_below_byte_is_accepted():
    reader = BitReader(Bitstream(data=b"\x80", bit_length=8))
    reader.read_bit()

    reader.ensure_consumed()
    assert reader.remaining == 7
