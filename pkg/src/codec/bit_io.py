import numpy as np

from src.exception import CorruptStreamError
from src.models import Bitstream


def _truncated_widths(alphabet_size: int) -> tuple[int, int]:
    if alphabet_size < 1:
        raise ValueError(f"Alphabet needs at least one symbol, got {alphabet_size}.")
    width = alphabet_size.bit_length() - 1
    return width, (1 << (width + 1)) - alphabet_size


class BitWriter:
    """
    Collects bits, most significant bit first within every written value.
    """

    def __init__(self):
        self._bits: list[int] = []

    @property
    def bit_length(self) -> int:
        return len(self._bits)

    def write_bit(self, bit: int) -> None:
        self._bits.append(bit & 1)

    def write_bits(self, value: int, width: int) -> None:
        """
        Write value in exactly width bits. Zero width writes nothing.
        :raises ValueError: If value does not fit.
        """
        if value < 0 or value >> width:
            raise ValueError(f"Value {value} does not fit into {width} bits.")
        self._bits.extend((value >> shift) & 1 for shift in range(width - 1, -1, -1))

    def write_truncated(self, value: int, alphabet_size: int) -> None:
        """
        Truncated binary code of value from [0, alphabet_size). With k = floor(log2 alphabet_size), the first
        2^(k+1) - alphabet_size values take k bits and the rest k + 1 bits. A single-symbol alphabet takes no bits.
        :raises ValueError: If value is outside of the alphabet.
        """
        if not 0 <= value < alphabet_size:
            raise ValueError(f"Value {value} is outside of alphabet of size {alphabet_size}.")
        width, short_count = _truncated_widths(alphabet_size)
        if value < short_count:
            self.write_bits(value, width)
        else:
            self.write_bits(value + short_count, width + 1)

    def to_bitstream(self) -> Bitstream:
        data = np.packbits(np.asarray(self._bits, dtype=np.uint8), bitorder="big").tobytes()
        return Bitstream(data=data, bit_length=len(self._bits))


class BitReader:
    """
    Reads bits written by BitWriter. Reading past the end raises CorruptStreamError.
    """

    def __init__(self, bitstream: Bitstream):
        available = len(bitstream.data) * 8
        if bitstream.bit_length > available:
            raise CorruptStreamError(
                f"Payload declares {bitstream.bit_length} bits but holds only {available} bits."
            )
        unpacked = np.unpackbits(np.frombuffer(bitstream.data, dtype=np.uint8), bitorder="big")
        self._bits: list[int] = unpacked[: bitstream.bit_length].tolist()
        self._position = 0

    @property
    def remaining(self) -> int:
        return len(self._bits) - self._position

    def read_bit(self) -> int:
        if self._position >= len(self._bits):
            raise CorruptStreamError("Payload is truncated.")
        bit = self._bits[self._position]
        self._position += 1
        return bit

    def read_bits(self, width: int) -> int:
        if self._position + width > len(self._bits):
            raise CorruptStreamError("Payload is truncated.")
        value = 0
        for bit in self._bits[self._position:self._position + width]:
            value = (value << 1) | bit
        self._position += width
        return value

    def read_list(self, count: int) -> list[int]:
        if self._position + count > len(self._bits):
            raise CorruptStreamError("Payload is truncated.")
        bits = self._bits[self._position:self._position + count]
        self._position += count
        return bits

    def read_truncated(self, alphabet_size: int) -> int:
        width, short_count = _truncated_widths(alphabet_size)
        value = self.read_bits(width)
        if value < short_count:
            return value
        return ((value << 1) | self.read_bit()) - short_count

    def ensure_consumed(self) -> None:
        """
        Only zero padding (less than a byte) may stay unread.
        :raises CorruptStreamError:
        """
        rest = self._bits[self._position:]
        if len(rest) >= 8 or any(rest):
            raise CorruptStreamError(f"Payload has {len(rest)} unexpected trailing bits.")
