from dataclasses import dataclass
from typing import Iterable, Optional, Union

import numpy as np

WORD_BITS = 64


@dataclass(slots=True, eq=False)
class BitSequence:
    """
    Binary sequence packed into 64-bit words, little-endian within word (symbol i is bit i % 64 of word i // 64).
    Bits past the length are always zero, so word-wise operations need no masking.
    """

    words: np.ndarray
    length: int

    @classmethod
    def from_array(cls, bits: Union[np.ndarray, Iterable[int]]) -> "BitSequence":
        """
        Pack array of zeros and ones.
        :param bits: Array-like of 0/1 values.
        :return: Packed sequence.
        """
        bits = np.asarray(bits, dtype=np.uint8).ravel()
        length = int(bits.size)
        packed = np.packbits(bits, bitorder="little")
        padded = np.zeros(-(-length // WORD_BITS) * 8, dtype=np.uint8)
        padded[: packed.size] = packed
        return cls(words=padded.view("<u8").astype(np.uint64), length=length)

    @classmethod
    def from_string(cls, bit_string: str) -> "BitSequence":
        """
        Create sequence from text like "0110".
        :param bit_string:
        :return: Packed sequence.
        :raises ValueError: If the string contains other symbols than 0 and 1.
        """
        if any(symbol not in "01" for symbol in bit_string):
            raise ValueError(f"Bit string can contain only 0 and 1, got '{bit_string}'.")
        return cls.from_array(np.frombuffer(bit_string.encode("ascii"), dtype=np.uint8) - ord("0"))

    @classmethod
    def from_bytes(cls, content: bytes, bit_count: Optional[int] = None) -> "BitSequence":
        """
        Interpret bytes as bit sequence, most significant bit of every byte first.
        :param content:
        :param bit_count: Use only first bit_count bits, all if None.
        :return: Packed sequence.
        """
        bits = np.unpackbits(np.frombuffer(content, dtype=np.uint8), bitorder="big")
        if bit_count is not None:
            bits = bits[:bit_count]
        return cls.from_array(bits)

    @classmethod
    def from_int(cls, value: int, width: int) -> "BitSequence":
        """
        Sequence spelling given integer in width bits, most significant bit first.
        :param value:
        :param width:
        :return: Packed sequence.
        """
        return cls.from_array([(value >> shift) & 1 for shift in range(width - 1, -1, -1)])

    @classmethod
    def zeros(cls, length: int) -> "BitSequence":
        return cls.from_array(np.zeros(length, dtype=np.uint8))

    @property
    def bits(self) -> np.ndarray:
        """
        Unpacked symbols as uint8 array of given length.
        """
        as_bytes = self.words.astype("<u8").view(np.uint8)
        return np.unpackbits(as_bytes, bitorder="little")[: self.length]

    def count_ones(self) -> int:
        return int(np.count_nonzero(self.bits))

    def to_bytes(self) -> bytes:
        """
        Pack symbols into bytes, most significant bit first, zero padded to byte boundary.
        """
        return np.packbits(self.bits, bitorder="big").tobytes()

    def to_int(self) -> int:
        """
        Integer spelled by the sequence, first symbol most significant.
        """
        value = 0
        for bit in self.bits.tolist():
            value = (value << 1) | bit
        return value

    def concat(self, other: "BitSequence") -> "BitSequence":
        return BitSequence.from_array(np.concatenate([self.bits, other.bits]))

    def __len__(self) -> int:
        return self.length

    def __getitem__(self, index: Union[int, slice]) -> Union[int, "BitSequence"]:
        if isinstance(index, slice):
            return BitSequence.from_array(self.bits[index])
        if index < 0:
            index += self.length
        if not 0 <= index < self.length:
            raise IndexError(f"Index {index} out of range for sequence of length {self.length}.")
        return int((int(self.words[index // WORD_BITS]) >> (index % WORD_BITS)) & 1)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BitSequence):
            return NotImplemented
        return self.length == other.length and bool(np.array_equal(self.words, other.words))

    def __hash__(self) -> int:
        return hash((self.length, self.words.tobytes()))

    def __str__(self) -> str:
        return "".join("1" if bit else "0" for bit in self.bits.tolist())

    def __repr__(self) -> str:
        shown = str(self) if self.length <= 64 else f"{str(self[:64])}..."
        return f"BitSequence('{shown}', length={self.length})"
