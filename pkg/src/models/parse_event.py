from dataclasses import dataclass
from enum import Enum

from src.models.bit_sequence import BitSequence


class PhraseKind(Enum):
    CODELET = "codelet"
    ESCAPE = "escape"


@dataclass(slots=True)
class ParseEvent:
    """
    One phrase of the parse.
    :param kind: Whether the phrase was represented by a codelet or sent verbatim.
    :param codelet_bits: Chosen codelet, or the raw source phrase for escapes.
    :param depth_level: Dictionary level k of the codelet (idealized variant only, 0 otherwise).
    """

    kind: PhraseKind
    codelet_bits: BitSequence
    depth_level: int = 0

    def __post_init__(self):
        if self.codelet_bits.length < 1:
            raise ValueError("Parse event needs a phrase of at least one bit.")

    @property
    def length(self) -> int:
        return self.codelet_bits.length
