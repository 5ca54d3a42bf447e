from enum import Enum


class MatchRelation(Enum):
    """
    How a codelet has to match the source phrase of the same length. Values are used in the stream header.
    """

    FULL_CODELET = 0  # whole phrase within distortion
    PREFIX_WISE = 1  # every prefix within distortion

    @classmethod
    def from_name(cls, name: str) -> "MatchRelation":
        """
        Get relation by its command line name (full-codelet, prefix-wise).
        :param name:
        :return: Match relation.
        :raises ValueError: If name is not known.
        """
        for relation in cls:
            if relation.cli_name == name.strip().lower():
                return relation
        raise ValueError(f"Unknown match relation '{name}', expected one of {[r.cli_name for r in cls]}.")

    @property
    def cli_name(self) -> str:
        return self.name.lower().replace("_", "-")


class CodecVariant(Enum):
    """
    Encoder variant. Values are used in the stream header.
    """

    PRACTICAL = 0
    IDEALIZED = 1

    @classmethod
    def from_name(cls, name: str) -> "CodecVariant":
        """
        Get variant by its command line name (practical, idealized).
        :param name:
        :return: Codec variant.
        :raises ValueError: If name is not known.
        """
        for variant in cls:
            if variant.name.lower() == name.strip().lower():
                return variant
        raise ValueError(f"Unknown codec variant '{name}', expected practical or idealized.")
