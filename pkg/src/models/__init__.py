from src.models.bit_sequence import BitSequence
from src.models.diagnostics import Diagnostics
from src.models.encode_stats import EncodeStats
from src.models.encoded_stream import Header, Bitstream, EncodedStream, STREAM_MAGIC, STREAM_VERSION
from src.models.exit_code import ExitCode
from src.models.lemma_report import LemmaReport, Comparison
from src.models.match_relation import MatchRelation, CodecVariant
from src.models.parse_event import ParseEvent, PhraseKind
from src.models.source_model import SourceModel, DistortionBudget, TypeFraction, BinaryJoint


__all__ = [
    "BitSequence",
    "Diagnostics",
    "EncodeStats",
    "Header",
    "Bitstream",
    "EncodedStream",
    "ExitCode",
    "STREAM_MAGIC",
    "STREAM_VERSION",
    "LemmaReport",
    "Comparison",
    "MatchRelation",
    "CodecVariant",
    "ParseEvent",
    "PhraseKind",
    "SourceModel",
    "DistortionBudget",
    "TypeFraction",
    "BinaryJoint",
]
