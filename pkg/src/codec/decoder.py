from src.codec.bit_io import BitReader
from src.codec.idealized_encoder import LevelUpdater, RecordAlphabet, build_level_config, spell
from src.codec.lz78 import lz78_decode
from src.dictionary.level_config import DEFAULT_DELTA
from src.dictionary.level_structure import idealized_build_init
from src.exception import BadMagicError, CorruptStreamError, UnsupportedVersionError
from src.models import BitSequence, CodecVariant, EncodedStream, Header, SourceModel, STREAM_MAGIC, STREAM_VERSION


def _check_header(header: Header) -> None:
    # streams built in memory never went through unpack_header
    if header.magic != STREAM_MAGIC:
        raise BadMagicError(f"Stream starts with {header.magic!r}, expected {STREAM_MAGIC!r}.")
    if header.version != STREAM_VERSION:
        raise UnsupportedVersionError(f"Stream version {header.version} is not supported.")


def decode(stream: EncodedStream) -> BitSequence:
    """
    Reconstruct the sequence the encoder produced.
    :param stream: Encoded stream of either variant.
    :return: Reconstruction y.
    :raises CorruptStreamError: If payload does not decode to exactly the declared length.
    """
    _check_header(stream.header)
    if stream.header.variant == CodecVariant.PRACTICAL:
        return lz78_decode(stream.payload, stream.header.length)
    return decode_idealized(stream)


def decode_idealized(stream: EncodedStream) -> BitSequence:
    """
    Replay the idealized parse: rebuild the dictionary with the same updates the encoder made and look codelets up
    by their record symbol.
    :param stream:
    :return: Reconstruction y.
    :raises CorruptStreamError:
    """
    header = stream.header
    if header.source_p is None:
        raise CorruptStreamError("Idealized stream needs source probability in its header.")
    if header.ell < 1:
        raise CorruptStreamError("Idealized stream needs level width of at least one bit.")
    length = header.length
    cfg = build_level_config(length, header.distortion, SourceModel(float(header.source_p)), header.ell, DEFAULT_DELTA)
    ell = cfg.ell
    tree = idealized_build_init(cfg)
    updater = LevelUpdater(tree, cfg)
    reader = BitReader(stream.payload)
    output: list[int] = []
    while len(output) < length:
        remaining = length - len(output)
        alphabet = RecordAlphabet(tree, remaining)
        node = alphabet.node_of(reader.read_truncated(alphabet.size))
        if node is not None:
            output.extend(spell(node.value, node.depth))
            updater.after_codelet(node)
        else:
            raw = reader.read_list(min(ell, remaining))
            output.extend(raw)
            updater.after_escape(raw)
    reader.ensure_consumed()
    return BitSequence.from_array(output)


def coding_rate(stream: EncodedStream) -> float:
    """
    Payload bits (header excluded) per source symbol.
    :raises ValueError: For empty stream.
    """
    if stream.header.length < 1:
        raise ValueError("Coding rate is not defined for empty stream.")
    return stream.payload.bit_length / stream.header.length
