import logging
import time
from typing import Optional

from src.codec.decoder import coding_rate, decode
from src.codec.header import stream_from_bytes, stream_to_bytes
from src.codec.idealized_encoder import build_level_config, encode_idealized
from src.codec.practical_encoder import encode_practical
from src.config import CodecConfig
from src.exception import CodecError, FileWritingError, ParsingError
from src.generic_file_handlers.binary_file_handler import read_bytes, write_bytes
from src.matching.distance import hamming_distance
from src.models import BitSequence, CodecVariant, DistortionBudget, EncodedStream, ExitCode, SourceModel
from src.utils import format_fraction


class CodecManager:
    """
    Class with static methods only, connecting file handling with the encoders and the decoder.
    """

    @staticmethod
    def load_source(filepath: str, bit_count: Optional[int]) -> BitSequence:
        """
        Read input file as bit sequence, most significant bit of each byte first.
        :param filepath:
        :param bit_count: Use only first bit_count bits, whole file if None.
        :return: Source sequence.
        :raises ParsingError: If file cannot be read or holds fewer bits than requested.
        """
        content = read_bytes(filepath)
        if bit_count is not None and bit_count > len(content) * 8:
            raise ParsingError(f"File {filepath} holds {len(content) * 8} bits, {bit_count} were requested.")
        return BitSequence.from_bytes(content, bit_count)

    @staticmethod
    def encode(x: BitSequence, codec_config: CodecConfig) -> EncodedStream:
        """
        Encode with the variant selected by configuration.
        :param x: Source sequence.
        :param codec_config:
        :return: Encoded stream.
        """
        distortion = DistortionBudget(codec_config.distortion)
        source = SourceModel(float(codec_config.source_p)) if codec_config.source_p is not None else None
        if codec_config.codec_variant == CodecVariant.PRACTICAL:
            return encode_practical(x, distortion, source, codec_config.match_relation).stream

        cfg = None
        if source is not None:
            cfg = build_level_config(x.length, distortion, source, codec_config.ell, codec_config.delta)
        elif codec_config.ell is not None:
            empirical = SourceModel(x.count_ones() / x.length if x.length else 0.5)
            cfg = build_level_config(x.length, distortion, empirical, codec_config.ell, codec_config.delta)
        result = encode_idealized(x, distortion, source, cfg)
        logging.info(
            "Idealized parse: %s codelets (mean length %.2f), %s escapes, %s give-ups.",
            result.stats.codelet_count,
            result.stats.mean_codelet_length,
            result.stats.escape_count,
            result.stats.give_up_count,
        )
        return result.stream


def run_encode(codec_config: CodecConfig, input_path: str, output_path: str) -> ExitCode:
    """
    Encode input file into stream file.
    :param codec_config: Codec configuration (validated).
    :param input_path:
    :param output_path:
    :return: Exit code of the action.
    """
    logging.info("ENCODE is starting")
    start = time.perf_counter()
    try:
        x = CodecManager.load_source(input_path, codec_config.bits)
        logging.info(
            "Encoding %s bits with %s variant, D=%s, p=%s (seed %s).",
            x.length,
            codec_config.codec_variant.name.lower(),
            format_fraction(codec_config.distortion),
            format_fraction(codec_config.source_p),
            codec_config.seed,
        )
        stream = CodecManager.encode(x, codec_config)
        write_bytes(output_path, stream_to_bytes(stream))
    except (ParsingError, FileWritingError, ValueError) as ex:
        logging.error(ex)
        logging.info("ENCODE failed.")
        return ExitCode.USAGE_ERROR

    if stream.header.length > 0:
        logging.info("Coding rate %.6f bits per symbol.", coding_rate(stream))
    logging.info("ENCODE finished successfully in %.3f s.", time.perf_counter() - start)
    return ExitCode.SUCCESS


def run_decode(input_path: str, output_path: str, reference_path: Optional[str] = None) -> ExitCode:
    """
    Decode stream file into reconstruction file (zero padded to whole bytes).
    :param input_path: Stream file.
    :param output_path:
    :param reference_path: Optional original input, distortion of the reconstruction is logged when given.
    :return: Exit code of the action.
    """
    logging.info("DECODE is starting")
    try:
        stream = stream_from_bytes(read_bytes(input_path))
        y = decode(stream)
        write_bytes(output_path, y.to_bytes())
        if reference_path:
            x = CodecManager.load_source(reference_path, y.length)
            logging.info(
                "Reconstruction differs from reference in %s of %s symbols.", hamming_distance(x, y), y.length
            )
    except CodecError as ex:
        logging.error("Stream %s is corrupt: %s", input_path, ex)
        logging.info("DECODE failed.")
        return ExitCode.CORRUPT_STREAM
    except (ParsingError, FileWritingError, ValueError) as ex:
        logging.error(ex)
        logging.info("DECODE failed.")
        return ExitCode.USAGE_ERROR

    logging.info("DECODE finished successfully, %s symbols reconstructed.", y.length)
    return ExitCode.SUCCESS
