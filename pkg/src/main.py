import argparse
import logging
import sys
from fractions import Fraction
from typing import NoReturn, Optional, Sequence

from src.codec.codec_manager import run_decode, run_encode
from src.config import CHECK_NAMES, Config
from src.exception import ParsingError
from src.generic_file_handlers.config_file_loader import load_experiment_configs
from src.harness.harness_manager import run_analysis
from src.harness.rd_table import DEFAULT_TABLE_LENGTHS, rd_table
from src.models import DistortionBudget, ExitCode, SourceModel
from src.utils import split_into_list, to_fraction, to_int

_HANDLER_NAME_PREFIX = "clp-"


class CliArgumentParser(argparse.ArgumentParser):
    """
    Argument parser exiting with the usage error code of the application.
    """

    def error(self, message: str) -> NoReturn:
        self.print_usage(sys.stderr)
        self.exit(ExitCode.USAGE_ERROR, f"{self.prog}: error: {message}\n")


def _fraction_argument(value: str) -> Fraction:
    fraction = to_fraction(value)
    if fraction is None:
        raise argparse.ArgumentTypeError(f"'{value}' is not a number or NUM/DEN fraction")
    return fraction


def _int_argument(value: str) -> int:
    converted = to_int(value)
    if converted is None:
        raise argparse.ArgumentTypeError(f"'{value}' is not an integer")
    return converted


def _int_list_argument(value: str) -> list[int]:
    converted = split_into_list(value, to_int)
    if not converted or None in converted:
        raise argparse.ArgumentTypeError(f"'{value}' is not a comma separated list of integers")
    return converted


def build_parser() -> argparse.ArgumentParser:
    """
    Command line interface definition.
    """
    parser = CliArgumentParser(prog="clp", description="Lossy compression of binary sources by codelet parsing.")
    subparsers = parser.add_subparsers(dest="command", required=True, parser_class=CliArgumentParser)

    encode = subparsers.add_parser("encode", help="Encode a file.")
    encode.add_argument("--in", dest="input_path", required=True)
    encode.add_argument("--out", dest="output_path", required=True)
    encode.add_argument("--distortion", type=_fraction_argument, required=True, help="Distortion budget NUM/DEN.")
    encode.add_argument("--p", type=_fraction_argument, help="Source probability of one, unknown if omitted.")
    encode.add_argument("--variant", choices=["practical", "idealized"])
    encode.add_argument("--relation", choices=["full-codelet", "prefix-wise"])
    encode.add_argument("--ell", type=_int_argument, help="Base level width of the idealized variant.")
    encode.add_argument("--delta", type=float, help="Frontier give-up parameter of the idealized variant.")
    encode.add_argument("--seed", type=_int_argument, help="Recorded for bookkeeping, encoders are deterministic.")
    encode.add_argument("--bits", type=_int_argument, help="Encode only the first BITS bits of the file.")

    decode = subparsers.add_parser("decode", help="Decode a stream file.")
    decode.add_argument("--in", dest="input_path", required=True)
    decode.add_argument("--out", dest="output_path", required=True)
    decode.add_argument("--reference", help="Original input, distortion of the reconstruction is logged.")

    rd = subparsers.add_parser("rd", help="Print rate-distortion quantities of a Bernoulli source.")
    rd.add_argument("--p", type=_fraction_argument, required=True)
    rd.add_argument("--distortion", type=_fraction_argument, required=True)
    rd.add_argument("--step", type=float, default=0.05, help="Step of the reproduction type grid.")
    rd.add_argument("--lengths", type=_int_list_argument, default=DEFAULT_TABLE_LENGTHS)

    analyze = subparsers.add_parser("analyze", help="Run verification checks.")
    analyze.add_argument("--check", help=f"Comma separated subset of {CHECK_NAMES} or all, overrides the config file.")
    analyze.add_argument("--config", dest="config_path", required=True)
    analyze.add_argument("--out", dest="output_path")
    return parser


def configure_logging(config: Config) -> None:
    """
    Configures logging based on configuration - one std log stream, optionally full and filtered file logs.
    :param config: Application configuration.
    """
    logging_level = logging.DEBUG if config.logging_debug else logging.INFO
    root_logger = logging.getLogger()
    root_logger.setLevel(logging_level)
    formatter = logging.Formatter("%(asctime)s %(levelname)s: %(message)s (%(filename)s:%(lineno)d)")
    for handler in list(root_logger.handlers):
        if (handler.get_name() or "").startswith(_HANDLER_NAME_PREFIX):
            root_logger.removeHandler(handler)
            handler.close()

    handlers: list[logging.Handler] = []
    # logging to the stderr
    handlers.append(logging.StreamHandler())
    if config.full_log_path:
        handlers.append(logging.FileHandler(config.full_log_path))
    if config.filtered_log_path:
        # logging to file filtering info/debug out
        filtered_log_file_handler = logging.FileHandler(config.filtered_log_path)
        filtered_log_file_handler.setLevel(logging.WARNING)
        handlers.append(filtered_log_file_handler)

    for index, handler in enumerate(handlers):
        handler.set_name(f"{_HANDLER_NAME_PREFIX}{index}")
        handler.setFormatter(formatter)
        root_logger.addHandler(handler)

    logging.debug("Starting codelet parsing app with following configuration: %s", config)


def apply_encode_arguments(config: Config, args: argparse.Namespace) -> None:
    """
    Command line values override the environment defaults.
    """
    codec = config.codec
    codec.distortion = args.distortion
    if args.p is not None:
        codec.source_p = args.p
    if args.variant is not None:
        codec.variant = args.variant
    if args.relation is not None:
        codec.relation = args.relation
    if args.ell is not None:
        codec.ell = args.ell
    if args.delta is not None:
        codec.delta = args.delta
    if args.seed is not None:
        codec.seed = args.seed
    if args.bits is not None:
        codec.bits = args.bits


def run_rd(args: argparse.Namespace) -> ExitCode:
    """
    Print rate-distortion table of given source and distortion.
    """
    logging.info("RD TABLE is starting")
    try:
        source = SourceModel(float(args.p))
        distortion = DistortionBudget(args.distortion)
        if args.step <= 0.0 or any(length < 1 for length in args.lengths):
            raise ValueError("Grid step and phrase lengths need to be positive.")
        table = rd_table(source, distortion, args.step, args.lengths)
    except ValueError as ex:
        logging.error(ex)
        logging.info("RD TABLE failed.")
        return ExitCode.USAGE_ERROR
    print(table.render())
    logging.info("RD TABLE finished successfully.")
    return ExitCode.SUCCESS


def run_analyze(config: Config, args: argparse.Namespace) -> ExitCode:
    """
    Load experiment cells and run the requested checks.
    """
    try:
        configs = load_experiment_configs(args.config_path)
    except ParsingError as ex:
        logging.error(ex)
        return ExitCode.USAGE_ERROR
    output_path = args.output_path or configs[0].output_path
    for cfg in configs:
        if args.check:
            cfg.checks = split_into_list(args.check, str)
        cfg.output_path = output_path
    return run_analysis(configs, output_path, config.max_process_count)


def run_cli(argv: Optional[Sequence[str]] = None) -> int:
    """
    Parse arguments, configure the app and run the selected command.
    :param argv: Arguments without program name, sys.argv is used if None.
    :return: Exit code.
    """
    args = build_parser().parse_args(argv)
    config = Config()
    configure_logging(config)
    try:
        if args.command == "encode":
            apply_encode_arguments(config, args)
        config.validate()
    except ValueError as ex:
        logging.error("Invalid configuration: %s", ex)
        return ExitCode.USAGE_ERROR

    if args.command == "encode":
        exit_code = run_encode(config.codec, args.input_path, args.output_path)
    elif args.command == "decode":
        exit_code = run_decode(args.input_path, args.output_path, args.reference)
    elif args.command == "rd":
        exit_code = run_rd(args)
    else:
        exit_code = run_analyze(config, args)
    logging.info("App finished running.")
    return int(exit_code)


def main():
    """
    Application entrypoint.
    """
    sys.exit(run_cli())


if __name__ == "__main__":
    main()
