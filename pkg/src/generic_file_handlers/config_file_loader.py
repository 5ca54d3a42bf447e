import itertools
import logging
from copy import copy
from typing import Any, Callable

from src.config import ExperimentConfig
from src.exception import ParsingError
from src.generic_file_handlers.plain_file_handler import load_file
from src.utils import split_into_list, to_float, to_fraction, to_int

_SCALAR_CONVERTERS: dict[str, Callable[[str], Any]] = {
    "ell": to_int,
    "delta": to_float,
    "trials": to_int,
    "builds": to_int,
    "horizon_n": to_int,
    "level": to_int,
    "max_exhaustive_length": to_int,
    "pair_count": to_int,
    "codebook_size": to_int,
    "frontier_runs": to_int,
    "sweep_seeds": to_int,
    "seed": to_int,
}


def parse_key_values(content: str) -> dict[str, str]:
    """
    Parse flat "key = value" text. Empty lines and everything after # are ignored.
    :param content:
    :return: Raw values by key.
    :raises ParsingError: On line without "=" or repeated key.
    """
    values: dict[str, str] = {}
    for line_number, line in enumerate(content.splitlines(), start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ParsingError(f"Line {line_number} '{line}' is not in 'key = value' format.")
        key, value = (part.strip() for part in line.split("=", 1))
        if key in values:
            raise ParsingError(f"Key '{key}' is set more than once (line {line_number}).")
        values[key] = value
    return values


def _convert_list(key: str, raw_value: str, converter: Callable[[str], Any]) -> list:
    converted = split_into_list(raw_value, converter)
    if not converted or None in converted:
        raise ParsingError(f"Value '{raw_value}' of key '{key}' is not a comma separated list of numbers.")
    return converted


def experiment_configs_from_text(content: str) -> list[ExperimentConfig]:
    """
    Build experiment configurations from "key = value" text. Keys p and distortion may hold comma separated
    lists, one configuration is created for every (p, distortion) combination.
    :param content:
    :return: Configurations in order p major, distortion minor.
    :raises ParsingError: On unknown key or value that fails to convert.
    """
    raw_values = parse_key_values(content)
    base = ExperimentConfig()
    p_values = [base.p]
    distortion_values = [base.distortion]
    overrides: dict[str, Any] = {}

    for key, raw_value in raw_values.items():
        if key == "p":
            p_values = _convert_list(key, raw_value, to_float)
        elif key == "distortion":
            distortion_values = _convert_list(key, raw_value, to_fraction)
        elif key == "n_values":
            overrides[key] = _convert_list(key, raw_value, to_int)
        elif key == "checks":
            overrides[key] = split_into_list(raw_value, str)
        elif key == "output_path":
            overrides[key] = raw_value
        elif key in _SCALAR_CONVERTERS:
            converted = _SCALAR_CONVERTERS[key](raw_value)
            if converted is None:
                raise ParsingError(f"Value '{raw_value}' of key '{key}' failed to convert to number.")
            overrides[key] = converted
        else:
            raise ParsingError(f"Unknown experiment configuration key '{key}'.")

    # every cell gets its own copy of list values
    configs = [
        ExperimentConfig(p=p, distortion=distortion, **{key: copy(value) for key, value in overrides.items()})
        for p, distortion in itertools.product(p_values, distortion_values)
    ]
    logging.debug("Loaded %s experiment cells.", len(configs))
    return configs


def load_experiment_configs(filepath: str) -> list[ExperimentConfig]:
    """
    Load experiment configuration file.
    :param filepath:
    :return: One configuration per parameter cell.
    :raises ParsingError:
    """
    return experiment_configs_from_text(load_file(filepath))
