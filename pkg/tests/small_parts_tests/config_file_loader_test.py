from fractions import Fraction

import pytest

from src.exception import ParsingError
from src.generic_file_handlers.config_file_loader import (
    experiment_configs_from_text,
    load_experiment_configs,
    parse_key_values,
)
from tests.test_constants import EXAMPLE_EXPERIMENT_CONFIG_PATH


def test_key_values_ignore_comments_and_blank_lines():
    content = "# header\n\np = 0.5  # uniform\ndistortion=1/4\n"

    assert parse_key_values(content) == {"p": "0.5", "distortion": "1/4"}


@pytest.mark.parametrize("content", ["p 0.5", "p = 0.5\np = 0.3"])
def test_malformed_key_values_are_rejected(content):
    with pytest.raises(ParsingError):
        parse_key_values(content)


def test_cells_are_product_of_p_and_distortion():
    configs = experiment_configs_from_text("p = 0.3, 0.5\ndistortion = 1/10, 1/4, 0.11\nell = 3\nlevel = 6")

    assert [(cfg.p, cfg.distortion) for cfg in configs] == [
        (0.3, Fraction(1, 10)),
        (0.3, Fraction(1, 4)),
        (0.3, Fraction(11, 100)),
        (0.5, Fraction(1, 10)),
        (0.5, Fraction(1, 4)),
        (0.5, Fraction(11, 100)),
    ]
    assert all(cfg.ell == 3 and cfg.level == 6 for cfg in configs)


def test_cells_do_not_share_lists():
    configs = experiment_configs_from_text("p = 0.3, 0.5\nn_values = 64, 2^10")

    configs[0].n_values.append(5)
    configs[0].checks.append("symmetry")

    assert configs[1].n_values == [64, 1024]
    assert configs[1].checks == ["all"]


@pytest.mark.parametrize(
    "content", ["unknown_key = 3", "trials = many", "p = 0.3, x", "n_values = ", "distortion = 1/0"]
)
def test_invalid_values_are_rejected(content):
    with pytest.raises(ParsingError):
        experiment_configs_from_text(content)


def test_example_file_loads():
    # act
    configs = load_experiment_configs(EXAMPLE_EXPERIMENT_CONFIG_PATH)

    # assert
    assert len(configs) == 2
    assert [cfg.distortion for cfg in configs] == [Fraction(1, 10), Fraction(1, 4)]
    first = configs[0]
    assert (first.horizon_n, first.n_values, first.trials, first.seed) == (512, [256, 1024], 400, 11)
    assert first.checks == ["cycle_lemma", "ball_intersection", "frontier_growth"]
    for cfg in configs:
        cfg.validate()


def test_missing_file_is_parsing_error(tmp_path):
    with pytest.raises(ParsingError):
        load_experiment_configs(str(tmp_path / "missing.conf"))
