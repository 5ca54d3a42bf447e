from fractions import Fraction

import numpy as np
import pytest

from src.config import Config
from src.main import apply_encode_arguments, build_parser, run_cli
from src.models import BitSequence, ExitCode
from tests.test_constants import EXAMPLE_EXPERIMENT_CONFIG_PATH
from tests.utils import random_sequence


@pytest.fixture
def source_path(tmp_path):
    path = tmp_path / "source.bin"
    path.write_bytes(random_sequence(np.random.default_rng(61), 800, 0.5).to_bytes())
    return path


@pytest.mark.parametrize(
    "argv",
    [
        [],
        ["compress"],
        ["encode", "--in", "a.bin", "--out", "b.clp"],
        ["encode", "--in", "a.bin", "--out", "b.clp", "--distortion", "half"],
        ["encode", "--in", "a.bin", "--out", "b.clp", "--distortion", "1/4", "--variant", "lz77"],
        ["decode", "--in", "a.clp"],
        ["rd", "--p", "0.5"],
    ],
)
def test_invalid_arguments_exit_with_usage_error(argv):
    with pytest.raises(SystemExit) as exit_info:
        run_cli(argv)

    assert exit_info.value.code == ExitCode.USAGE_ERROR


def test_encode_arguments_override_config():
    args = build_parser().parse_args(
        ["encode", "--in", "a", "--out", "b", "--distortion", "0.11", "--variant", "idealized", "--ell", "2^2"]
    )
    config = Config()

    apply_encode_arguments(config, args)

    assert config.codec.distortion == Fraction(11, 100)
    assert config.codec.variant == "idealized"
    assert config.codec.ell == 4


def test_out_of_range_distortion_is_usage_error(tmp_path, source_path):
    exit_code = run_cli(["encode", "--in", str(source_path), "--out", str(tmp_path / "s.clp"), "--distortion", "3/4"])

    assert exit_code == ExitCode.USAGE_ERROR


@pytest.mark.parametrize("variant", ["practical", "idealized"])
def test_encode_then_decode(tmp_path, source_path, variant):
    # arrange
    stream_path = str(tmp_path / "s.clp")
    output_path = str(tmp_path / "out.bin")

    # act
    encode_code = run_cli(
        ["encode", "--in", str(source_path), "--out", stream_path, "--distortion", "1/10", "--variant", variant]
    )
    decode_code = run_cli(["decode", "--in", stream_path, "--out", output_path, "--reference", str(source_path)])

    # assert
    assert (encode_code, decode_code) == (ExitCode.SUCCESS, ExitCode.SUCCESS)
    x = BitSequence.from_bytes(source_path.read_bytes())
    y = BitSequence.from_bytes((tmp_path / "out.bin").read_bytes())
    assert int(np.count_nonzero(x.bits != y.bits)) * 10 <= x.length


def test_corrupt_stream_exit_code(tmp_path):
    stream_path = tmp_path / "s.clp"
    stream_path.write_bytes(b"NOPE" + bytes(29))

    exit_code = run_cli(["decode", "--in", str(stream_path), "--out", str(tmp_path / "out.bin")])

    assert exit_code == ExitCode.CORRUPT_STREAM


def test_rd_table_is_printed(capsys):
    exit_code = run_cli(["rd", "--p", "1/2", "--distortion", "11/100", "--lengths", "8,16"])

    assert exit_code == ExitCode.SUCCESS
    assert "R(D)  = 0.500" in capsys.readouterr().out


def test_rd_with_invalid_step_is_usage_error():
    assert run_cli(["rd", "--p", "0.5", "--distortion", "1/4", "--step", "0"]) == ExitCode.USAGE_ERROR


def test_analyze_with_missing_config_is_usage_error(tmp_path):
    exit_code = run_cli(["analyze", "--config", str(tmp_path / "missing.conf")])

    assert exit_code == ExitCode.USAGE_ERROR


def test_analyze_with_selected_check(tmp_path):
    output_path = tmp_path / "reports.csv"

    exit_code = run_cli(
        ["analyze", "--config", EXAMPLE_EXPERIMENT_CONFIG_PATH, "--check", "cycle_lemma", "--out", str(output_path)]
    )

    assert exit_code == ExitCode.SUCCESS
    assert output_path.read_text(encoding="utf8").count("cycle_lemma") == 2
