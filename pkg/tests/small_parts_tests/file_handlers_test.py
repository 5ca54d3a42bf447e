import pandas as pd
import pytest

from src.exception import FileWritingError, ParsingError
from src.generic_file_handlers.binary_file_handler import read_bytes, write_bytes
from src.generic_file_handlers.csv_handler import save_dataframe_to_csv
from src.generic_file_handlers.plain_file_handler import load_file


def test_bytes_are_written_and_read(tmp_path):
    filepath = str(tmp_path / "data.bin")

    write_bytes(filepath, b"\x00\xffCLP")

    assert read_bytes(filepath) == b"\x00\xffCLP"


def test_missing_files_are_parsing_errors(tmp_path):
    with pytest.raises(ParsingError):
        read_bytes(str(tmp_path / "missing.bin"))
    with pytest.raises(ParsingError):
        load_file(str(tmp_path / "missing.txt"))


def test_writing_into_missing_folder_fails(tmp_path):
    with pytest.raises(FileWritingError):
        write_bytes(str(tmp_path / "missing" / "data.bin"), b"")


def test_csv_keeps_nan_and_creates_folder(tmp_path):
    # arrange
    filepath = str(tmp_path / "out" / "table.csv")
    dataframe = pd.DataFrame({"n": [1, 2], "gap": [0.5, float("nan")]})

    # act
    save_dataframe_to_csv(dataframe, filepath)
    loaded = pd.read_csv(filepath)

    # assert
    assert loaded["n"].tolist() == [1, 2]
    assert loaded["gap"].iloc[0] == 0.5
    assert pd.isna(loaded["gap"].iloc[1])
    assert "nan" in load_file(filepath)
