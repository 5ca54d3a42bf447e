import logging
import os

import pandas as pd

from src.exception import FileWritingError
from src.utils import ensure_folder_exists

CSV_INVALID_VALUE_STRING = "nan"


def save_dataframe_to_csv(dataframe: pd.DataFrame, filepath: str) -> None:
    """
    Save dataframe into comma separated csv with header row, creating parent folder if needed.
    :param dataframe:
    :param filepath:
    :raises FileWritingError:
    """
    try:
        ensure_folder_exists(os.path.dirname(filepath))
        dataframe.to_csv(filepath, index=False, sep=",", encoding="utf8", na_rep=CSV_INVALID_VALUE_STRING)
        logging.info("Successfully saved csv into '%s'.", filepath)
    except OSError as ex:
        raise FileWritingError(f"Failed to save csv into {filepath}. {ex}") from ex
