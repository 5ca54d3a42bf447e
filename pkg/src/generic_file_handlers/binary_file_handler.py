import logging

from src.exception import FileWritingError, ParsingError


def read_bytes(filepath: str) -> bytes:
    """
    Load whole binary file.
    :param filepath:
    :return: File content.
    :raises ParsingError:
    """
    try:
        with open(filepath, "rb") as f:
            return f.read()
    except OSError as ex:
        raise ParsingError(f"Failed to read file {filepath}: {ex}") from ex


def write_bytes(filepath: str, content: bytes) -> None:
    """
    Write bytes into given filepath, replacing the file if it exists.
    :param filepath:
    :param content:
    :raises FileWritingError:
    """
    try:
        with open(filepath, "wb") as f:
            f.write(content)
        logging.info("Saved %s bytes into %s", len(content), filepath)
    except OSError as ex:
        raise FileWritingError(f"Failed to write file {filepath}: {ex}") from ex
