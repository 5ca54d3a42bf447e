from enum import IntEnum


class ExitCode(IntEnum):
    """
    Process exit codes of the command line interface.
    """

    SUCCESS = 0
    USAGE_ERROR = 1
    CORRUPT_STREAM = 2
    CHECK_FAILURE = 3
