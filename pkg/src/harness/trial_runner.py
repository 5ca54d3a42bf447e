import logging
from multiprocessing import Pool
from typing import Callable, Iterable, TypeVar

ResultT = TypeVar("ResultT")


def run_trials(func: Callable[..., ResultT], arg_tuples: Iterable[tuple], process_count: int) -> list[ResultT]:
    """
    Run func for every argument tuple, in worker processes if more than one is allowed. Results come back in the
    order of the arguments regardless of which worker finished first.
    :param func: Module level function (needs to be picklable).
    :param arg_tuples: Arguments of each call.
    :param process_count: Maximum number of worker processes.
    :return: Results in argument order.
    """
    arg_tuples = list(arg_tuples)
    if process_count <= 1 or len(arg_tuples) <= 1:
        return [func(*args) for args in arg_tuples]
    logging.debug("Running %s trials of %s in %s processes.", len(arg_tuples), func.__name__, process_count)
    with Pool(min(process_count, len(arg_tuples))) as pool:
        return pool.starmap(func, arg_tuples)


def split_evenly(total: int, parts: int) -> list[int]:
    """
    Split total into parts sizes differing by at most one, larger ones first.
    """
    base, extra = divmod(total, parts)
    return [base + (1 if index < extra else 0) for index in range(parts)]
