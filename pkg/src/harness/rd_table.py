import math
from dataclasses import dataclass
from typing import Sequence

import pandas as pd

from src.dictionary.level_config import level_size
from src.matching.probabilities import match_probability, optimal_type_sequence
from src.models import DistortionBudget, SourceModel
from src.rd_math.entropy import binary_entropy
from src.rd_math.rate_distortion import optimal_reproduction_type, rate_distortion, type_grid_table

DEFAULT_TABLE_LENGTHS = [8, 16, 32, 64]


@dataclass(slots=True)
class RateDistortionTable:
    """
    Rate-distortion quantities of one (p, D) pair.
    :param source_entropy: h(p).
    :param rate: R(p, D).
    :param optimal_type: q*.
    :param type_grid: I_m(q, p, D) over feasible grid types q.
    :param random_coding: Per-symbol cost (log2 M_L) / L of indexing a level of M_L codewords.
    """

    source_entropy: float
    rate: float
    optimal_type: float
    type_grid: pd.DataFrame
    random_coding: pd.DataFrame

    def render(self) -> str:
        """
        Human readable table for the command line.
        """
        lines = [
            f"h(p)  = {self.source_entropy:.6f}",
            f"R(D)  = {self.rate:.6f}",
            f"q*    = {self.optimal_type:.6f}",
            "",
            self.type_grid.to_string(index=False, float_format=lambda value: f"{value:.6f}"),
            "",
            self.random_coding.to_string(index=False, float_format=lambda value: f"{value:.6f}"),
        ]
        return "\n".join(lines)


def random_coding_rates(
    source: SourceModel, distortion: DistortionBudget, lengths: Sequence[int] = tuple(DEFAULT_TABLE_LENGTHS)
) -> pd.DataFrame:
    """
    Per-symbol cost of pointing into a random codebook of M_L = ceil(L^2 / p_L) codewords, for every phrase
    length L. Approaches R(D) slowly from above as L grows.
    :param source:
    :param distortion:
    :param lengths: Phrase lengths L >= 1.
    :return: Dataframe with columns L, p_L, M_L (log2), random_coding_rate.
    """
    rows = []
    for length in lengths:
        log2_size = math.log2(level_size(length, source, distortion))
        rows.append(
            {
                "L": length,
                "p_L": match_probability(optimal_type_sequence(length, source, distortion), distortion, source),
                "log2_M_L": log2_size,
                "random_coding_rate": log2_size / length,
            }
        )
    return pd.DataFrame(rows, columns=["L", "p_L", "log2_M_L", "random_coding_rate"])


def rd_table(
    source: SourceModel,
    distortion: DistortionBudget,
    step: float = 0.05,
    lengths: Sequence[int] = tuple(DEFAULT_TABLE_LENGTHS),
) -> RateDistortionTable:
    """
    Collect everything "clp rd" prints.
    :param source:
    :param distortion:
    :param step: Step of the reproduction type grid.
    :param lengths: Phrase lengths of the random coding rows.
    :return: Table.
    """
    grid = pd.DataFrame(type_grid_table(source, distortion, step), columns=["q", "lower_mutual_info"])
    return RateDistortionTable(
        source_entropy=binary_entropy(source.p),
        rate=rate_distortion(source, distortion),
        optimal_type=optimal_reproduction_type(source, distortion),
        type_grid=grid,
        random_coding=random_coding_rates(source, distortion, lengths),
    )
