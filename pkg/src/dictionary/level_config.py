import math
from dataclasses import dataclass, field

from src.matching.probabilities import match_log2_probability, optimal_type_sequence
from src.models import DistortionBudget, SourceModel

DEFAULT_DELTA = 0.01

# 2^1000 is far above any level a realistic horizon reaches
_MAX_EXACT_LOG2_SIZE = 1000


def level_size(length: int, source: SourceModel, distortion: DistortionBudget) -> int:
    """
    Target live codelet count M_L = ceil(L^2 / p_L), p_L being the prefix-wise match probability of the canonical
    sequence of optimal reproduction type. Not capped by available candidates.
    :param length: Depth L >= 1.
    :param source:
    :param distortion:
    :return: M_L.
    """
    if length < 1:
        raise ValueError(f"Level depth needs to be at least 1, got {length}.")
    log2_match = match_log2_probability(optimal_type_sequence(length, source, distortion), distortion, source)
    if math.isinf(log2_match):
        return 1 << _MAX_EXACT_LOG2_SIZE
    log2_size = 2.0 * math.log2(length) - log2_match
    if log2_size >= _MAX_EXACT_LOG2_SIZE:
        return 1 << math.ceil(log2_size)
    return math.ceil(length * length / 2.0 ** log2_match)


def default_ell(horizon_n: int) -> int:
    """
    Base level width max(2, ceil(log2 log2 n)).
    """
    if horizon_n < 4:
        return 2
    return max(2, math.ceil(math.log2(math.log2(horizon_n))))


@dataclass(slots=True)
class LevelConfig:
    """
    Parameters of the idealized level-structured dictionary.
    :param ell: Base level width, levels sit at depths k * ell.
    :param horizon_n: Input length known in advance.
    :param delta: Frontier give-up parameter.
    :param source: Source model the level sizes are computed for.
    :param distortion: Distortion budget.
    :param level_sizes: Capped M_L per depth, filled lazily.
    """

    ell: int
    horizon_n: int
    delta: float
    source: SourceModel
    distortion: DistortionBudget
    level_sizes: dict[int, int] = field(default_factory=dict)

    def __post_init__(self):
        if self.ell < 1:
            raise ValueError(f"Level width needs to be at least 1, got {self.ell}.")
        if self.horizon_n < 0:
            raise ValueError(f"Horizon needs to be nonnegative, got {self.horizon_n}.")
        if not 0.0 < self.delta < 1.0:
            raise ValueError(f"Delta needs to be from interval (0, 1), got {self.delta}.")

    def size_at(self, depth: int) -> int:
        """
        Live codelet capacity at given depth, min(M_L, M_{L-ell} * 2^ell) with M_0 = 1.
        :param depth: Multiple of ell.
        :return: Capped M_L.
        """
        if depth % self.ell != 0 or depth < 0:
            raise ValueError(f"Depth {depth} is not a multiple of level width {self.ell}.")
        below = 1
        for level_depth in range(self.ell, depth + 1, self.ell):
            if level_depth not in self.level_sizes:
                uncapped = level_size(level_depth, self.source, self.distortion)
                self.level_sizes[level_depth] = min(uncapped, below << self.ell)
            below = self.level_sizes[level_depth]
        return below

    def frontier_limit(self, depth: int) -> float:
        """
        Give-up threshold (k ell)^4 / delta for the frontier at depth k ell.
        """
        return depth ** 4 / self.delta
