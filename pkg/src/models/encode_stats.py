from dataclasses import dataclass, field


@dataclass(slots=True)
class EncodeStats:
    """
    Instrumentation of one idealized encode.
    :param max_frontier_sizes: Largest frontier seen per depth (depth in bits -> size).
    :param live_set_sizes: Live codelet count per depth at the end of encoding.
    :param escape_count: Number of phrases sent verbatim.
    :param give_up_count: Number of searches stopped because frontier outgrew its limit.
    :param level_full_count: Number of promotions refused because the target level was full.
    :param node_visits: Total dictionary nodes examined by all searches.
    :param codelet_count: Number of phrases represented by a codelet.
    :param codelet_symbols: Total length of codelet phrases.
    """

    max_frontier_sizes: dict[int, int] = field(default_factory=dict)
    live_set_sizes: dict[int, int] = field(default_factory=dict)
    escape_count: int = 0
    give_up_count: int = 0
    level_full_count: int = 0
    node_visits: int = 0
    codelet_count: int = 0
    codelet_symbols: int = 0

    def record_frontier(self, depth: int, size: int) -> None:
        if size > self.max_frontier_sizes.get(depth, 0):
            self.max_frontier_sizes[depth] = size

    @property
    def mean_codelet_length(self) -> float:
        return self.codelet_symbols / self.codelet_count if self.codelet_count else 0.0
