from dataclasses import dataclass, field
from functools import lru_cache
from typing import Optional, Sequence

import numpy as np

from src.dictionary.codebook_tree import CodebookTree, TrieNode
from src.dictionary.level_config import LevelConfig
from src.exception import LevelFullError
from src.models import BitSequence, DistortionBudget


@dataclass(slots=True)
class SearchFrontier:
    """
    Partial matches per depth: every live node of that depth whose string prefix-wise matches the input prefix,
    paired with its mismatch count.
    """

    levels: dict[int, list[tuple[TrieNode, int]]] = field(default_factory=dict)

    @property
    def sizes(self) -> dict[int, int]:
        return {depth: len(members) for depth, members in self.levels.items()}


@dataclass(slots=True)
class SearchResult:
    """
    Outcome of the frontier search.
    :param codelet: Deepest matching live codelet found, None if nothing matched.
    :param frontier: Frontier sets built during the search.
    :param give_up: True if some frontier outgrew its limit and the search stopped.
    :param node_visits: Number of dictionary nodes examined.
    """

    codelet: Optional[TrieNode]
    frontier: SearchFrontier
    give_up: bool
    node_visits: int


def idealized_build_init(cfg: LevelConfig) -> CodebookTree:
    """
    Dictionary with all 2^ell blocks materialized as level-one candidates and no live codelets yet.
    :param cfg:
    :return: Fresh tree with ell-bit edges.
    """
    tree = CodebookTree(edge_width=cfg.ell)
    tree.expand(tree.root)
    return tree


def live_set(tree: CodebookTree, depth: int) -> list[TrieNode]:
    return tree.live_sets.get(depth, [])


def _admit(tree: CodebookTree, node: TrieNode) -> None:
    members = tree.live_sets.setdefault(node.depth, [])
    node.live_index = len(members)
    members.append(node)
    node.parent.live_children.append(node)


def admit_block(tree: CodebookTree, block: int, cfg: LevelConfig) -> bool:
    """
    Make the level-one candidate with given block live, if there is room.
    :param tree:
    :param block: Block value (ell bits, first bit most significant).
    :param cfg:
    :return: True if the codelet was admitted now.
    :raises LevelFullError: If level one is already full.
    """
    node = tree.root.children[block]
    if node.is_live:
        return False
    if len(live_set(tree, cfg.ell)) >= cfg.size_at(cfg.ell):
        raise LevelFullError(f"Level {cfg.ell} already holds {cfg.size_at(cfg.ell)} codelets.")
    _admit(tree, node)
    return True


def promote_to_next_level(tree: CodebookTree, node: TrieNode, cfg: LevelConfig, block: int) -> TrieNode:
    """
    Give live codelet its 2^ell extensions as candidates and admit the one spelled by given block.
    :param tree:
    :param node: Live codelet at depth k * ell.
    :param cfg:
    :param block: Extension block matched during parsing.
    :return: The admitted (or already live) extension.
    :raises LevelFullError: If the next level is full, tree stays unchanged.
    :raises ValueError: If node is not live.
    """
    if not node.is_live:
        raise ValueError(f"Only live codelets can be promoted, '{node.label()}' is not live.")
    if not node.is_leaf and node.children[block].is_live:
        return node.children[block]
    target_depth = node.depth + cfg.ell
    if len(live_set(tree, target_depth)) >= cfg.size_at(target_depth):
        raise LevelFullError(f"Level {target_depth} already holds {cfg.size_at(target_depth)} codelets.")
    if node.is_leaf:
        tree.expand(node)
    extension = node.children[block]
    _admit(tree, extension)
    return extension


@lru_cache(maxsize=4096)
def extension_table(ell: int, numerator: int, denominator: int, depth: int) -> tuple[int, ...]:
    """
    For every xor pattern of an ell-bit extension below depth, the largest mismatch count the parent can carry so
    that all extended prefixes stay within budget: min over j of floor(D (depth + j)) - mismatches in first j bits.
    """
    table = []
    for pattern in range(1 << ell):
        accumulated = 0
        slack = None
        for j in range(1, ell + 1):
            accumulated += (pattern >> (ell - j)) & 1
            allowed = (numerator * (depth + j)) // denominator - accumulated
            slack = allowed if slack is None else min(slack, allowed)
        table.append(slack)
    return tuple(table)


def block_values(bits: np.ndarray, ell: int) -> list[int]:
    """
    Value of the ell-bit block starting at every position (first bit most significant).
    :param bits: Unpacked input.
    :param ell:
    :return: List of length len(bits) - ell + 1 (empty if shorter than ell).
    """
    if bits.size < ell:
        return []
    weights = 1 << np.arange(ell - 1, -1, -1, dtype=np.int64)
    windows = np.lib.stride_tricks.sliding_window_view(bits.astype(np.int64), ell)
    return (windows @ weights).tolist()


def search_levels(
    tree: CodebookTree,
    blocks: Sequence[int],
    position: int,
    remaining: int,
    distortion: DistortionBudget,
    cfg: LevelConfig,
) -> SearchResult:
    """
    Frontier search from given input position. Level one scans the live level-one codelets, every further level
    checks only live extensions of the previous frontier, which is complete because prefix-wise matching is closed
    under taking prefixes.
    :param tree:
    :param blocks: Output of block_values for the whole input.
    :param position: Parse position.
    :param remaining: Unparsed input length.
    :param distortion:
    :param cfg:
    :return: Search result.
    """
    ell = cfg.ell
    mask = (1 << ell) - 1
    popcounts = _popcounts(ell)
    frontier = SearchFrontier()
    node_visits = 0
    give_up = False
    deepest: list[tuple[TrieNode, int]] = []
    current = [(tree.root, 0)]
    depth = 0
    while depth + ell <= remaining:
        table = extension_table(ell, distortion.numerator, distortion.denominator, depth)
        input_block = blocks[position + depth]
        next_level = []
        for node, mismatches in current:
            for child in node.live_children:
                node_visits += 1
                pattern = (child.value & mask) ^ input_block
                if mismatches <= table[pattern]:
                    next_level.append((child, mismatches + popcounts[pattern]))
        depth += ell
        if not next_level:
            break
        frontier.levels[depth] = next_level
        deepest = next_level
        if len(next_level) > cfg.frontier_limit(depth):
            give_up = True
            break
        current = next_level

    codelet = min(deepest, key=lambda member: (member[0].ordinal, member[0].value))[0] if deepest else None
    return SearchResult(codelet=codelet, frontier=frontier, give_up=give_up, node_visits=node_visits)


@lru_cache(maxsize=32)
def _popcounts(ell: int) -> tuple[int, ...]:
    return tuple(value.bit_count() for value in range(1 << ell))


def partial_match_search(
    tree: CodebookTree, x: BitSequence, distortion: DistortionBudget, cfg: LevelConfig
) -> SearchResult:
    """
    Longest live codelet that prefix-wise matches the start of x.
    :param tree: Idealized dictionary.
    :param x: Input to match against (only the first levels that fit are used).
    :param distortion:
    :param cfg:
    :return: Search result, codelet None when no level-one codelet matches.
    """
    return search_levels(tree, block_values(x.bits, cfg.ell), 0, x.length, distortion, cfg)
