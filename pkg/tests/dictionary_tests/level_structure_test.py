import numpy as np
import pytest

from src.dictionary.level_config import LevelConfig, default_ell, level_size
from src.dictionary.level_structure import (
    admit_block,
    block_values,
    extension_table,
    idealized_build_init,
    live_set,
    partial_match_search,
    promote_to_next_level,
)
from src.exception import LevelFullError
from src.models import BitSequence, DistortionBudget, SourceModel
from tests.utils import naive_prefixwise_match


def _level_config(ell: int, distortion: str, level_sizes: dict[int, int], p: float = 0.5) -> LevelConfig:
    return LevelConfig(
        ell=ell,
        horizon_n=64,
        delta=0.01,
        source=SourceModel(p),
        distortion=DistortionBudget.of(distortion),
        level_sizes=dict(level_sizes),
    )


def _random_dictionary(cfg: LevelConfig, max_depth: int, promotions: int, seed: int):
    rng = np.random.default_rng(seed)
    tree = idealized_build_init(cfg)
    for block in range(1 << cfg.ell):
        admit_block(tree, block, cfg)
    for _ in range(promotions):
        candidates = [node for members in tree.live_sets.values() for node in members if node.depth < max_depth]
        node = candidates[int(rng.integers(0, len(candidates)))]
        try:
            promote_to_next_level(tree, node, cfg, int(rng.integers(0, 1 << cfg.ell)))
        except LevelFullError:
            pass
    return tree


@pytest.mark.parametrize(
    "length, p, distortion, expected",
    [(1, 0.5, "0", 2), (2, 0.5, "1/2", 8), (4, 0.5, "0", 256), (3, 0.5, "1/3", 36)],
)
def test_level_size(length, p, distortion, expected):
    assert level_size(length, SourceModel(p), DistortionBudget.of(distortion)) == expected


@pytest.mark.parametrize("distortion", ["0", "1/10", "1/4", "1/3"])
def test_level_size_is_nondecreasing(distortion):
    sizes = [level_size(length, SourceModel(0.5), DistortionBudget.of(distortion)) for length in range(1, 65)]
    assert all(later >= earlier for earlier, later in zip(sizes, sizes[1:]))


def test_level_size_is_capped_by_available_candidates():
    cfg = LevelConfig(ell=1, horizon_n=16, delta=0.01, source=SourceModel(0.5), distortion=DistortionBudget.of("1/2"))

    assert cfg.size_at(1) == 2
    assert cfg.size_at(2) == 4


def test_level_config_rejects_invalid_values():
    with pytest.raises(ValueError):
        LevelConfig(ell=0, horizon_n=16, delta=0.01, source=SourceModel(0.5), distortion=DistortionBudget.of(0))
    with pytest.raises(ValueError):
        LevelConfig(ell=2, horizon_n=16, delta=1.0, source=SourceModel(0.5), distortion=DistortionBudget.of(0))
    with pytest.raises(ValueError):
        _level_config(2, "0", {}).size_at(3)


def test_frontier_limit():
    assert _level_config(2, "1/4", {}).frontier_limit(4) == pytest.approx(4**4 / 0.01)


@pytest.mark.parametrize("horizon, expected", [(2, 2), (16, 2), (4096, 4), (1 << 16, 4), (1 << 18, 5)])
def test_default_ell(horizon, expected):
    assert default_ell(horizon) == expected


@pytest.mark.parametrize("ell", [1, 2, 3])
def test_build_init_materializes_all_blocks(ell):
    tree = idealized_build_init(_level_config(ell, "0", {}))

    assert tree.leaf_count == 1 << ell
    assert tree.codelets() == {format(block, f"0{ell}b") for block in range(1 << ell)}
    assert tree.live_sets == {}


def test_promotion_admits_matched_extension():
    # arrange
    cfg = _level_config(1, "1/2", {1: 2, 2: 4})
    tree = idealized_build_init(cfg)
    admit_block(tree, 0, cfg)
    node = tree.find("0")

    # act
    extension = promote_to_next_level(tree, node, cfg, 1)

    # assert
    assert extension.label() == "01"
    assert [member.label() for member in live_set(tree, 2)] == ["01"]
    assert len(node.children) == 2
    assert extension.live_index == 0


def test_promotion_into_full_level_leaves_tree_unchanged():
    cfg = _level_config(1, "1/2", {1: 2, 2: 1})
    tree = idealized_build_init(cfg)
    admit_block(tree, 0, cfg)
    admit_block(tree, 1, cfg)
    promote_to_next_level(tree, tree.find("0"), cfg, 1)
    node_count = tree.node_count

    with pytest.raises(LevelFullError):
        promote_to_next_level(tree, tree.find("1"), cfg, 0)
    assert tree.find("1").is_leaf
    assert tree.node_count == node_count
    assert len(live_set(tree, 2)) == 1


def test_admitting_into_full_first_level_is_refused():
    cfg = _level_config(2, "0", {2: 1})
    tree = idealized_build_init(cfg)

    assert admit_block(tree, 3, cfg)
    assert not admit_block(tree, 3, cfg)
    with pytest.raises(LevelFullError):
        admit_block(tree, 0, cfg)


def test_only_live_codelets_are_promoted():
    cfg = _level_config(1, "0", {1: 2, 2: 4})
    tree = idealized_build_init(cfg)

    with pytest.raises(ValueError):
        promote_to_next_level(tree, tree.find("0"), cfg, 0)


def test_extension_table_of_single_bit():
    # at depth 0 a matching bit keeps budget floor(1/2) = 0, a mismatch overdraws it
    assert extension_table(1, 1, 2, 0) == (0, -1)
    assert extension_table(2, 1, 2, 2) == (1, 1, 0, 0)


def test_block_values():
    bits = np.array([0, 1, 1, 0], dtype=np.uint8)

    assert block_values(bits, 2) == [1, 3, 2]
    assert block_values(bits, 5) == []


def test_lossless_search_is_exact_trie_walk():
    cfg = _level_config(2, "0", {2: 4, 4: 16, 6: 64, 8: 256})
    tree = _random_dictionary(cfg, max_depth=8, promotions=150, seed=2)
    rng = np.random.default_rng(4)
    for _ in range(40):
        x = BitSequence.from_array(rng.integers(0, 2, 10))

        result = partial_match_search(tree, x, DistortionBudget.of(0), cfg)

        assert all(size <= 1 for size in result.frontier.sizes.values())
        if result.codelet is not None:
            assert result.codelet.label() == str(x)[: result.codelet.depth]


def test_search_without_first_level_match_finds_nothing():
    cfg = _level_config(2, "0", {2: 4})
    tree = idealized_build_init(cfg)
    admit_block(tree, 0, cfg)

    result = partial_match_search(tree, BitSequence.from_string("1111"), DistortionBudget.of(0), cfg)

    assert result.codelet is None
    assert result.frontier.sizes == {}
    assert not result.give_up


@pytest.mark.parametrize("distortion", ["1/10", "1/4", "1/3", "1/2"])
@pytest.mark.parametrize("ell", [1, 2, 3])
def test_search_agrees_with_brute_force(distortion, ell):
    # arrange
    budget = DistortionBudget.of(distortion)
    sizes = {depth: 1 << depth for depth in range(ell, 13, ell)}
    cfg = _level_config(ell, distortion, sizes)
    tree = _random_dictionary(cfg, max_depth=12 - ell, promotions=300, seed=ell)
    live = [node for members in tree.live_sets.values() for node in members]
    rng = np.random.default_rng(ell * 10)

    for _ in range(40):
        length = int(rng.integers(ell, 25))
        x = tuple(int(bit) for bit in rng.integers(0, 2, length))

        # act
        result = partial_match_search(tree, BitSequence.from_array(x), budget, cfg)

        # assert
        matching = [
            node
            for node in live
            if node.depth <= length
            and naive_prefixwise_match(x[: node.depth], tuple(node.bits().bits.tolist()), budget.value)
        ]
        for depth, members in result.frontier.levels.items():
            assert {node.ordinal for node, _ in members} == {node.ordinal for node in matching if node.depth == depth}
        if not matching:
            assert result.codelet is None
            continue
        deepest = max(node.depth for node in matching)
        expected = min((node for node in matching if node.depth == deepest), key=lambda node: node.ordinal)
        assert result.codelet is expected
        assert result.node_visits <= (1 << ell) * (1 + sum(result.frontier.sizes.values()))
