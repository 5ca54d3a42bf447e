import logging
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from src.codec.bit_io import BitWriter
from src.codec.header import source_fraction
from src.dictionary.codebook_tree import CodebookTree, TrieNode
from src.dictionary.level_config import DEFAULT_DELTA, LevelConfig, default_ell
from src.dictionary.level_structure import (
    admit_block,
    block_values,
    idealized_build_init,
    promote_to_next_level,
    search_levels,
)
from src.exception import LengthMismatchError, LevelFullError
from src.models import (
    BitSequence,
    CodecVariant,
    DistortionBudget,
    EncodedStream,
    EncodeStats,
    Header,
    MatchRelation,
    ParseEvent,
    PhraseKind,
    SourceModel,
)

class RecordAlphabet:
    """
    Symbols of one idealized record: the live codelets that fit into the remaining input, deepest level first and by
    live index within a level, followed by the escape symbol. Encoder and decoder build it from the same dictionary
    state, so a record is a single truncated binary code over about log2 (live count + 1) bits.
    """

    def __init__(self, tree: CodebookTree, remaining: int):
        self.levels = [
            members for depth, members in sorted(tree.live_sets.items(), reverse=True) if members and depth <= remaining
        ]
        self.escape = sum(len(members) for members in self.levels)

    @property
    def size(self) -> int:
        return self.escape + 1

    def symbol_of(self, node: TrieNode) -> int:
        """
        :raises ValueError: If node is not an eligible live codelet.
        """
        offset = 0
        for members in self.levels:
            if members[0].depth == node.depth:
                return offset + node.live_index
            offset += len(members)
        raise ValueError(f"Codelet '{node.label()}' is not eligible for this record.")

    def node_of(self, symbol: int) -> Optional[TrieNode]:
        """
        Codelet of given symbol, None for the escape symbol.
        """
        for members in self.levels:
            if symbol < len(members):
                return members[symbol]
            symbol -= len(members)
        return None


@dataclass(slots=True)
class IdealizedEncodeResult:
    """
    Output of the idealized encoder, with instrumentation and the final dictionary.
    """

    y: BitSequence
    stream: EncodedStream
    events: list[ParseEvent]
    stats: EncodeStats
    tree: CodebookTree
    cfg: LevelConfig


def spell(value: int, width: int) -> list[int]:
    """
    Bits of value in width positions, most significant first.
    """
    return [(value >> shift) & 1 for shift in range(width - 1, -1, -1)]


def bits_value(bits: Sequence[int]) -> int:
    value = 0
    for bit in bits:
        value = (value << 1) | bit
    return value


class LevelUpdater:
    """
    Dictionary updates applied after every phrase, identically by encoder and decoder. After a codelet phrase the
    codelet waits; the next phrase's first ell reconstruction bits choose which extension of it is admitted one
    level deeper. A full-width escape admits its own block at level one.
    """

    def __init__(self, tree: CodebookTree, cfg: LevelConfig):
        self.tree = tree
        self.cfg = cfg
        self.pending: Optional[TrieNode] = None
        self.refused_count = 0

    def _promote_pending(self, block: int) -> None:
        if self.pending is None:
            return
        try:
            promote_to_next_level(self.tree, self.pending, self.cfg, block)
        except LevelFullError:
            self.refused_count += 1

    def after_codelet(self, node: TrieNode) -> None:
        self._promote_pending(node.value >> (node.depth - self.cfg.ell))
        self.pending = node

    def after_escape(self, raw_bits: Sequence[int]) -> None:
        if len(raw_bits) == self.cfg.ell:
            block = bits_value(raw_bits)
            self._promote_pending(block)
            try:
                admit_block(self.tree, block, self.cfg)
            except LevelFullError:
                self.refused_count += 1
        self.pending = None


def build_level_config(
    horizon_n: int,
    distortion: DistortionBudget,
    source: SourceModel,
    ell: Optional[int] = None,
    delta: float = DEFAULT_DELTA,
) -> LevelConfig:
    """
    Level configuration with defaults filled in. Source probability is rounded to the fraction stored in the stream
    header, so that decoder computes the same level sizes.
    """
    stored_source = SourceModel(float(source_fraction(source.p)))
    return LevelConfig(
        ell=ell if ell is not None else default_ell(horizon_n),
        horizon_n=horizon_n,
        delta=delta,
        source=stored_source,
        distortion=distortion,
    )


def encode_idealized(
    x: BitSequence,
    distortion: DistortionBudget,
    source: Optional[SourceModel] = None,
    cfg: Optional[LevelConfig] = None,
) -> IdealizedEncodeResult:
    """
    Idealized codelet parsing with known horizon. Every phrase is the deepest live codelet found by the frontier
    search, coded as one symbol of the record alphabet. When nothing matches or the search gives up, the escape
    symbol is followed by ell bits sent verbatim.
    :param x: Source sequence, length equal to the configured horizon.
    :param distortion:
    :param source: Source model, None for unknown statistics (empirical type of x is used and stored in header).
    :param cfg: Level configuration, built with defaults when None.
    :return: Reconstruction, stream, parse events, statistics and final dictionary.
    :raises LengthMismatchError: If x length differs from the configured horizon.
    """
    length = x.length
    if cfg is None:
        if source is None:
            source = SourceModel(x.count_ones() / length if length else 0.5)
            logging.info("Source statistics unknown, using empirical probability %.6f.", source.p)
        cfg = build_level_config(length, distortion, source)
    elif float(source_fraction(cfg.source.p)) != cfg.source.p:
        cfg = build_level_config(cfg.horizon_n, cfg.distortion, cfg.source, cfg.ell, cfg.delta)
    if cfg.horizon_n != length:
        raise LengthMismatchError(f"Input has {length} bits but horizon is {cfg.horizon_n}.")

    ell = cfg.ell
    bits = x.bits
    x_bits = bits.tolist()
    blocks = block_values(bits, ell)
    tree = idealized_build_init(cfg)
    updater = LevelUpdater(tree, cfg)
    writer = BitWriter()
    y_bits = np.zeros(length, dtype=np.uint8)
    events: list[ParseEvent] = []
    stats = EncodeStats()

    position = 0
    while position < length:
        remaining = length - position
        result = search_levels(tree, blocks, position, remaining, distortion, cfg)
        stats.node_visits += result.node_visits
        for depth, size in result.frontier.sizes.items():
            stats.record_frontier(depth, size)
        if result.give_up:
            stats.give_up_count += 1

        alphabet = RecordAlphabet(tree, remaining)
        if result.codelet is not None and not result.give_up:
            node = result.codelet
            level = node.depth // ell
            writer.write_truncated(alphabet.symbol_of(node), alphabet.size)
            phrase = spell(node.value, node.depth)
            events.append(
                ParseEvent(kind=PhraseKind.CODELET, codelet_bits=BitSequence.from_array(phrase), depth_level=level)
            )
            stats.codelet_count += 1
            stats.codelet_symbols += node.depth
            updater.after_codelet(node)
        else:
            phrase = x_bits[position:position + min(ell, remaining)]
            writer.write_truncated(alphabet.escape, alphabet.size)
            writer.write_bits(bits_value(phrase), len(phrase))
            events.append(ParseEvent(kind=PhraseKind.ESCAPE, codelet_bits=BitSequence.from_array(phrase)))
            stats.escape_count += 1
            updater.after_escape(phrase)
        y_bits[position:position + len(phrase)] = phrase
        position += len(phrase)

    stats.level_full_count = updater.refused_count
    stats.live_set_sizes = {depth: len(members) for depth, members in sorted(tree.live_sets.items())}
    header = Header(
        length=length,
        distortion=distortion,
        source_p=source_fraction(cfg.source.p),
        ell=ell,
        variant=CodecVariant.IDEALIZED,
        relation=MatchRelation.PREFIX_WISE,
    )
    stream = EncodedStream(header=header, payload=writer.to_bitstream())
    logging.debug(
        "Idealized encode of %s bits: %s codelets, %s escapes, %s give-ups, %s payload bits.",
        length,
        stats.codelet_count,
        stats.escape_count,
        stats.give_up_count,
        stream.payload.bit_length,
    )
    return IdealizedEncodeResult(
        y=BitSequence.from_array(y_bits), stream=stream, events=events, stats=stats, tree=tree, cfg=cfg
    )
