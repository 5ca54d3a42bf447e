from dataclasses import dataclass, field
from typing import Iterator, Optional, Sequence

from src.exception import NotALeafError
from src.models import BitSequence, DistortionBudget, MatchRelation


@dataclass(slots=True, eq=False)
class TrieNode:
    """
    Node of the codebook trie.
    :param depth: Length in bits of the string spelled from the root.
    :param ordinal: Creation order, used for deterministic tie-breaking.
    :param value: Spelled string as integer, first bit most significant.
    :param ones: Number of ones in the spelled string.
    :param parent: Parent node, None for the root.
    :param children: Child per edge label (ell-bit block), None where not materialized.
    :param max_leaf_depth: Depth of the deepest leaf in the subtree of this node.
    :param live_index: Position in the live set of its depth (idealized dictionary), None if not live.
    """

    depth: int
    ordinal: int
    value: int = 0
    ones: int = 0
    parent: Optional["TrieNode"] = None
    children: Optional[list[Optional["TrieNode"]]] = None
    max_leaf_depth: int = 0
    live_index: Optional[int] = None
    live_children: list["TrieNode"] = field(default_factory=list)

    @property
    def is_leaf(self) -> bool:
        return self.children is None

    @property
    def is_live(self) -> bool:
        return self.live_index is not None

    def bits(self) -> BitSequence:
        """
        Codelet spelled by the root-to-node path.
        """
        return BitSequence.from_int(self.value, self.depth)

    def label(self) -> str:
        """
        Codelet as text, e.g. "011".
        """
        return format(self.value, f"0{self.depth}b") if self.depth else ""


class CodebookTree:
    """
    Trie whose edges carry blocks of edge_width bits. With edge_width 1 and every internal node having both
    children, the leaves are exactly the practical codebook. The idealized dictionary uses ell-bit edges and keeps
    per-depth live sets on top of the materialized candidates.
    """

    def __init__(self, edge_width: int = 1):
        if edge_width < 1:
            raise ValueError("Edge width needs to be at least 1.")
        self.edge_width = edge_width
        self._next_ordinal = 0
        self.root = self._new_node(depth=0, value=0, ones=0, parent=None)
        self.leaf_count = 1
        self.live_sets: dict[int, list[TrieNode]] = {}

    def _new_node(self, depth: int, value: int, ones: int, parent: Optional[TrieNode]) -> TrieNode:
        node = TrieNode(depth=depth, ordinal=self._next_ordinal, value=value, ones=ones, parent=parent)
        node.max_leaf_depth = depth
        self._next_ordinal += 1
        return node

    @property
    def node_count(self) -> int:
        return self._next_ordinal

    def expand(self, node: TrieNode) -> list[TrieNode]:
        """
        Materialize all 2^edge_width children of a leaf.
        :param node: Current leaf.
        :return: New children in label order.
        :raises NotALeafError: If node already has children.
        """
        if not node.is_leaf:
            raise NotALeafError(f"Node '{node.label()}' is not a leaf.")
        width = self.edge_width
        children = []
        for block in range(1 << width):
            children.append(
                self._new_node(
                    depth=node.depth + width,
                    value=(node.value << width) | block,
                    ones=node.ones + block.bit_count(),
                    parent=node,
                )
            )
        node.children = children
        self.leaf_count += len(children) - 1
        self._propagate_max_leaf_depth(node, node.depth + width)
        return children

    @staticmethod
    def _propagate_max_leaf_depth(node: TrieNode, depth: int) -> None:
        current = node
        while current is not None and current.max_leaf_depth < depth:
            current.max_leaf_depth = depth
            current = current.parent

    def leaves(self) -> Iterator[TrieNode]:
        """
        Iterate current leaves in depth-first, label order.
        """
        stack = [self.root]
        while stack:
            node = stack.pop()
            if node.is_leaf:
                yield node
            else:
                stack.extend(reversed(node.children))

    def codelets(self) -> set[str]:
        """
        Current leaves as text, handy for inspection.
        """
        return {leaf.label() for leaf in self.leaves()}

    def find(self, label: str) -> Optional[TrieNode]:
        """
        Node spelling given text, None if not materialized. Label length needs to be multiple of edge width.
        """
        node = self.root
        width = self.edge_width
        for start in range(0, len(label), width):
            if node.is_leaf:
                return None
            node = node.children[int(label[start:start + width], 2)]
        return node


def init_practical() -> CodebookTree:
    """
    Practical codebook C_0 = {0, 1}.
    """
    tree = CodebookTree(edge_width=1)
    tree.expand(tree.root)
    return tree


def extend_codelet(tree: CodebookTree, leaf: TrieNode) -> CodebookTree:
    """
    Replace chosen codelet by its two one-bit extensions.
    :param tree: Practical codebook.
    :param leaf: Current leaf.
    :return: The same (updated) tree.
    :raises NotALeafError: If the node is not a current codelet.
    """
    if leaf is tree.root:
        raise NotALeafError("Root is never a codelet.")
    tree.expand(leaf)
    return tree


def find_matches(
    tree: CodebookTree, unparsed: BitSequence, distortion: DistortionBudget, relation: MatchRelation
) -> list[TrieNode]:
    """
    Leaves whose codelet matches the equal-length prefix of unparsed input. Leaves longer than the input are not
    eligible.
    :param tree: Practical codebook.
    :param unparsed: Remaining input.
    :param distortion:
    :param relation:
    :return: Matching leaves ordered by creation.
    """
    window = unparsed.bits[: tree.root.max_leaf_depth].tolist()
    return find_matching_leaves(tree, window, unparsed.length, distortion, relation)


def find_matching_leaves(
    tree: CodebookTree,
    window: Sequence[int],
    remaining: int,
    distortion: DistortionBudget,
    relation: MatchRelation,
) -> list[TrieNode]:
    """
    Depth-first search of matching leaves. Prefix-wise search drops a branch as soon as some prefix exceeds the
    budget; full-codelet search drops it once mismatches exceed D times the deepest reachable leaf.
    :param tree: Practical codebook.
    :param window: Input bits starting at the parse position (at least min(max depth, remaining) of them).
    :param remaining: Number of unparsed input bits.
    :param distortion:
    :param relation:
    :return: Matching leaves ordered by creation.
    """
    numerator = distortion.numerator
    denominator = distortion.denominator
    prefix_wise = relation == MatchRelation.PREFIX_WISE
    matches = []
    stack = [(tree.root, 0)]
    while stack:
        node, mismatches = stack.pop()
        input_bit = window[node.depth] if node.depth < remaining else None
        if input_bit is None:
            continue
        for label, child in enumerate(node.children):
            child_mismatches = mismatches + (label != input_bit)
            if prefix_wise:
                if child_mismatches * denominator > numerator * child.depth:
                    continue
            elif child_mismatches * denominator > numerator * min(child.max_leaf_depth, remaining):
                continue
            if child.is_leaf:
                if child_mismatches * denominator <= numerator * child.depth:
                    matches.append(child)
            else:
                stack.append((child, child_mismatches))
    matches.sort(key=lambda leaf: leaf.ordinal)
    return matches
