"""Balanced rooted trees, paths, and their one-diagonal strong product.

Tree nodes are addressed by arrays of 1-based child choices.  An address
renders as a dotted string ("1.2.2", the root as "r"), and a product
vertex as "<node>@<path position>", for example "1.2.2@3" or "r@1".

The product of a tree T and a path on m vertices has vertex set
(node, position) and three kinds of edges:

* vertical:   (A+v, i) -- (A, i)      child to parent, same position
* horizontal: (A, i)   -- (A, i+1)    same node, consecutive positions
* diagonal:   (A+v, i) -- (A, i+1)    child to parent, next position

Stored edges always put the endpoint with the larger tree depth first,
or the smaller path position when depths agree.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Iterator, Mapping

from .errors import ShapeError, SizeLimitError

#: Hard cap on product vertices; construction fails beyond this.
VERTEX_LIMIT = 10**6


@dataclass(frozen=True)
class NodeIndex:
    """Tree-node address: the sequence of child choices from the root."""

    path: tuple[int, ...] = ()

    def __post_init__(self):
        path = tuple(self.path)
        object.__setattr__(self, "path", path)
        if not all(isinstance(v, int) and v >= 1 for v in path):
            raise ValueError(f"child choices must be positive integers: {path!r}")

    @property
    def depth(self) -> int:
        return len(self.path)

    @property
    def parent(self) -> "NodeIndex | None":
        if not self.path:
            return None
        return NodeIndex(self.path[:-1])

    def child(self, choice: int) -> "NodeIndex":
        return NodeIndex(self.path + (choice,))

    def __add__(self, other: "NodeIndex | int") -> "NodeIndex":
        return concat(self, other)

    def __str__(self) -> str:
        if not self.path:
            return "r"
        return ".".join(str(v) for v in self.path)

    @classmethod
    def parse(cls, text: str) -> "NodeIndex":
        if text == "r":
            return cls()
        try:
            return cls(tuple(int(part) for part in text.split(".")))
        except ValueError as exc:
            raise ValueError(f"bad node address {text!r}") from exc


ROOT = NodeIndex()


def concat(a: NodeIndex, b: "NodeIndex | int", height: int | None = None) -> NodeIndex:
    """Concatenate two addresses, or append one child choice.

    When ``height`` is given the combined address must not descend past
    it; that guard is what tree-aware callers rely on.
    """
    tail = (b,) if isinstance(b, int) else tuple(b.path)
    result = NodeIndex(tuple(a.path) + tail)
    if height is not None and result.depth > height:
        raise SizeLimitError(f"address {result} exceeds tree height {height}")
    return result


@dataclass(frozen=True)
class TreeSpec:
    """Degree sequence of a balanced tree, one entry per level."""

    degrees: tuple[int, ...]

    def __post_init__(self):
        degrees = tuple(self.degrees)
        object.__setattr__(self, "degrees", degrees)
        if len(degrees) < 1:
            raise ValueError("degree sequence needs at least one level")
        if not all(isinstance(d, int) and d >= 1 for d in degrees):
            raise ValueError(f"degrees must be positive integers: {degrees!r}")

    @property
    def height(self) -> int:
        return len(self.degrees)

    def vertex_count(self) -> int:
        total, width = 1, 1
        for d in self.degrees:
            width *= d
            total += width
            if total > VERTEX_LIMIT:
                raise SizeLimitError(
                    f"tree {self.degrees} exceeds the {VERTEX_LIMIT} vertex limit"
                )
        return total


class Tree:
    """A balanced rooted tree with explicit node enumeration.

    Nodes are listed breadth first, which is also sorted order by
    (depth, lexicographic address).
    """

    def __init__(self, spec: TreeSpec):
        self.spec = spec
        spec.vertex_count()
        by_depth: list[tuple[NodeIndex, ...]] = [(ROOT,)]
        for d in spec.degrees:
            level = tuple(
                node.child(v) for node in by_depth[-1] for v in range(1, d + 1)
            )
            by_depth.append(level)
        self._by_depth = tuple(by_depth)
        self.nodes: tuple[NodeIndex, ...] = tuple(
            n for level in by_depth for n in level
        )
        self._node_set = frozenset(self.nodes)

    @property
    def height(self) -> int:
        return self.spec.height

    def __len__(self) -> int:
        return len(self.nodes)

    def __contains__(self, node: NodeIndex) -> bool:
        return node in self._node_set

    def __iter__(self) -> Iterator[NodeIndex]:
        return iter(self.nodes)

    def nodes_at_depth(self, depth: int) -> tuple[NodeIndex, ...]:
        if not 0 <= depth <= self.height:
            return ()
        return self._by_depth[depth]

    def children(self, node: NodeIndex) -> tuple[NodeIndex, ...]:
        self._require(node)
        if node.depth >= self.height:
            return ()
        d = self.spec.degrees[node.depth]
        return tuple(node.child(v) for v in range(1, d + 1))

    def parent(self, node: NodeIndex) -> NodeIndex | None:
        self._require(node)
        return node.parent

    def _require(self, node: NodeIndex) -> None:
        if node not in self._node_set:
            raise ValueError(f"node {node} is not in tree {self.spec.degrees}")


def build_tree(spec) -> Tree:
    """Build a balanced tree from a TreeSpec or a plain degree sequence."""
    if not isinstance(spec, TreeSpec):
        spec = TreeSpec(tuple(spec))
    return Tree(spec)


@dataclass(frozen=True)
class PVertex:
    """Product vertex: a tree node at a path position (1-based)."""

    node: NodeIndex
    pos: int

    def __str__(self) -> str:
        return f"{self.node}@{self.pos}"

    @classmethod
    def parse(cls, text: str) -> "PVertex":
        node_part, sep, pos_part = text.rpartition("@")
        if not sep:
            raise ValueError(f"bad vertex id {text!r}")
        return cls(NodeIndex.parse(node_part), int(pos_part))


class EdgeKind(Enum):
    VERTICAL = "vertical"
    HORIZONTAL = "horizontal"
    DIAGONAL = "diagonal"


DOT_COLORS = {
    EdgeKind.VERTICAL: "black",
    EdgeKind.HORIZONTAL: "orange",
    EdgeKind.DIAGONAL: "blue",
}

Edge = tuple[PVertex, PVertex, EdgeKind]


class ProductGraph:
    """Product of a balanced tree and a path, with kind-labelled edges."""

    def __init__(self, tree: Tree, path_len: int):
        if path_len < 1:
            raise ValueError("path length must be at least 1")
        if len(tree) * path_len > VERTEX_LIMIT:
            raise SizeLimitError(
                f"product would have {len(tree) * path_len} vertices, "
                f"limit is {VERTEX_LIMIT}"
            )
        self.tree = tree
        self.path_len = path_len
        m = path_len
        self.vertices: tuple[PVertex, ...] = tuple(
            PVertex(node, i) for i in range(1, m + 1) for node in tree.nodes
        )
        edges: list[Edge] = []
        non_root = tree.nodes[1:]
        for node in non_root:
            par = node.parent
            for i in range(1, m + 1):
                edges.append((PVertex(node, i), PVertex(par, i), EdgeKind.VERTICAL))
        for node in tree.nodes:
            for i in range(1, m):
                edges.append(
                    (PVertex(node, i), PVertex(node, i + 1), EdgeKind.HORIZONTAL)
                )
        for node in non_root:
            par = node.parent
            for i in range(1, m):
                edges.append(
                    (PVertex(node, i), PVertex(par, i + 1), EdgeKind.DIAGONAL)
                )
        self.edges: tuple[Edge, ...] = tuple(edges)
        self._kind = {frozenset((u, v)): k for u, v, k in edges}
        self._vertex_set = frozenset(self.vertices)

    def __contains__(self, vertex: PVertex) -> bool:
        return vertex in self._vertex_set

    def __len__(self) -> int:
        return len(self.vertices)

    def edge_pairs(self) -> Iterator[tuple[PVertex, PVertex]]:
        return ((u, v) for u, v, _ in self.edges)

    def has_edge(self, u: PVertex, v: PVertex) -> bool:
        return frozenset((u, v)) in self._kind

    def kind_of(self, u: PVertex, v: PVertex) -> EdgeKind:
        try:
            return self._kind[frozenset((u, v))]
        except KeyError:
            raise ValueError(f"no edge {u} -- {v}") from None

    def edge_counts(self) -> dict[EdgeKind, int]:
        counts = {kind: 0 for kind in EdgeKind}
        for _, _, kind in self.edges:
            counts[kind] += 1
        return counts

    def descriptor(self) -> dict:
        return {
            "tree_degrees": list(self.tree.spec.degrees),
            "path_len": self.path_len,
        }

    @classmethod
    def from_descriptor(cls, doc: Mapping) -> "ProductGraph":
        degrees = doc.get("tree_degrees")
        path_len = doc.get("path_len")
        if degrees is None or path_len is None:
            raise ValueError("descriptor needs tree_degrees and path_len")
        return boxslash_product(degrees, int(path_len))

    def to_dot(self) -> str:
        lines = ["graph product {"]
        for v in self.vertices:
            lines.append(f'  "{v}";')
        for u, v, kind in self.edges:
            lines.append(
                f'  "{u}" -- "{v}" [kind={kind.value} color={DOT_COLORS[kind]}];'
            )
        lines.append("}")
        return "\n".join(lines)


def boxslash_product(tree, path_len: int) -> ProductGraph:
    """Product of a balanced tree (spec, degree list, or Tree) and a path."""
    if isinstance(tree, Tree):
        return ProductGraph(tree, path_len)
    return ProductGraph(build_tree(tree), path_len)


def restrict_subtree(
    graph: ProductGraph, keep: Mapping[NodeIndex, Iterable[int]]
) -> tuple[ProductGraph, dict[NodeIndex, NodeIndex]]:
    """Induced product on a kept subtree, children renumbered per level.

    ``keep`` maps a node to the child numbers it retains; nodes missing
    from the map keep every child.  The kept counts must be uniform
    within each depth level, otherwise a ShapeError names the level.
    Returns the renumbered product and the old-to-new address map.
    """
    tree = graph.tree
    new_counts: dict[int, int] = {}
    node_map: dict[NodeIndex, NodeIndex] = {ROOT: ROOT}
    frontier: list[NodeIndex] = [ROOT]
    for depth in range(tree.height):
        d = tree.spec.degrees[depth]
        next_frontier: list[NodeIndex] = []
        for node in frontier:
            chosen = keep.get(node)
            if chosen is None:
                nums: tuple[int, ...] = tuple(range(1, d + 1))
            else:
                nums = tuple(sorted(set(chosen)))
                if not nums:
                    raise ShapeError(f"empty child selection at node {node}")
                if nums[0] < 1 or nums[-1] > d:
                    raise ValueError(
                        f"child selection {nums} out of range 1..{d} at {node}"
                    )
            if depth in new_counts and new_counts[depth] != len(nums):
                raise ShapeError(
                    f"level {depth} keeps {len(nums)} children at {node}, "
                    f"other nodes keep {new_counts[depth]}"
                )
            new_counts[depth] = len(nums)
            base = node_map[node]
            for new_v, old_v in enumerate(nums, start=1):
                old_child = node.child(old_v)
                node_map[old_child] = base.child(new_v)
                next_frontier.append(old_child)
        frontier = next_frontier
    new_spec = TreeSpec(tuple(new_counts[d] for d in range(tree.height)))
    return ProductGraph(Tree(new_spec), graph.path_len), node_map
