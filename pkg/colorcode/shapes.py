from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, product
from typing import Iterable, Iterator

from sympy.utilities.iterables import multiset_partitions

ROOT = 0


@dataclass(frozen=True)
class ColorPartition:
    """Disjoint colour blocks, one per solution component.

    A component with block B is a tree with |B| edges, hence |B| + 1 vertices.
    """
    blocks: tuple[frozenset[int], ...]

    @property
    def vertex_count(self) -> int:
        return sum(len(block) + 1 for block in self.blocks)

    @property
    def colors(self) -> frozenset[int]:
        return frozenset().union(*self.blocks)

    def __len__(self) -> int:
        return len(self.blocks)


@dataclass(frozen=True)
class TreeShape:
    """Rooted tree whose non-root nodes are named by the colour of their parent edge.

    `parent` lists (colour, parent colour) pairs sorted by colour; parent colour
    ROOT (0) is the root node.
    """
    parent: tuple[tuple[int, int], ...]

    @property
    def colors(self) -> frozenset[int]:
        return frozenset(color for color, _ in self.parent)

    @property
    def size(self) -> int:
        """Number of nodes, root included."""
        return len(self.parent) + 1

    def children(self, node: int) -> tuple[int, ...]:
        return tuple(color for color, up in self.parent if up == node)

    def postorder(self) -> list[int]:
        """Non-root nodes, every node after all of its descendants."""
        order = []
        stack = list(self.children(ROOT))
        while stack:
            node = stack.pop()
            order.append(node)
            stack.extend(self.children(node))
        order.reverse()
        return order


def enumerate_partitions(b: int, max_vertices: int | None = None,
                         used: Iterable[int] | None = None) -> Iterator[ColorPartition]:
    """Set partitions of every nonempty subset of the colours 1..b.

    Partitions needing more than `max_vertices` vertices are skipped. With `used`
    only those colours are drawn on.

    Examples:
    >>> len(list(enumerate_partitions(3)))
    14
    >>> [p.blocks for p in enumerate_partitions(2, 2)]
    [(frozenset({1}),), (frozenset({2}),)]
    """
    if b < 1:
        raise ValueError('at least one colour is required')
    palette = range(1, b + 1) if used is None else sorted(set(used))
    for size in range(1, len(palette) + 1):
        if max_vertices is not None and size + 1 > max_vertices:
            break
        for subset in combinations(palette, size):
            for blocks in multiset_partitions(list(subset)):
                partition = ColorPartition(tuple(frozenset(block) for block in blocks))
                if max_vertices is None or partition.vertex_count <= max_vertices:
                    yield partition


def _is_forest(parent: dict[int, int]) -> bool:
    for start in parent:
        seen = set()
        node = start
        while node != ROOT:
            if node in seen:
                return False
            seen.add(node)
            node = parent[node]
    return True


def enumerate_shapes(block: frozenset[int] | set[int]) -> Iterator[TreeShape]:
    """Every rooted tree with its parent edges labelled bijectively by `block`.

    A shape is a parent function on the colours (with ROOT available) that has
    no cycle, so there are (k+1)^(k-1) of them for k colours.
    """
    colors = sorted(block)
    if not colors:
        raise ValueError('block must not be empty')
    if ROOT in colors:
        raise ValueError('colours start at 1')
    for parents in product([ROOT, *colors], repeat=len(colors)):
        parent = dict(zip(colors, parents))
        if any(color == up for color, up in parent.items()):
            continue
        if _is_forest(parent):
            yield TreeShape(tuple(sorted(parent.items())))
