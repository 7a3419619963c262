from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterator

import networkx as nx

from general.enum import Enum
from general.utils import ValidationReport
from knapsack.instance import Graph
from log.logger import LOGGER


class DecompositionError(ValueError):
    pass


class NodeKind(Enum):
    LEAF = 'leaf'
    INTRODUCE = 'introduce'
    FORGET = 'forget'
    JOIN = 'join'


@dataclass
class TreeDecomposition:
    """Bags on the nodes of an undirected tree."""
    bags: dict[int, frozenset[int]]
    tree_edges: list[tuple[int, int]] = field(default_factory=list)

    def __post_init__(self):
        self.bags = {t: frozenset(bag) for t, bag in self.bags.items()}
        self.tree_edges = [tuple(sorted(e)) for e in self.tree_edges]

    @property
    def width(self) -> int:
        if not self.bags:
            return -1
        return max(len(bag) for bag in self.bags.values()) - 1

    @property
    def tree(self) -> nx.Graph:
        tree = nx.Graph()
        tree.add_nodes_from(sorted(self.bags))
        tree.add_edges_from(self.tree_edges)
        return tree


@dataclass(frozen=True)
class NiceNode:
    id: int
    kind: NodeKind
    bag: frozenset[int]
    vertex: int | None = None
    children: tuple[int, ...] = ()


@dataclass
class NiceTreeDecomposition:
    """Rooted decomposition made of leaf, introduce, forget and binary join nodes.

    Leaf bags hold at most one vertex. `anchor` is the vertex pinned into every
    bag by `augment_all_bags`, None otherwise.
    """
    nodes: dict[int, NiceNode]
    root: int
    anchor: int | None = None

    @property
    def width(self) -> int:
        return max(len(node.bag) for node in self.nodes.values()) - 1

    def postorder(self) -> list[NiceNode]:
        """Children before parents, iterative so deep decompositions are fine."""
        order = []
        stack = [self.root]
        while stack:
            t = stack.pop()
            order.append(self.nodes[t])
            stack.extend(self.nodes[t].children)
        order.reverse()
        return order

    def to_tree_decomposition(self) -> TreeDecomposition:
        edges = [(t, child) for t, node in self.nodes.items() for child in node.children]
        return TreeDecomposition({t: node.bag for t, node in self.nodes.items()}, edges)

    def __len__(self) -> int:
        return len(self.nodes)

    def __iter__(self) -> Iterator[NiceNode]:
        return iter(self.postorder())


def validate_td(graph: Graph, td: TreeDecomposition) -> ValidationReport:
    """Check the decomposition axioms; each violation names its witness."""
    report = ValidationReport()
    tree = td.tree
    if tree.number_of_nodes() == 0:
        if graph.n > 0:
            report.add('decomposition has no bags')
        return report
    if not nx.is_tree(tree):
        report.add('decomposition tree is not a tree')

    occurrences = defaultdict(list)
    for t, bag in td.bags.items():
        for v in bag:
            if not 0 <= v < graph.n:
                report.add(f'bag {t} contains unknown vertex {v}')
            occurrences[v].append(t)

    for v in range(graph.n):
        if not occurrences[v]:
            report.add(f'vertex {v} uncovered')

    bag_sets = list(td.bags.values())
    for u, v in sorted(set((min(e), max(e)) for e in graph.edges)):
        if u == v:
            continue
        if not any(u in bag and v in bag for bag in bag_sets):
            report.add(f'edge {{{u},{v}}} uncovered')

    for v in range(graph.n):
        nodes = occurrences[v]
        if len(nodes) > 1 and not nx.is_connected(tree.subgraph(nodes)):
            report.add(f'occurrences of {v} disconnected')
    return report


def _fill_in(graph: nx.Graph, v: int) -> int:
    return sum(1 for a, b in combinations(graph[v], 2) if not graph.has_edge(a, b))


def min_fill_ordering(graph: Graph) -> list[int]:
    """Greedy elimination ordering by fewest fill edges, smallest id on ties."""
    work = graph.to_undirected_networkx()
    order = []
    while work.number_of_nodes():
        v = min(work.nodes, key=lambda x: (_fill_in(work, x), x))
        neighbours = list(work[v])
        work.add_edges_from(combinations(neighbours, 2))
        work.remove_node(v)
        order.append(v)
    return order


def td_from_ordering(graph: Graph, order: list[int]) -> TreeDecomposition:
    """One bag per eliminated vertex: itself plus its later neighbours.

    The parent of a bag is the bag of the earliest eliminated later neighbour.
    Component roots are chained so the result is a single tree.
    """
    if not order:
        return TreeDecomposition({0: frozenset()})
    position = {v: i for i, v in enumerate(order)}
    work = graph.to_undirected_networkx()
    bags = {}
    edges = []
    roots = []
    for i, v in enumerate(order):
        later = list(work[v])
        bags[i] = frozenset([v, *later])
        if later:
            edges.append((i, min(position[x] for x in later)))
        else:
            roots.append(i)
        work.add_edges_from(combinations(later, 2))
        work.remove_node(v)
    for a, b in zip(roots, roots[1:]):
        edges.append((a, b))
    return TreeDecomposition(bags, edges)


def heuristic_td(graph: Graph) -> TreeDecomposition:
    td = td_from_ordering(graph, min_fill_ordering(graph))
    LOGGER.debug(f'min-fill decomposition: {len(td.bags)} bags, width {td.width}')
    return td


class _NiceBuilder:

    def __init__(self):
        self.nodes: dict[int, NiceNode] = {}

    def add(self, kind: NodeKind, bag: frozenset[int], vertex: int | None = None,
            children: tuple[int, ...] = ()) -> int:
        t = len(self.nodes)
        self.nodes[t] = NiceNode(t, kind, bag, vertex, children)
        return t

    def leaf(self, bag: frozenset[int]) -> int:
        """Leaf with the smallest bag vertex, the rest introduced."""
        start = frozenset([min(bag)]) if bag else frozenset()
        t = self.add(NodeKind.LEAF, start)
        return self.transform(t, bag)

    def transform(self, t: int, target: frozenset[int]) -> int:
        """Chain of forgets then introduces from the bag of t to target."""
        bag = self.nodes[t].bag
        for v in sorted(bag - target):
            bag = bag - {v}
            t = self.add(NodeKind.FORGET, bag, v, (t,))
        for v in sorted(target - bag):
            bag = bag | {v}
            t = self.add(NodeKind.INTRODUCE, bag, v, (t,))
        return t

    def join(self, tops: list[int]) -> int:
        t = tops[0]
        for other in tops[1:]:
            t = self.add(NodeKind.JOIN, self.nodes[t].bag, None, (t, other))
        return t


def make_nice(td: TreeDecomposition, graph: Graph | None = None) -> NiceTreeDecomposition:
    """Convert to nice form rooted at the smallest bag id; width is unchanged.

    Raises:
        DecompositionError: the input is not a tree, or not valid for `graph`
    """
    tree = td.tree
    if tree.number_of_nodes() == 0 or not nx.is_tree(tree):
        raise DecompositionError('decomposition tree is not a tree')
    if graph is not None:
        report = validate_td(graph, td)
        if not report.ok:
            raise DecompositionError(f'invalid decomposition: {report}')

    root = min(td.bags)
    builder = _NiceBuilder()
    top = {}
    for t in reversed(list(nx.dfs_preorder_nodes(tree, root))):
        children = [c for c in tree[t] if c in top]
        bag = td.bags[t]
        if not children:
            top[t] = builder.leaf(bag)
            continue
        tops = [builder.transform(top.pop(c), bag) for c in sorted(children)]
        top[t] = builder.join(tops)
    return NiceTreeDecomposition(builder.nodes, top[root])


def augment_all_bags(ntd: NiceTreeDecomposition, v: int) -> NiceTreeDecomposition:
    """Pin v into every bag. Leaves and the root end up with bag {v}."""
    builder = _NiceBuilder()
    anchor = frozenset([v])
    mapped = {}
    for node in ntd.postorder():
        bag = node.bag | anchor
        match node.kind:
            case NodeKind.LEAF:
                t = builder.add(NodeKind.LEAF, anchor)
                mapped[node.id] = builder.transform(t, bag)
            case NodeKind.INTRODUCE | NodeKind.FORGET if node.vertex == v:
                mapped[node.id] = mapped[node.children[0]]
            case NodeKind.INTRODUCE | NodeKind.FORGET:
                mapped[node.id] = builder.add(node.kind, bag, node.vertex, (mapped[node.children[0]],))
            case NodeKind.JOIN:
                left, right = (mapped[c] for c in node.children)
                mapped[node.id] = builder.add(NodeKind.JOIN, bag, None, (left, right))
    root = builder.transform(mapped[ntd.root], anchor)
    return NiceTreeDecomposition(builder.nodes, root, anchor=v)


def nice_kind_violations(ntd: NiceTreeDecomposition) -> ValidationReport:
    """Check the node kind rules of a nice decomposition."""
    report = ValidationReport()
    for node in ntd.nodes.values():
        children = [ntd.nodes[c] for c in node.children]
        match node.kind:
            case NodeKind.LEAF:
                if children or len(node.bag) > 1:
                    report.add(f'leaf {node.id} malformed')
                if ntd.anchor is not None and node.bag != frozenset([ntd.anchor]):
                    report.add(f'leaf {node.id} bag is not the anchor')
            case NodeKind.INTRODUCE:
                if len(children) != 1 or node.vertex in children[0].bag or \
                        node.bag != children[0].bag | {node.vertex}:
                    report.add(f'introduce {node.id} malformed')
            case NodeKind.FORGET:
                if len(children) != 1 or node.vertex not in children[0].bag or \
                        node.bag != children[0].bag - {node.vertex}:
                    report.add(f'forget {node.id} malformed')
            case NodeKind.JOIN:
                if len(children) != 2 or any(c.bag != node.bag for c in children):
                    report.add(f'join {node.id} malformed')
    if ntd.anchor is not None:
        if ntd.nodes[ntd.root].bag != frozenset([ntd.anchor]):
            report.add('root bag is not the anchor')
        if any(ntd.anchor not in node.bag for node in ntd.nodes.values()):
            report.add('anchor missing from a bag')
    return report


def validate_nice(graph: Graph, ntd: NiceTreeDecomposition) -> ValidationReport:
    report = nice_kind_violations(ntd)
    report.violations.extend(validate_td(graph, ntd.to_tree_decomposition()).violations)
    return report
