from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import networkx as nx

from general.enum import TaggedEnum
from general.utils import INT64_MAX, ValidationReport
from log.logger import LOGGER


class InstanceError(ValueError):
    pass


class VertexRangeError(IndexError):
    pass


class Variant(TaggedEnum):
    """Problem variant: (cli tag, hard, one-neighborhood)."""
    HARD_1N = 'h1n', True, True
    HARD_ALL = 'hall', True, False
    RELAXED_1N = 'r1n', False, True
    RELAXED_ALL = 'rall', False, False

    @property
    def is_hard(self) -> bool:
        return self.value[1]

    @property
    def is_one_neighborhood(self) -> bool:
        return self.value[2]


Edge = tuple[int, int]


@dataclass(frozen=True)
class Graph:
    """Directed or undirected simple graph over the vertices 0..n-1.

    Undirected edges are stored canonically with u <= v. Parallel edges are kept
    so that `validate_instance` can report them; adjacency is deduplicated.
    """
    n: int
    edges: tuple[Edge, ...] = ()
    directed: bool = True

    def __init__(self, n: int, edges: Iterable[Edge] = (), directed: bool = True):
        canonical = []
        for u, v in edges:
            u, v = int(u), int(v)
            if not directed and u > v:
                u, v = v, u
            canonical.append((u, v))
        canonical.sort()
        object.__setattr__(self, 'n', int(n))
        object.__setattr__(self, 'edges', tuple(canonical))
        object.__setattr__(self, 'directed', bool(directed))

        out_sets = [set() for _ in range(self.n)]
        in_sets = [set() for _ in range(self.n)]
        for u, v in canonical:
            if not (0 <= u < self.n and 0 <= v < self.n):
                continue
            out_sets[u].add(v)
            in_sets[v].add(u)
            if not directed:
                out_sets[v].add(u)
                in_sets[u].add(v)
        object.__setattr__(self, '_out', tuple(tuple(sorted(s)) for s in out_sets))
        object.__setattr__(self, '_in', tuple(tuple(sorted(s)) for s in in_sets))

    @property
    def m(self) -> int:
        return len(self.edges)

    def out_neighbors(self, v: int) -> tuple[int, ...]:
        self._check(v)
        return self._out[v]

    def in_neighbors(self, v: int) -> tuple[int, ...]:
        self._check(v)
        return self._in[v]

    def has_edge(self, u: int, v: int) -> bool:
        return 0 <= u < self.n and v in self._out[u]

    @property
    def self_loops(self) -> list[int]:
        return sorted({u for u, v in self.edges if u == v})

    def to_networkx(self) -> nx.Graph | nx.DiGraph:
        """Networkx view with nodes and edges added in ascending order."""
        graph = nx.DiGraph() if self.directed else nx.Graph()
        graph.add_nodes_from(range(self.n))
        graph.add_edges_from(e for e in self.edges if self._in_range(e))
        return graph

    def to_undirected_networkx(self) -> nx.Graph:
        graph = nx.Graph()
        graph.add_nodes_from(range(self.n))
        graph.add_edges_from((u, v) for u, v in self.edges if u != v and self._in_range((u, v)))
        return graph

    def _in_range(self, edge: Edge) -> bool:
        return 0 <= edge[0] < self.n and 0 <= edge[1] < self.n

    def _check(self, v: int) -> None:
        if not 0 <= v < self.n:
            raise VertexRangeError(f'vertex {v} out of range [0, {self.n})')


@dataclass(frozen=True)
class Instance:
    """Graph with per-vertex weight and profit, knapsack size and demand."""
    graph: Graph
    weights: tuple[int, ...]
    profits: tuple[int, ...]
    size: int
    demand: int
    meta: str = field(default='', compare=False)

    def __post_init__(self):
        object.__setattr__(self, 'weights', tuple(int(x) for x in self.weights))
        object.__setattr__(self, 'profits', tuple(int(x) for x in self.profits))
        object.__setattr__(self, 'size', int(self.size))
        object.__setattr__(self, 'demand', int(self.demand))

    @property
    def n(self) -> int:
        return self.graph.n

    @property
    def directed(self) -> bool:
        return self.graph.directed

    @property
    def is_uniform(self) -> bool:
        return all(w == 1 for w in self.weights) and all(p == 1 for p in self.profits)

    def neighbors(self, v: int) -> frozenset[int]:
        return frozenset(self.graph.out_neighbors(v))

    def replace(self, **changes) -> Instance:
        values = dict(graph=self.graph, weights=self.weights, profits=self.profits,
                      size=self.size, demand=self.demand, meta=self.meta)
        values.update(changes)
        return Instance(**values)


def make_instance(n: int, edges: Iterable[Edge], weights: Sequence[int], profits: Sequence[int],
                  size: int, demand: int, directed: bool = True, meta: str = '') -> Instance:
    return Instance(Graph(n, edges, directed), tuple(weights), tuple(profits), size, demand, meta)


def neighbors(inst: Instance, v: int) -> frozenset[int]:
    """Out-neighbors when directed, neighbors otherwise.

    Raises:
        VertexRangeError: v is not a vertex of the instance
    """
    return inst.neighbors(v)


def validate_instance(inst: Instance) -> ValidationReport:
    """Report every structural violation of `inst`. Never raises."""
    report = ValidationReport()
    n = inst.n
    if n < 0:
        report.add('negative vertex count')
    if len(inst.weights) != n:
        report.add('weight vector length mismatch')
    if len(inst.profits) != n:
        report.add('profit vector length mismatch')
    for name, values in (('weight', inst.weights), ('profit', inst.profits)):
        for v, value in enumerate(values):
            if value < 0:
                report.add(f'negative {name} at vertex {v}')
            elif value > INT64_MAX:
                report.add(f'{name} at vertex {v} exceeds the 64-bit range')
    for name, value in (('knapsack size', inst.size), ('demand', inst.demand)):
        if value < 0:
            report.add(f'negative {name}')
        elif value > INT64_MAX:
            report.add(f'{name} exceeds the 64-bit range')

    for (u, v), count in Counter(inst.graph.edges).items():
        if not (0 <= u < n and 0 <= v < n):
            report.add(f'dangling endpoint in edge ({u},{v})')
        if count > 1:
            report.add(f'parallel edge ({u},{v})')
    return report


def require_valid(inst: Instance) -> None:
    report = validate_instance(inst)
    if not report.ok:
        raise InstanceError(f'invalid instance: {report}')


def normalize_self_loops(inst: Instance, variant: Variant) -> Instance:
    """Remove self-loops while preserving the optimum of `variant`.

    Undirected 1N variants: the loop {v,v} becomes an edge to a fresh vertex of
    weight 0 and profit 0. Directed 1N variants: every outgoing edge of a looped
    vertex is dropped (it is profitable whenever selected). All-N variants: the
    loop alone is dropped.
    """
    loops = inst.graph.self_loops
    if not loops:
        return inst

    graph = inst.graph
    weights, profits = list(inst.weights), list(inst.profits)
    if variant.is_one_neighborhood and not graph.directed:
        edges = [e for e in graph.edges if e[0] != e[1]]
        for offset, v in enumerate(loops):
            edges.append((v, graph.n + offset))
            weights.append(0)
            profits.append(0)
        new_graph = Graph(graph.n + len(loops), edges, directed=False)
    elif variant.is_one_neighborhood:
        looped = set(loops)
        new_graph = Graph(graph.n, [e for e in graph.edges if e[0] not in looped], directed=True)
    else:
        new_graph = Graph(graph.n, [e for e in graph.edges if e[0] != e[1]], graph.directed)

    LOGGER.debug(f'normalized {len(loops)} self-loop(s) for {variant}')
    return Instance(new_graph, tuple(weights), tuple(profits), inst.size, inst.demand, inst.meta)


def add_sink_dummies(inst: Instance) -> tuple[Instance, dict[int, int]]:
    """Give every sink an out-neighbor of weight 0 and profit 0.

    Zero-weight zero-profit sinks get one too. The dummies are sinks
    themselves, so a second call adds another layer.

    Returns:
        tuple[Instance, dict[int, int]]: augmented instance and the map from
        original to augmented vertex ids (identity; dummies are appended)

    Raises:
        InstanceError: the instance is undirected or has self-loops
    """
    graph = inst.graph
    if not graph.directed:
        raise InstanceError('sink dummies require a directed instance')
    if graph.self_loops:
        raise InstanceError('sink dummies require a self-loop free instance')

    sinks = [v for v in range(graph.n) if not graph.out_neighbors(v)]
    mapping = {v: v for v in range(graph.n)}
    if not sinks:
        return inst, mapping

    edges = list(graph.edges)
    for offset, v in enumerate(sinks):
        edges.append((v, graph.n + offset))
    weights = inst.weights + (0,) * len(sinks)
    profits = inst.profits + (0,) * len(sinks)
    augmented = Instance(Graph(graph.n + len(sinks), edges, directed=True), weights, profits,
                         inst.size, inst.demand, inst.meta)
    LOGGER.debug(f'added {len(sinks)} sink dummies')
    return augmented, mapping
