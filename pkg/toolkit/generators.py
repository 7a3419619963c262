"""Instance generators: seeded random instances and the reduction gadgets.

Every gadget comes with the source problem's answer (found by brute force on the
source side when it is small) and a map from a source certificate to the
corresponding knapsack selection.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import comb
from typing import Callable, Iterable, Sequence

import networkx as nx
import numpy as np

from knapsack.instance import Graph, Instance, InstanceError, Variant, make_instance

# source problems with more candidate certificates than this are not solved
_SOURCE_SEARCH_LIMIT = 1 << 20


@dataclass(frozen=True)
class Gadget:
    instance: Instance
    variant: Variant
    expected: bool | None
    witness: Callable[[Iterable[int]], frozenset[int]]


def gen_random(n: int, edge_prob: float, wmax: int, pmax: int, s: int, d: int, directed: bool = True,
               seed: int = 0) -> Instance:
    """Random graph with independent edges and uniform integer weights and profits.

    Examples:
    >>> gen_random(4, 1.0, 1, 1, 2, 1, directed=True, seed=3).graph.m
    12
    """
    if n < 0 or not 0.0 <= edge_prob <= 1.0 or wmax < 0 or pmax < 0 or s < 0 or d < 0:
        raise InstanceError('generator parameters out of range')
    rng = np.random.Generator(np.random.Philox(seed))
    draws = rng.random((n, n)) < edge_prob
    np.fill_diagonal(draws, False)
    if not directed:
        draws = np.triu(draws)
    edges = [(int(u), int(v)) for u, v in zip(*np.nonzero(draws))]
    weights = rng.integers(0, wmax + 1, size=n).tolist()
    profits = rng.integers(0, pmax + 1, size=n).tolist()
    meta = f'random n={n} p={edge_prob} seed={seed}'
    return make_instance(n, edges, weights, profits, s, d, directed, meta)


def set_cover_exists(universe_size: int, sets: Sequence[Iterable[int]], k: int) -> bool | None:
    """True when at most k of the sets cover 1..universe_size; None if too large to search."""
    universe = frozenset(range(1, universe_size + 1))
    families = [frozenset(s) for s in sets]
    if sum(comb(len(families), size) for size in range(min(k, len(families)) + 1)) > _SOURCE_SEARCH_LIMIT:
        return None
    for size in range(min(k, len(families)) + 1):
        for chosen in combinations(families, size):
            if frozenset().union(*chosen) >= universe:
                return True
    return False


def gen_from_set_cover(universe_size: int, sets: Sequence[Iterable[int]], k: int, directed: bool = False) -> Gadget:
    """Set Cover on the elements 1..universe_size as a RELAXED_1N instance.

    Element e becomes vertex e-1 (weight 0, profit 1), set i becomes vertex
    universe_size+i (weight 1, profit 0) adjacent to its elements. The directed
    form points every element at its sets. s = k and d = universe_size.

    Raises:
        InstanceError: empty universe, element out of range or in no set
    """
    if universe_size < 1:
        raise InstanceError('set cover needs a nonempty universe')
    families = [sorted(set(s)) for s in sets]
    covered = set()
    edges = []
    for i, members in enumerate(families):
        for e in members:
            if not 1 <= e <= universe_size:
                raise InstanceError(f'set {i} contains element {e} outside 1..{universe_size}')
            covered.add(e)
            edges.append((e - 1, universe_size + i))
    missing = sorted(set(range(1, universe_size + 1)) - covered)
    if missing:
        raise InstanceError(f'element {missing[0]} belongs to no set')

    n = universe_size + len(families)
    weights = [0] * universe_size + [1] * len(families)
    profits = [1] * universe_size + [0] * len(families)
    meta = f'set-cover k={k} variant={Variant.RELAXED_1N.tag}'
    inst = make_instance(n, edges, weights, profits, k, universe_size, directed, meta)

    def witness(cover: Iterable[int]) -> frozenset[int]:
        return frozenset(range(universe_size)) | frozenset(universe_size + i for i in cover)

    return Gadget(inst, Variant.RELAXED_1N, set_cover_exists(universe_size, families, k), witness)


def clique_exists(graph: Graph, k: int) -> bool:
    if k <= 0:
        return True
    if graph.n == 0:
        return False
    return max(len(c) for c in nx.find_cliques(graph.to_undirected_networkx())) >= k


def gen_from_clique(graph: Graph, k: int, unit_edge_weights: bool = False) -> Gadget:
    """Clique as a HARD_ALL instance on the directed incidence graph.

    Graph vertices keep their ids (weight 1, profit 0); edge i becomes vertex
    n+i (weight 0, profit 1) pointing at both endpoints. s = k and d = k(k-1)/2.
    With `unit_edge_weights` edge vertices weigh 1 as well and s = k + k(k-1)/2.
    """
    edges = sorted(set((min(u, v), max(u, v)) for u, v in graph.edges if u != v))
    n = graph.n
    arcs = [(n + i, x) for i, (u, v) in enumerate(edges) for x in (u, v)]
    pairs = comb(k, 2) if k >= 2 else 0
    edge_weight = 1 if unit_edge_weights else 0
    size = k + pairs if unit_edge_weights else k
    weights = [1] * n + [edge_weight] * len(edges)
    profits = [0] * n + [1] * len(edges)
    meta = f'clique k={k} variant={Variant.HARD_ALL.tag}'
    inst = make_instance(n + len(edges), arcs, weights, profits, max(size, 0), pairs, True, meta)
    index = {e: i for i, e in enumerate(edges)}

    def witness(clique: Iterable[int]) -> frozenset[int]:
        members = sorted(set(clique))
        inside = (index[e] for e in combinations(members, 2) if e in index)
        return frozenset(members) | frozenset(n + i for i in inside)

    return Gadget(inst, Variant.HARD_ALL, clique_exists(graph, k), witness)


def cutting_exists(graph: Graph, k: int, l: int) -> bool | None:
    """True when some l vertices X have at most k neighbors outside X."""
    if l > graph.n:
        return False
    if comb(graph.n, l) > _SOURCE_SEARCH_LIMIT:
        return None
    for chosen in combinations(range(graph.n), l):
        inside = set(chosen)
        boundary = {x for v in chosen for x in graph.out_neighbors(v)} - inside
        if len(boundary) <= k:
            return True
    return False


def gen_from_cutting(graph: Graph, k: int, l: int) -> Gadget:
    """Cutting l vertices as a uniform RELAXED_ALL instance with s = l + k and d = l."""
    if k < 0 or l < 0:
        raise InstanceError('k and l must be non-negative')
    simple = Graph(graph.n, sorted(set((min(u, v), max(u, v)) for u, v in graph.edges if u != v)), directed=False)
    meta = f'cutting k={k} l={l} variant={Variant.RELAXED_ALL.tag}'
    inst = make_instance(simple.n, simple.edges, [1] * simple.n, [1] * simple.n, l + k, l, False, meta)

    def witness(cut: Iterable[int]) -> frozenset[int]:
        chosen = frozenset(cut)
        return chosen | frozenset(x for v in chosen for x in simple.out_neighbors(v))

    return Gadget(inst, Variant.RELAXED_ALL, cutting_exists(simple, k, l), witness)


def knapsack_optimum(items: Sequence[tuple[int, int]], capacity: int) -> int:
    """Classical 0/1 knapsack by the capacity table.

    Examples:
    >>> knapsack_optimum([(2, 3), (2, 3)], 2)
    3
    """
    best = np.zeros(capacity + 1, dtype=np.int64)
    for weight, profit in items:
        if weight > capacity:
            continue
        if weight == 0:
            best += profit
            continue
        candidate = best[:capacity + 1 - weight] + profit
        best[weight:] = np.maximum(best[weight:], candidate)
    return int(best[capacity])


def gen_star_knapsack(items: Sequence[tuple[int, int]], c: int, alpha: int) -> Gadget:
    """0/1 knapsack as RELAXED_1N on a star.

    Item i is leaf i; the center n has weight 0 and profit 0, so every leaf is
    profitable once the center is selected. s = c and d = alpha.
    """
    if not items:
        raise InstanceError('star gadget needs at least one item')
    n = len(items)
    weights = [w for w, _ in items] + [0]
    profits = [p for _, p in items] + [0]
    meta = f'star c={c} alpha={alpha} variant={Variant.RELAXED_1N.tag}'
    inst = make_instance(n + 1, [(i, n) for i in range(n)], weights, profits, c, alpha, False, meta)

    def witness(chosen: Iterable[int]) -> frozenset[int]:
        return frozenset(chosen) | {n}

    return Gadget(inst, Variant.RELAXED_1N, knapsack_optimum(items, c) >= alpha, witness)
