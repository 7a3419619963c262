"""Colour-coding solvers for the 1-neighborhood variants on directed graphs.

After sink augmentation every profitable vertex of a solution can be given one
selected out-neighbor; these edges form vertex-disjoint trees (rooted at the
vertex whose edge closes a cycle, or at a dummy). A colouring in which the tree
edges get distinct colours lets every tree be found by embedding a rooted,
edge-labelled shape. The non-root vertices of an embedded tree are profitable;
the root is when one of its out-neighbors lies inside the tree.

Per shape a dynamic program over the shape nodes keeps one Pareto list per
(node, vertex). Distinct edge colours do not force distinct vertices, so the
program ranges over colourful homomorphisms and bounds the true lists from
above; the vertex sets of the embeddings are captured only for colour blocks
whose bound can still improve the frontier.
"""
from __future__ import annotations

import math
from functools import lru_cache
from dataclasses import dataclass, field
from typing import Callable, Iterable, Iterator, Sequence

from colorcode.coloring import (ColorCodingError, ColoringMode, EdgeColoring, HashFamily, Preprocessed,
                                exhaustive_colorings, preprocess_cc, random_coloring, trial_seed)
from colorcode.shapes import ROOT, ColorPartition, TreeShape, enumerate_partitions, enumerate_shapes
from general.utils import INT64_MAX
from knapsack.instance import Graph, Instance, Variant, require_valid
from knapsack.oracle import SolveResult
from knapsack.pareto import ParetoList
from log.logger import LOGGER, log_result

Captures = dict[frozenset[int], int]
Incoming = dict[int, dict[int, list[int]]]


def embed_shape(graph: Graph, coloring: EdgeColoring, shape: TreeShape,
                incoming: Incoming | None = None) -> dict[int, set[frozenset[int]]]:
    """Vertex sets of all injective embeddings of `shape`, keyed by the image of its root.

    The node with colour c maps to a tail y of an edge y -> x of colour c, where
    x is the image of its parent.
    """
    if incoming is None:
        incoming = coloring.incoming()
    images: dict[int, dict[int, set[frozenset[int]]]] = {}
    for node in [*shape.postorder(), ROOT]:
        children = shape.children(node)
        table = {}
        for x in range(graph.n):
            partial = {frozenset([x])}
            for child in children:
                child_images = images[child]
                grown = set()
                for y in incoming[x][child] if x in incoming else ():
                    for sub in child_images.get(y, ()):
                        for base in partial:
                            if not base & sub:
                                grown.add(base | sub)
                partial = grown
                if not partial:
                    break
            if partial:
                table[x] = partial
        images[node] = table
    return images[ROOT]


@dataclass
class _Context:
    inst: Instance
    variant: Variant
    demand: int | None
    out: list[frozenset[int]] = field(init=False)

    def __post_init__(self):
        self.out = [frozenset(self.inst.graph.out_neighbors(v)) for v in range(self.inst.n)]

    def empty(self) -> ParetoList:
        return ParetoList.empty(self.inst.size, self.demand)

    def single(self, weight: int, profit: int) -> ParetoList:
        return ParetoList([(weight, profit)], self.inst.size, self.demand)

    def _subtree(self, shape: TreeShape, incoming: Incoming, node: int, x: int, targets: frozenset[int],
                 memo: dict[tuple[int, int], tuple[ParetoList, ParetoList]]) -> tuple[ParetoList, ParetoList]:
        """(miss, hit) lists of the subtree below `node` mapped to x.

        `hit` holds the images that reach a vertex of `targets`. The root's own
        profit is left out.
        """
        key = node, x
        if key in memo:
            return memo[key]
        own = self.single(self.inst.weights[x], 0 if node == ROOT else self.inst.profits[x])
        miss, hit = (self.empty(), own) if x in targets else (own, self.empty())
        heads = incoming[x] if x in incoming else {}
        for child in shape.children(node):
            child_miss, child_hit = self.empty(), self.empty()
            for y in heads.get(child, ()):
                sub_miss, sub_hit = self._subtree(shape, incoming, child, y, targets, memo)
                child_miss = child_miss.union(sub_miss)
                child_hit = child_hit.union(sub_hit)
            hit = hit.combine(child_miss.union(child_hit)).union(miss.combine(child_hit))
            miss = miss.combine(child_miss)
            if not miss and not hit:
                break
        memo[key] = miss, hit
        return miss, hit

    def rooted_bound(self, shape: TreeShape, incoming: Incoming, root: int) -> ParetoList:
        """Pairs of the colourful homomorphisms of `shape` with its root at `root`."""
        targets = self.out[root]
        miss, hit = self._subtree(shape, incoming, ROOT, root, targets, {})
        closed = hit.shift(profit=self.inst.profits[root])
        if self.variant.is_hard and targets:
            return closed
        return miss.union(closed)

    def bound(self, incoming: Incoming, shapes: Iterable[TreeShape]) -> ParetoList:
        result = self.empty()
        for shape in shapes:
            for root in list(incoming):
                result = result.union(self.rooted_bound(shape, incoming, root))
        return result

    def component_profit(self, vertices: frozenset[int], root: int) -> int | None:
        """Profit of an embedded tree, None when the variant rejects it."""
        closed = bool(self.out[root] & vertices)
        if self.variant.is_hard and not closed and self.out[root]:
            return None
        profit = sum(self.inst.profits[v] for v in vertices if v != root)
        if closed:
            profit += self.inst.profits[root]
        return profit

    def weight(self, vertices: Iterable[int]) -> int:
        return sum(self.inst.weights[v] for v in vertices)

    def captures(self, coloring: EdgeColoring, shapes: Iterable[TreeShape],
                 incoming: Incoming | None = None) -> Captures:
        result: Captures = {}
        if incoming is None:
            incoming = coloring.incoming()
        for shape in shapes:
            for root, sets in embed_shape(self.inst.graph, coloring, shape, incoming).items():
                for vertices in sets:
                    if self.weight(vertices) > self.inst.size:
                        continue
                    profit = self.component_profit(vertices, root)
                    if profit is not None and profit > result.get(vertices, -1):
                        result[vertices] = profit
        return result

    def pareto(self, captures: Captures) -> ParetoList:
        return ParetoList(((self.weight(vertices), profit) for vertices, profit in captures.items()),
                          self.inst.size, self.demand)


def colorful_dp(inst: Instance, coloring: EdgeColoring, shape: TreeShape,
                variant: Variant = Variant.RELAXED_1N, decision: bool = False,
                capture: bool = False) -> ParetoList:
    """Undominated (weight, profit) pairs of one shape under one colouring.

    The default is the Pareto program over shape nodes: every node's list is its
    own pair combined with the union, over the matching coloured in-edges, of
    each child's list. It counts a vertex once per node mapped onto it, so when
    some colourful homomorphism reuses a vertex the result is an upper bound.
    `capture=True` enumerates the injective embeddings instead and is exact.

    Examples:
    >>> from knapsack.instance import make_instance
    >>> inst = make_instance(2, [(0, 1)], [2, 3], [5, 7], 10, 0)
    >>> colorful_dp(inst, EdgeColoring.of(inst.graph, [1], 1), TreeShape(((1, 0),))).pairs
    [(5, 5)]
    """
    context = _Context(inst, variant, inst.demand if decision else None)
    if capture:
        return context.pareto(context.captures(coloring, [shape]))
    return context.bound(coloring.incoming(), [shape])


def merge_components(lists: Sequence[ParetoList], s: int, demand: int | None = None) -> ParetoList:
    """Pairs reachable by taking any nonempty subset of the components, one pair each.

    Examples:
    >>> merge_components([ParetoList([(1, 1)], 2), ParetoList([(1, 1)], 2)], 2).pairs
    [(1, 1), (2, 2)]
    >>> merge_components([ParetoList([(1, 1)], 2), ParetoList([(2, 9)], 2)], 2).pairs
    [(1, 1), (2, 9)]
    """
    merged = ParetoList.empty(s, demand)
    for lst in lists:
        if lst.cap != s:
            raise ColorCodingError(f'component list capped at {lst.cap}, expected {s}')
        merged = merged.union(lst).union(merged.combine(lst))
    return merged


def _witness_key(profit: int, weight: int, vertices: frozenset[int]):
    return -profit, weight, tuple(sorted(vertices))


@lru_cache(maxsize=None)
def _shapes(block: frozenset[int]) -> tuple[TreeShape, ...]:
    return tuple(enumerate_shapes(block))


class _ColoringRun:
    """Best selections found for one colouring."""

    def __init__(self, context: _Context, b: int, coloring: EdgeColoring):
        self.context = context
        self.b = b
        self.coloring = coloring
        self.incoming = coloring.incoming()
        self._bounds: dict[frozenset[int], ParetoList] = {}
        self._captures: dict[frozenset[int], Captures] = {}

    def block_bound(self, block: frozenset[int]) -> ParetoList:
        if block not in self._bounds:
            self._bounds[block] = self.context.bound(self.incoming, _shapes(block))
        return self._bounds[block]

    def block_captures(self, block: frozenset[int]) -> Captures:
        if block not in self._captures:
            self._captures[block] = self.context.captures(self.coloring, _shapes(block), self.incoming)
        return self._captures[block]

    def run(self, frontier: Callable[[], ParetoList]) -> Iterator[tuple[frozenset[int], int, int]]:
        """Yield (vertices, weight, profit) of every packed partition not already covered."""
        context = self.context
        for partition in enumerate_partitions(self.coloring.b, self.b, self.coloring.colors):
            lists = [self.block_bound(block) for block in partition.blocks]
            if any(not lst for lst in lists):
                continue
            if frontier().covers(merge_components(lists, context.inst.size, context.demand)):
                continue
            for vertices, profit in self._pack(partition).items():
                yield vertices, context.weight(vertices), profit

    def _pack(self, partition: ColorPartition) -> Captures:
        context = self.context
        packed: Captures = {frozenset(): 0}
        for block in partition.blocks:
            grown: Captures = {}
            for base, base_profit in packed.items():
                for vertices, profit in self.block_captures(block).items():
                    if base & vertices:
                        continue
                    union = base | vertices
                    if context.weight(union) > context.inst.size:
                        continue
                    total = base_profit + profit
                    if total > grown.get(union, -1):
                        grown[union] = total
            packed = grown
            if not packed:
                break
        return packed


class ColorCodingSearch:
    """Shared driver: iterate colourings and keep the best packed selections.

    Args:
        inst (Instance): directed, self-loop free instance
        variant (Variant): RELAXED_1N or HARD_1N
        b (int): vertices allowed in a solution after sink augmentation, dummies
            included; also the number of colours
        decision (bool, optional): clamp profits at the demand
    """

    def __init__(self, inst: Instance, variant: Variant, b: int, decision: bool = False):
        if variant not in (Variant.RELAXED_1N, Variant.HARD_1N):
            raise ColorCodingError(f'colour coding solves the 1-neighborhood variants, not {variant}')
        if not inst.directed:
            raise ColorCodingError('colour coding requires a directed instance')
        if b < 2:
            raise ColorCodingError(f'budget b must be at least 2, got {b}')
        require_valid(inst)
        self.inst = inst
        self.variant = variant
        self.b = b
        self.prepared: Preprocessed = preprocess_cc(inst)
        demand = inst.demand if decision else None
        self.context = _Context(self.prepared.instance, variant, demand)
        self.frontier = ParetoList.zero(inst.size, demand)
        self.witness: frozenset[int] = frozenset()
        self._witness_key = _witness_key(0, 0, frozenset())
        self.colorings = 0

    @property
    def graph(self) -> Graph:
        return self.prepared.instance.graph

    @property
    def colors(self) -> int:
        return self.b

    def feed(self, coloring: EdgeColoring) -> None:
        run = _ColoringRun(self.context, self.b, coloring)
        for vertices, weight, profit in run.run(lambda: self.frontier):
            self.frontier = self.frontier.insert((weight, profit))
            real = frozenset(v for v in vertices if v < self.inst.n)
            key = _witness_key(min(profit, INT64_MAX), weight, real)
            if key < self._witness_key:
                self._witness_key = key
                self.witness = real
        self.colorings += 1

    def result(self, algorithm: str, exact: bool, **details) -> SolveResult:
        best = self.frontier.best_profit
        log_result(f'{algorithm} {self.variant}: b={self.b}, {self.colorings} colourings, best profit {best}')
        return SolveResult(best, self.frontier, self.witness, algorithm=algorithm, exact=exact,
                           details={'b': self.b, 'real_b': self.prepared.real_budget(self.b),
                                    'dummies': self.prepared.dummies, 'colorings': self.colorings, **details})


def solve_randomized(inst: Instance, variant: Variant, b: int, trials: int, seed: int = 0,
                     decision: bool = False) -> SolveResult:
    """Best selection over `trials` random b-colourings; never over-reports.

    Trial t always uses the same colouring for a given seed, so more trials can
    only improve the answer.

    Raises:
        ColorCodingError: undirected input, b < 2, or an unsupported variant
    """
    search = ColorCodingSearch(inst, variant, b, decision)
    for trial in range(trials):
        search.feed(random_coloring(search.graph, search.colors, trial_seed(seed, trial)))
        LOGGER.debug(f'cc-rand trial {trial}: frontier {search.frontier.pairs}')
    return search.result('cc-rand', False, trials=trials, seed=seed)


def solve_deterministic(inst: Instance, variant: Variant, b: int,
                        mode: ColoringMode = ColoringMode.EXHAUSTIVE, budget: int = 100000,
                        family_primes: int = 3, decision: bool = False) -> SolveResult:
    """Colour coding over a fixed set of colourings.

    Exhaustive mode tries every b-colouring and equals the optimum over selections
    of the sink-augmented instance with at most b vertices. Family mode uses a
    `HashFamily` and is best effort.

    Raises:
        ColorCodingError: as `solve_randomized`, or exhaustive mode over `budget`
    """
    search = ColorCodingSearch(inst, variant, b, decision)
    if mode == ColoringMode.EXHAUSTIVE:
        colorings = exhaustive_colorings(search.graph, search.colors, budget)
    else:
        colorings = HashFamily(search.graph.m, search.colors, family_primes).colorings(search.graph)
    for coloring in colorings:
        search.feed(coloring)
    return search.result('cc-det', mode == ColoringMode.EXHAUSTIVE, mode=mode.value)


def solve_by_demand(inst: Instance, variant: Variant, budget: int = 100000, max_trials: int = 1000000,
                    seed: int = 0) -> SolveResult:
    """Decide profit >= d with colour coding over at most 2d vertices.

    Exhaustive colourings are used when (2d)^m fits the budget, random ones
    otherwise. The decision is exact for RELAXED_1N in exhaustive mode.

    Raises:
        ColorCodingError: as `solve_deterministic`
    """
    d = inst.demand
    if d == 0:
        return SolveResult(0, ParetoList.zero(inst.size, 0), frozenset(), algorithm='cc-demand')
    bound = 2 * d
    augmented_m = preprocess_cc(inst).instance.graph.m
    if bound ** augmented_m <= budget:
        result = solve_deterministic(inst, variant, bound, ColoringMode.EXHAUSTIVE, budget, decision=True)
    else:
        trials = min(math.ceil(math.exp(bound)), max_trials)
        result = solve_randomized(inst, variant, bound, trials, seed, decision=True)
    result.exact = result.exact and variant == Variant.RELAXED_1N
    result.details['demand'] = d
    LOGGER.info(f'cc-demand {variant}: d={d}, decision {result.meets(d)}')
    return result
