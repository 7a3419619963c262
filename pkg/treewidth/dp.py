"""Dynamic programming over nice tree decompositions for all four variants.

A table maps a state (S, P) of the current bag to a ParetoList. S is the set of
selected bag vertices and P ⊆ S the selected bag vertices that are profitable
as far as the introduced part of the graph tells:

* 1N: the vertex has a selected out-neighbor among introduced vertices, or no
  out-neighbor at all. Membership only grows.
* All-N: no introduced out-neighbor is unselected. Membership only shrinks.

Pairs hold the weight of every selected introduced vertex and the profit of
forgotten profitable vertices only. A bag vertex earns its profit when it is
forgotten, so every profit offset is non-negative and clamping at the demand
in decision mode stays exact. Hard variants drop a state as soon as a selected
vertex leaves the bag unprofitable.

Sets are bitmasks over the global vertex ids.
"""
from __future__ import annotations

from collections import defaultdict
from typing import Iterable, NamedTuple

from general.enum import Enum
from general.utils import bit_members
from knapsack.instance import Instance, InstanceError, Variant, require_valid
from knapsack.oracle import SolveResult
from knapsack.pareto import ParetoList
from log.logger import LOGGER, log_result
from treewidth.treedecomp import (DecompositionError, NiceTreeDecomposition, NodeKind, TreeDecomposition,
                                  augment_all_bags, heuristic_td, make_nice, validate_td)


class TwdpStrategy(Enum):
    GUESSED = 'guessed'
    ROOTED = 'rooted'


class DPState(NamedTuple):
    selected: int
    profitable: int

    @classmethod
    def of(cls, selected: Iterable[int] = (), profitable: Iterable[int] = ()) -> DPState:
        return cls(_mask(selected), _mask(profitable))

    def members(self) -> tuple[frozenset[int], frozenset[int]]:
        return frozenset(bit_members(self.selected)), frozenset(bit_members(self.profitable))


DPTable = dict[DPState, ParetoList]


def _mask(vertices: Iterable[int]) -> int:
    mask = 0
    for v in vertices:
        mask |= 1 << v
    return mask


class TreewidthDP:
    """Table operations for one (instance, variant) pair.

    Args:
        inst (Instance): self-loop free instance
        variant (Variant): problem variant
        decision (bool, optional): clamp profits at the demand. Defaults to False.
    """

    def __init__(self, inst: Instance, variant: Variant, decision: bool = False):
        self.inst = inst
        self.variant = variant
        self.cap = inst.size
        self.demand = inst.demand if decision else None
        self._out = [_mask(inst.graph.out_neighbors(v)) for v in range(inst.n)]
        self._in = [_mask(inst.graph.in_neighbors(v)) for v in range(inst.n)]
        self._weight_cache: dict[int, int] = {}

    def _merge(self, table: DPTable, key: DPState, lst: ParetoList) -> None:
        if not lst:
            return
        current = table.get(key)
        table[key] = lst if current is None else current.union(lst)

    def _weight(self, mask: int) -> int:
        weight = self._weight_cache.get(mask)
        if weight is None:
            weight = sum(self.inst.weights[v] for v in bit_members(mask))
            self._weight_cache[mask] = weight
        return weight

    def leaf(self, bag: frozenset[int]) -> DPTable:
        table = {DPState(0, 0): ParetoList.zero(self.cap, self.demand)}
        if not bag:
            return table
        (v,) = bag
        weight = self.inst.weights[v]
        if weight <= self.cap:
            bit = 1 << v
            if self.variant.is_one_neighborhood:
                profitable = bit if self._out[v] == 0 else 0
            else:
                profitable = bit
            table[DPState(bit, profitable)] = ParetoList([(weight, 0)], self.cap, self.demand)
        return table

    def introduce(self, child: DPTable, u: int, child_bag: frozenset[int]) -> DPTable:
        bit = 1 << u
        weight = self.inst.weights[u]
        out_u, in_u = self._out[u], self._in[u]
        bag_mask = _mask(child_bag)
        one_neighborhood = self.variant.is_one_neighborhood
        table: DPTable = {}
        for (selected, profitable), lst in child.items():
            if one_neighborhood:
                self._merge(table, DPState(selected, profitable), lst)
            else:
                # selected in-neighbors of u now miss an out-neighbor
                self._merge(table, DPState(selected, profitable & ~in_u), lst)

            if weight > self.cap:
                continue
            shifted = lst.shift(weight, 0)
            if not shifted:
                continue
            if one_neighborhood:
                # u witnesses its selected in-neighbors
                new_profitable = profitable | (in_u & selected)
                if out_u == 0 or out_u & selected:
                    new_profitable |= bit
            else:
                new_profitable = profitable
                if out_u & bag_mask & ~selected == 0:
                    new_profitable |= bit
            self._merge(table, DPState(selected | bit, new_profitable), shifted)
        return table

    def forget(self, child: DPTable, u: int) -> DPTable:
        bit = 1 << u
        profit = self.inst.profits[u]
        table: DPTable = {}
        for (selected, profitable), lst in child.items():
            if not selected & bit:
                self._merge(table, DPState(selected, profitable), lst)
            elif profitable & bit:
                self._merge(table, DPState(selected & ~bit, profitable & ~bit), lst.shift(0, profit))
            elif not self.variant.is_hard:
                self._merge(table, DPState(selected & ~bit, profitable), lst)
        return table

    def join(self, left: DPTable, right: DPTable) -> DPTable:
        by_selected = defaultdict(list)
        for (selected, profitable), lst in right.items():
            by_selected[selected].append((profitable, lst))
        one_neighborhood = self.variant.is_one_neighborhood
        table: DPTable = {}
        for (selected, left_profitable), left_list in left.items():
            offset = -self._weight(selected)
            for right_profitable, right_list in by_selected.get(selected, ()):
                if one_neighborhood:
                    profitable = left_profitable | right_profitable
                else:
                    profitable = left_profitable & right_profitable
                self._merge(table, DPState(selected, profitable), left_list.combine(right_list, offset, 0))
        return table

    def run(self, ntd: NiceTreeDecomposition) -> DPTable:
        """Fill the tables bottom-up and return the root table."""
        tables: dict[int, DPTable] = {}
        for node in ntd.postorder():
            match node.kind:
                case NodeKind.LEAF:
                    table = self.leaf(node.bag)
                case NodeKind.INTRODUCE:
                    child = ntd.nodes[node.children[0]]
                    table = self.introduce(tables.pop(child.id), node.vertex, child.bag)
                case NodeKind.FORGET:
                    table = self.forget(tables.pop(node.children[0]), node.vertex)
                case NodeKind.JOIN:
                    left_id, right_id = node.children
                    if ntd.nodes[left_id].bag != node.bag or ntd.nodes[right_id].bag != node.bag:
                        raise DecompositionError(f'join {node.id}: bag mismatch')
                    table = self.join(tables.pop(left_id), tables.pop(right_id))
            tables[node.id] = table
        return tables[ntd.root]

    def close(self, table: DPTable, bag: frozenset[int]) -> ParetoList:
        """Forget the remaining bag and return the frontier of complete solutions."""
        for v in sorted(bag):
            table = self.forget(table, v)
        return table.get(DPState(0, 0), ParetoList.empty(self.cap, self.demand))

    def anchored_frontier(self, table: DPTable, anchor: int) -> ParetoList:
        """Root cells of a run pinned on `anchor`: the solutions that select it."""
        bit = 1 << anchor
        frontier = ParetoList.empty(self.cap, self.demand)
        satisfied = table.get(DPState(bit, bit))
        if satisfied:
            frontier = frontier.union(satisfied.shift(0, self.inst.profits[anchor]))
        unsatisfied = table.get(DPState(bit, 0))
        if unsatisfied and not self.variant.is_hard:
            frontier = frontier.union(unsatisfied)
        return frontier


def dp_leaf(variant: Variant, inst: Instance, v: int | None, decision: bool = False) -> DPTable:
    """Table of a leaf bag holding v (or nothing when v is None).

    At most two cells: the empty state with (0, 0), and v selected with
    (w_v, 0) when w_v fits. Profits are credited when a vertex is forgotten,
    once its whole neighbourhood has been seen, so a selected vertex carries no
    profit yet and there is no separate cell for v already being profitable.
    v starts profitable only if no out-neighbour can ever witness against it:
    for the 1-neighborhood variants when it has no out-neighbour, for the
    all-neighborhood variants always, until an unselected out-neighbour is
    introduced. The optimum and the final frontier are the same as with
    profit-carrying leaf cells.

    Examples:
    >>> from knapsack.instance import make_instance
    >>> table = dp_leaf(Variant.RELAXED_1N, make_instance(1, [], [2], [5], 3, 0), 0)
    >>> sorted(lst.pairs for lst in table.values())
    [[(0, 0)], [(2, 0)]]
    """
    return TreewidthDP(inst, variant, decision).leaf(frozenset() if v is None else frozenset([v]))


def dp_introduce(variant: Variant, inst: Instance, child: DPTable, u: int, child_bag: Iterable[int],
                 decision: bool = False) -> DPTable:
    child_bag = frozenset(child_bag)
    if u in child_bag:
        raise DecompositionError(f'vertex {u} already in the bag')
    return TreewidthDP(inst, variant, decision).introduce(child, u, child_bag)


def dp_forget(variant: Variant, inst: Instance, child: DPTable, u: int, decision: bool = False) -> DPTable:
    return TreewidthDP(inst, variant, decision).forget(child, u)


def dp_join(variant: Variant, left: DPTable, right: DPTable, bag: Iterable[int], inst: Instance,
            decision: bool = False) -> DPTable:
    bag_mask = _mask(bag)
    for table in (left, right):
        if any(state.selected & ~bag_mask for state in table):
            raise DecompositionError('bag mismatch')
    return TreewidthDP(inst, variant, decision).join(left, right)


def solve_treewidth(inst: Instance, variant: Variant, td: TreeDecomposition | None = None,
                    strategy: TwdpStrategy = TwdpStrategy.GUESSED, decision: bool = False) -> SolveResult:
    """Exact optimum through dynamic programming over a tree decomposition.

    With the guessed strategy every vertex in turn is pinned into all bags and the
    solutions selecting it are read off the root; the empty selection is added.
    The rooted strategy runs once and forgets the root bag.

    Args:
        inst (Instance): self-loop free instance
        variant (Variant): problem variant
        td (TreeDecomposition, optional): decomposition of the graph; min-fill when omitted
        strategy (TwdpStrategy, optional): Defaults to TwdpStrategy.GUESSED.
        decision (bool, optional): clamp profits at the demand

    Raises:
        InstanceError: invalid instance or self-loops present
        DecompositionError: `td` is not a decomposition of the graph
    """
    require_valid(inst)
    if inst.graph.self_loops:
        raise InstanceError('self-loops present, normalize the instance first')

    demand = inst.demand if decision else None
    if decision and inst.demand == 0:
        return SolveResult(0, ParetoList.zero(inst.size, demand), algorithm='twdp')

    if td is None:
        td = heuristic_td(inst.graph)
    else:
        report = validate_td(inst.graph, td)
        if not report.ok:
            raise DecompositionError(f'invalid decomposition: {report}')
    ntd = make_nice(td)
    dp = TreewidthDP(inst, variant, decision)

    if strategy == TwdpStrategy.ROOTED:
        frontier = dp.close(dp.run(ntd), ntd.nodes[ntd.root].bag)
    else:
        frontier = ParetoList.zero(inst.size, demand)
        for v in range(inst.n):
            augmented = augment_all_bags(ntd, v)
            frontier = frontier.union(dp.anchored_frontier(dp.run(augmented), v))
            LOGGER.debug(f'twdp {variant}: anchor {v} done, frontier size {len(frontier)}')

    best = frontier.best_profit
    log_result(f'twdp {variant} ({strategy}): width {td.width}, best profit {best}')
    return SolveResult(best, frontier, None, algorithm='twdp',
                       details={'width': td.width, 'strategy': strategy.value})
