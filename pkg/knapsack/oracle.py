from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Iterable

from general.utils import INT64_MAX, ValueOverflowError, checked_sum
from knapsack.instance import Instance, Variant, VertexRangeError
from knapsack.pareto import ParetoList
from log.logger import LOGGER


class GuardExceededError(ValueError):
    pass


@dataclass(frozen=True)
class Evaluation:
    selected: frozenset[int]
    profitable: frozenset[int]
    weight: int
    profit: int

    @property
    def hard_feasible(self) -> bool:
        return self.profitable == self.selected


@dataclass
class SolveResult:
    """Outcome of a solver run.

    `best_profit` is the largest profit of a selection within the knapsack size;
    `witness` is a selection achieving it when the solver reconstructs one.
    """
    best_profit: int
    frontier: ParetoList
    witness: frozenset[int] | None = None
    algorithm: str = ''
    exact: bool = True
    details: dict[str, Any] = field(default_factory=dict)

    def meets(self, demand: int) -> bool:
        return self.best_profit >= demand

    def summary(self) -> dict[str, Any]:
        """Plain data for the machine readable result line."""
        return {
            'algorithm': self.algorithm,
            'profit': self.best_profit,
            'exact': self.exact,
            'witness': sorted(self.witness) if self.witness is not None else None,
            'frontier': [list(pair) for pair in self.frontier],
            **self.details,
        }


def _check_selection(inst: Instance, selected: Iterable[int]) -> frozenset[int]:
    selection = frozenset(selected)
    for v in selection:
        if not 0 <= v < inst.n:
            raise VertexRangeError(f'vertex {v} out of range [0, {inst.n})')
    return selection


def _is_profitable(inst: Instance, variant: Variant, v: int, selection: frozenset[int]) -> bool:
    out = inst.graph.out_neighbors(v)
    if variant.is_one_neighborhood:
        return not out or any(x in selection for x in out)
    return all(x in selection for x in out)


def profitable_set(inst: Instance, variant: Variant, selected: Iterable[int]) -> frozenset[int]:
    """Selected vertices whose neighborhood condition holds.

    1N: some out-neighbor is selected, or there is none. All-N: every
    out-neighbor is selected.

    Examples:
    >>> from knapsack.instance import make_instance
    >>> inst = make_instance(2, [(0, 1)], [1, 1], [1, 1], 2, 0)
    >>> sorted(profitable_set(inst, Variant.RELAXED_1N, {0, 1}))
    [0, 1]
    >>> sorted(profitable_set(inst, Variant.RELAXED_1N, {0}))
    []
    """
    selection = _check_selection(inst, selected)
    return frozenset(v for v in selection if _is_profitable(inst, variant, v, selection))


def evaluate(inst: Instance, variant: Variant, selected: Iterable[int]) -> Evaluation:
    """Weight over the selection; profit over the profitable part.

    For hard variants a feasible selection has profitable == selected, so both sums
    run over the whole selection.

    Raises:
        VertexRangeError: a selected vertex is not in the instance
        ValueOverflowError: a sum leaves the 64-bit range
    """
    selection = _check_selection(inst, selected)
    profitable = profitable_set(inst, variant, selection)
    weight = checked_sum((inst.weights[v] for v in selection), 'weight')
    profit = checked_sum((inst.profits[v] for v in profitable), 'profit')
    return Evaluation(selection, profitable, weight, profit)


def decide(inst: Instance, variant: Variant, selected: Iterable[int]) -> bool:
    evaluation = evaluate(inst, variant, selected)
    if variant.is_hard and not evaluation.hard_feasible:
        return False
    return evaluation.weight <= inst.size and evaluation.profit >= inst.demand


def _witness_key(profit: int, weight: int, members: tuple[int, ...]):
    return -profit, weight, members


def brute_force(inst: Instance, variant: Variant, guard: int = 25, decision: bool = False,
                max_selected: int | None = None) -> SolveResult:
    """Exact solver enumerating every subset.

    Among selections of maximum profit the lightest wins, then the
    lexicographically smallest vertex list.

    Args:
        inst (Instance): instance to solve
        variant (Variant): problem variant
        guard (int, optional): largest vertex count accepted. Defaults to 25.
        decision (bool, optional): clamp the frontier profits at the demand.
        max_selected (int, optional): only consider selections with at most this
            many vertices.

    Raises:
        GuardExceededError: the instance has more than `guard` vertices
    """
    n = inst.n
    if n > guard:
        raise GuardExceededError(f'brute force refused: n={n} exceeds guard {guard}')

    out_masks = [0] * n
    for v in range(n):
        for x in inst.graph.out_neighbors(v):
            out_masks[v] |= 1 << x
    one_neighborhood = variant.is_one_neighborhood
    weights, profits = inst.weights, inst.profits

    pairs = []
    best_key = None
    best = (0, 0, 0)
    for mask in range(1 << n):
        if max_selected is not None and mask.bit_count() > max_selected:
            continue
        weight = 0
        profit = 0
        feasible = True
        rest = mask
        while rest:
            low = rest & -rest
            v = low.bit_length() - 1
            rest ^= low
            weight += weights[v]
            if one_neighborhood:
                good = out_masks[v] == 0 or (out_masks[v] & mask) != 0
            else:
                good = (out_masks[v] & ~mask) == 0
            if good:
                profit += profits[v]
            elif variant.is_hard:
                feasible = False
                break
        if not feasible or weight > inst.size:
            continue
        if weight > INT64_MAX or profit > INT64_MAX:
            raise ValueOverflowError('brute force sums exceed the 64-bit range')
        pairs.append((weight, profit))
        members = tuple(v for v in range(n) if mask >> v & 1)
        key = _witness_key(profit, weight, members)
        if best_key is None or key < best_key:
            best_key = key
            best = (profit, weight, mask)

    demand = inst.demand if decision else None
    frontier = ParetoList(pairs, inst.size, demand)
    witness = frozenset(v for v in range(n) if best[2] >> v & 1)
    LOGGER.debug(f'brute force {variant}: n={n}, best profit {best[0]}')
    return SolveResult(best[0], frontier, witness, algorithm='brute')
