"""Polynomial algorithms for RELAXED_1N on uniform instances (every weight and profit is 1)."""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass

import networkx as nx

from knapsack.instance import Instance, InstanceError, Variant, require_valid
from knapsack.oracle import GuardExceededError, SolveResult, brute_force, evaluate
from knapsack.pareto import ParetoList
from log.logger import LOGGER, log_result


def _check_uniform(inst: Instance, directed: bool) -> None:
    require_valid(inst)
    if inst.directed != directed:
        raise InstanceError(f'expected a {"directed" if directed else "undirected"} instance')
    if not inst.is_uniform:
        raise InstanceError('instance is not uniform (all weights and profits must be 1)')
    if inst.graph.self_loops:
        raise InstanceError('self-loops present, normalize the instance first')


def _bfs_order(inst: Instance, source: int, seen: list[bool]) -> list[int]:
    order = [source]
    seen[source] = True
    queue = deque([source])
    while queue:
        v = queue.popleft()
        for x in inst.graph.out_neighbors(v):
            if not seen[x]:
                seen[x] = True
                order.append(x)
                queue.append(x)
    return order


def _result(inst: Instance, selection: set[int], algorithm: str, exact: bool, certify_max_n: int,
            **details) -> SolveResult:
    evaluation = evaluate(inst, Variant.RELAXED_1N, selection)
    frontier = ParetoList([(evaluation.weight, evaluation.profit)], inst.size)
    result = SolveResult(evaluation.profit, frontier, frozenset(selection), algorithm=algorithm, exact=exact,
                         details=details)
    if inst.n <= certify_max_n:
        try:
            optimum = brute_force(inst, Variant.RELAXED_1N, guard=certify_max_n).best_profit
        except GuardExceededError:
            optimum = None
        if optimum is not None:
            result.details['optimum'] = optimum
            result.details['gap'] = optimum - evaluation.profit
    return result


def solve_uniform_undirected(inst: Instance, certify_max_n: int = 0) -> SolveResult:
    """Exact RELAXED_1N optimum of a uniform undirected instance in linear time.

    Connected prefixes of at least two vertices are fully profitable, so the
    budget is spent on BFS prefixes of the components, largest first. A budget
    remainder of one is spent on an isolated vertex, or by giving up the last
    vertex of an earlier component of size three or more and taking two from
    the current one. Isolated vertices fill what is left.

    Args:
        inst (Instance): uniform, undirected, self-loop free
        certify_max_n (int, optional): record the brute-force gap up to this size

    Raises:
        InstanceError: the instance is directed, not uniform or has self-loops
    """
    _check_uniform(inst, directed=False)
    seen = [False] * inst.n
    components = []
    isolated = []
    for v in range(inst.n):
        if seen[v]:
            continue
        order = _bfs_order(inst, v, seen)
        if len(order) == 1:
            isolated.append(v)
        else:
            components.append(order)
    components.sort(key=lambda order: (-len(order), order[0]))

    budget = inst.size
    taken: list[list[int]] = []
    for order in components:
        if budget == 0:
            break
        if budget >= 2:
            count = min(budget, len(order))
            taken.append(order[:count])
            budget -= count
            continue
        # one unit left
        if isolated:
            break
        donor = next((prefix for prefix in taken if len(prefix) >= 3), None)
        if donor is not None:
            donor.pop()
            taken.append(order[:2])
            budget = 0
        break

    selection = {v for prefix in taken for v in prefix}
    extra = isolated[:budget]
    selection.update(extra)
    LOGGER.debug(f'uniform undirected: {len(components)} components, {len(isolated)} isolated, '
                 f'{len(taken)} used, {len(extra)} isolated picks')
    result = _result(inst, selection, 'approx', True, certify_max_n)
    log_result(f'approx uniform undirected: profit {result.best_profit}')
    return result


@dataclass(frozen=True)
class SccDecomposition:
    """Strongly connected components by non-increasing size, ties by smallest member."""
    components: tuple[tuple[int, ...], ...]
    component_of: tuple[int, ...]

    @classmethod
    def of(cls, inst: Instance) -> SccDecomposition:
        found = [tuple(sorted(c)) for c in nx.strongly_connected_components(inst.graph.to_networkx())]
        found.sort(key=lambda c: (-len(c), c[0]))
        component_of = [0] * inst.n
        for index, members in enumerate(found):
            for v in members:
                component_of[v] = index
        return cls(tuple(found), tuple(component_of))

    def __len__(self) -> int:
        return len(self.components)


def solve_uniform_directed_additive1(inst: Instance, certify_max_n: int = 12) -> SolveResult:
    """RELAXED_1N on a uniform digraph within one of the optimum.

    Whole strongly connected components are packed largest first; the first one
    that does not fit contributes a DFS preorder prefix of the remaining budget,
    starting at its smallest member. Up to `certify_max_n` vertices the result
    carries the brute-force optimum and the gap.

    Raises:
        InstanceError: the instance is undirected, not uniform or has self-loops
    """
    _check_uniform(inst, directed=True)
    scc = SccDecomposition.of(inst)
    budget = inst.size
    selection: set[int] = set()
    partial = None
    for members in scc.components:
        if budget == 0:
            break
        if len(members) <= budget:
            selection.update(members)
            budget -= len(members)
            continue
        inside = set(members)
        sub = nx.DiGraph()
        sub.add_nodes_from(members)
        sub.add_edges_from((u, x) for u in members for x in inst.graph.out_neighbors(u) if x in inside)
        prefix = list(nx.dfs_preorder_nodes(sub, members[0]))[:budget]
        selection.update(prefix)
        partial = members[0]
        break
    LOGGER.debug(f'uniform directed: {len(scc)} components, partial component at {partial}')
    result = _result(inst, selection, 'approx', False, certify_max_n, components=len(scc))
    log_result(f'approx uniform directed: profit {result.best_profit}, gap {result.details.get("gap")}')
    return result
