from __future__ import annotations

from typing import Iterable, Iterator

import numpy as np

from general.utils import INT64_MAX, ValueOverflowError

Pair = tuple[int, int]

# pairwise products above this size are convolved with numpy
_VECTOR_THRESHOLD = 1024


class ParetoError(ValueError):
    pass


def _undominated(pairs: Iterable[Pair], cap: int, demand: int | None) -> tuple[Pair, ...]:
    """Undominated closure: weight in [0, cap], profit clamped at demand when given.

    Sorted by weight, largest profit first on ties; a pair survives when its
    profit beats every lighter pair.
    """
    kept = []
    best = -1
    for weight, profit in sorted(pairs, key=lambda pair: (pair[0], -pair[1])):
        if weight < 0 or weight > cap:
            continue
        if demand is not None and profit > demand:
            profit = demand
        if profit > best:
            kept.append((weight, profit))
            best = profit
    return tuple(kept)


def _undominated_arrays(weights: np.ndarray, profits: np.ndarray, cap: int,
                        demand: int | None) -> tuple[Pair, ...]:
    mask = (weights >= 0) & (weights <= cap)
    weights, profits = weights[mask], profits[mask]
    if weights.size == 0:
        return ()
    if demand is not None:
        profits = np.minimum(profits, demand)
    order = np.lexsort((-profits, weights))
    weights, profits = weights[order], profits[order]
    running = np.maximum.accumulate(profits)
    keep = np.empty(weights.size, dtype=bool)
    keep[0] = True
    keep[1:] = profits[1:] > running[:-1]
    return tuple(zip(weights[keep].tolist(), profits[keep].tolist()))


class ParetoList:
    """Sorted antichain of (weight, profit) pairs.

    Weights and profits are strictly increasing and every weight is at most `cap`.
    With a `demand` the list is in decision mode and profits are clamped at it,
    otherwise it is in optimization mode. Lists are values: every operation
    returns a new list.

    Examples:
    >>> ParetoList([(1, 5)], cap=4).insert((3, 9)).pairs
    [(1, 5), (3, 9)]
    >>> ParetoList([(1, 5)], cap=4).insert((2, 4)).pairs
    [(1, 5)]
    """

    __slots__ = ('_pairs', 'cap', 'demand')

    def __init__(self, pairs: Iterable[Pair] = (), cap: int = INT64_MAX, demand: int | None = None):
        if cap < 0:
            raise ParetoError(f'negative cap {cap}')
        self.cap = cap
        self.demand = demand
        self._pairs = _undominated(pairs, cap, demand)

    @classmethod
    def _trusted(cls, pairs: tuple[Pair, ...], cap: int, demand: int | None) -> ParetoList:
        result = cls.__new__(cls)
        result._pairs = pairs
        result.cap = cap
        result.demand = demand
        return result

    @classmethod
    def empty(cls, cap: int, demand: int | None = None) -> ParetoList:
        return cls._trusted((), cap, demand)

    @classmethod
    def zero(cls, cap: int, demand: int | None = None) -> ParetoList:
        """The list holding only the empty selection (0, 0)."""
        return cls._trusted(((0, 0),), cap, demand)

    @property
    def is_decision(self) -> bool:
        return self.demand is not None

    @property
    def pairs(self) -> list[Pair]:
        return list(self._pairs)

    @property
    def best_profit(self) -> int | None:
        return self._pairs[-1][1] if self._pairs else None

    @property
    def best_pair(self) -> Pair | None:
        """Largest profit; being an antichain it is also the heaviest pair."""
        return self._pairs[-1] if self._pairs else None

    def insert(self, pair: Pair) -> ParetoList:
        return self._trusted(_undominated(self._pairs + (tuple(pair),), self.cap, self.demand),
                             self.cap, self.demand)

    def union(self, other: ParetoList) -> ParetoList:
        self._check_compatible(other)
        if not other._pairs:
            return self
        if not self._pairs:
            return other
        return self._trusted(_undominated(self._pairs + other._pairs, self.cap, self.demand),
                             self.cap, self.demand)

    def combine(self, other: ParetoList, weight_offset: int = 0, profit_offset: int = 0) -> ParetoList:
        """Capped convolution: all sums of one pair from each list plus the offsets.

        Raises:
            ParetoError: cap or mode differ
            ValueOverflowError: a sum leaves the 64-bit range
        """
        self._check_compatible(other)
        if not self._pairs or not other._pairs:
            return self.empty(self.cap, self.demand)
        top_profit = self._pairs[-1][1] + other._pairs[-1][1] + profit_offset
        top_weight = self._pairs[-1][0] + other._pairs[-1][0] + weight_offset
        if top_profit > INT64_MAX or top_weight > INT64_MAX:
            raise ValueOverflowError('pareto combine exceeds the 64-bit range')

        if len(self._pairs) * len(other._pairs) > _VECTOR_THRESHOLD:
            a = np.asarray(self._pairs, dtype=np.int64)
            b = np.asarray(other._pairs, dtype=np.int64)
            weights = (a[:, 0, None] + b[None, :, 0]).ravel() + weight_offset
            profits = (a[:, 1, None] + b[None, :, 1]).ravel() + profit_offset
            pairs = _undominated_arrays(weights, profits, self.cap, self.demand)
        else:
            pairs = _undominated(((wa + wb + weight_offset, pa + pb + profit_offset)
                                  for wa, pa in self._pairs for wb, pb in other._pairs),
                                 self.cap, self.demand)
        return self._trusted(pairs, self.cap, self.demand)

    def shift(self, weight: int = 0, profit: int = 0) -> ParetoList:
        """Add a constant to every pair."""
        if weight == 0 and profit == 0:
            return self
        if self._pairs and self._pairs[-1][1] + profit > INT64_MAX:
            raise ValueOverflowError('pareto shift exceeds the 64-bit range')
        return self._trusted(_undominated(((w + weight, p + profit) for w, p in self._pairs),
                                          self.cap, self.demand), self.cap, self.demand)

    def covers(self, other: ParetoList) -> bool:
        """True when every pair of `other` is dominated by (or equal to) a pair of self."""
        return self.union(other) == self

    def _check_compatible(self, other: ParetoList) -> None:
        if self.cap != other.cap:
            raise ParetoError(f'cap mismatch: {self.cap} != {other.cap}')
        if self.demand != other.demand:
            raise ParetoError(f'mode mismatch: demand {self.demand} != {other.demand}')

    def __len__(self) -> int:
        return len(self._pairs)

    def __iter__(self) -> Iterator[Pair]:
        return iter(self._pairs)

    def __bool__(self) -> bool:
        return bool(self._pairs)

    def __eq__(self, other) -> bool:
        if isinstance(other, ParetoList):
            return self._pairs == other._pairs and self.cap == other.cap and self.demand == other.demand
        if isinstance(other, (list, tuple)):
            return list(self._pairs) == [tuple(pair) for pair in other]
        return NotImplemented

    def __hash__(self):
        return hash((self._pairs, self.cap, self.demand))

    def __getstate__(self) -> dict:
        return {'pairs': [list(pair) for pair in self._pairs], 'cap': self.cap, 'demand': self.demand}

    def __setstate__(self, state: dict) -> None:
        self._pairs = tuple(tuple(pair) for pair in state['pairs'])
        self.cap = state['cap']
        self.demand = state['demand']

    def __repr__(self) -> str:
        mode = 'opt' if self.demand is None else f'd={self.demand}'
        return f'ParetoList({list(self._pairs)}, cap={self.cap}, {mode})'
