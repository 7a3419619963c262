from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from itertools import product
from typing import Iterator

import numpy as np
from sympy import nextprime

from general.enum import Enum
from knapsack.instance import Edge, Graph, Instance, add_sink_dummies
from log.logger import LOGGER


class ColorCodingError(ValueError):
    pass


class ColoringMode(Enum):
    EXHAUSTIVE = 'exhaustive'
    FAMILY = 'family'


@dataclass(frozen=True)
class EdgeColoring:
    """Colour in 1..b for every edge, aligned with `Graph.edges`."""
    edges: tuple[Edge, ...]
    colors: tuple[int, ...]
    b: int

    def __post_init__(self):
        if len(self.edges) != len(self.colors):
            raise ColorCodingError(f'{len(self.colors)} colours for {len(self.edges)} edges')
        for color in self.colors:
            if not 1 <= color <= self.b:
                raise ColorCodingError(f'colour {color} outside 1..{self.b}')

    @classmethod
    def of(cls, graph: Graph, colors, b: int) -> EdgeColoring:
        return cls(tuple(graph.edges), tuple(int(c) for c in colors), b)

    def color(self, edge: Edge) -> int:
        return self.as_dict()[tuple(edge)]

    def as_dict(self) -> dict[Edge, int]:
        return dict(zip(self.edges, self.colors))

    def incoming(self) -> dict[int, dict[int, list[int]]]:
        """For every head x: colour -> tails y of the edges y -> x with that colour."""
        result: dict[int, dict[int, list[int]]] = defaultdict(lambda: defaultdict(list))
        for (y, x), color in zip(self.edges, self.colors):
            result[x][color].append(y)
        return result


@dataclass(frozen=True)
class Preprocessed:
    instance: Instance
    original_n: int
    dummies: int

    def real_budget(self, b: int) -> int:
        """Real vertices always covered by a bound of b vertices, dummies included.

        r real vertices need at most min(r, dummies) dummies.

        Examples:
        >>> Preprocessed(None, 4, 1).real_budget(3)
        2
        >>> Preprocessed(None, 4, 0).real_budget(3)
        3
        """
        return max(b - self.dummies, b // 2)


def preprocess_cc(inst: Instance) -> Preprocessed:
    """Sink-augment a directed instance for colour coding.

    Raises:
        ColorCodingError: the instance is undirected
        InstanceError: the instance has self-loops
    """
    if not inst.directed:
        raise ColorCodingError('colour coding requires a directed instance')
    augmented, _ = add_sink_dummies(inst)
    return Preprocessed(augmented, inst.n, augmented.n - inst.n)


def _generator(seed) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(seed))


def trial_seed(seed: int, trial: int) -> np.random.SeedSequence:
    """Seed of one trial; independent of how many trials run."""
    return np.random.SeedSequence(seed, spawn_key=(trial,))


def random_coloring(graph: Graph, b: int, seed) -> EdgeColoring:
    """Independent uniform colour in 1..b per edge, reproducible per seed.

    Examples:
    >>> g = Graph(3, [(0, 1), (1, 2)])
    >>> random_coloring(g, 1, 7).colors
    (1, 1)
    """
    if b < 1:
        raise ColorCodingError(f'need at least one colour, got {b}')
    colors = _generator(seed).integers(1, b + 1, size=graph.m)
    return EdgeColoring.of(graph, colors.tolist(), b)


def exhaustive_colorings(graph: Graph, b: int, budget: int) -> Iterator[EdgeColoring]:
    """All b^m colourings.

    Raises:
        ColorCodingError: b^m exceeds `budget`
    """
    total = b ** graph.m
    if total > budget:
        raise ColorCodingError(f'exhaustive mode needs {b}^{graph.m} = {total} colourings, budget {budget}')
    for colors in product(range(1, b + 1), repeat=graph.m):
        yield EdgeColoring.of(graph, colors, b)


class HashFamily:
    """Two-level colouring family.

    Edge index i goes to ((a * i) mod p) mod b^2 for the first `primes` primes p
    above max(m, b^2) and every multiplier a in 1..p-1; the result x is folded
    into 1..b by (x mod b + (x // b) * t) mod b + 1 for every t in 0..b-1.
    Any two edges are split by some member; larger colourful sets are best effort.
    """

    def __init__(self, m: int, b: int, primes: int = 3):
        if b < 1:
            raise ColorCodingError(f'need at least one colour, got {b}')
        self.m = m
        self.b = b
        self.primes = []
        p = max(m, b * b)
        for _ in range(primes):
            p = nextprime(p)
            self.primes.append(int(p))

    def __len__(self) -> int:
        return sum(p - 1 for p in self.primes) * self.b

    def functions(self) -> Iterator[list[int]]:
        b = self.b
        for p in self.primes:
            for a in range(1, p):
                inner = [(a * i) % p % (b * b) for i in range(self.m)]
                for t in range(b):
                    yield [(x % b + (x // b) * t) % b + 1 for x in inner]

    def colorings(self, graph: Graph) -> Iterator[EdgeColoring]:
        if graph.m != self.m:
            raise ColorCodingError(f'family built for {self.m} edges, graph has {graph.m}')
        seen = set()
        for colors in self.functions():
            key = tuple(colors)
            if key in seen:
                continue
            seen.add(key)
            yield EdgeColoring.of(graph, key, self.b)
        LOGGER.debug(f'hash family: {len(seen)} distinct colourings out of {len(self)}')
