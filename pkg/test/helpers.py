"""Seeded instance streams shared by the solver tests."""
from typing import Iterator

import numpy as np

from knapsack.instance import Instance, Variant, make_instance
from toolkit.generators import gen_random

VARIANTS = list(Variant)


def random_instances(count: int, directed: bool, seed: int = 0, max_n: int = 8, wmax: int = 6, pmax: int = 6,
                     max_s: int = 20, edge_prob: float | None = None) -> Iterator[Instance]:
    """`count` random instances with 1..max_n vertices; size and edge density vary."""
    rng = np.random.Generator(np.random.Philox(seed))
    for index in range(count):
        n = int(rng.integers(1, max_n + 1))
        s = int(rng.integers(0, max_s + 1))
        p = float(rng.choice([0.15, 0.3, 0.5])) if edge_prob is None else edge_prob
        yield gen_random(n, p, wmax, pmax, s, 0, directed, seed=seed * 100003 + index)


def uniform_instances(count: int, directed: bool, seed: int = 0, max_n: int = 12) -> Iterator[Instance]:
    for inst in random_instances(count, directed, seed, max_n, 1, 1, max_n):
        yield inst.replace(weights=(1,) * inst.n, profits=(1,) * inst.n)


def random_tree(n: int, seed: int, directed: bool = False, wmax: int = 6, pmax: int = 6) -> Instance:
    rng = np.random.Generator(np.random.Philox(seed))
    edges = []
    for v in range(1, n):
        parent = int(rng.integers(0, v))
        edges.append((v, parent) if not directed or rng.random() < 0.5 else (parent, v))
    weights = rng.integers(0, wmax + 1, size=n).tolist()
    profits = rng.integers(0, pmax + 1, size=n).tolist()
    return make_instance(n, edges, weights, profits, int(rng.integers(0, 3 * n)), 0, directed)
