from __future__ import annotations

import time
from dataclasses import dataclass
from typing import Callable, Iterator

import numpy as np
import pandas as pd
from tqdm import tqdm

from config import Config
from config.config import ConfigKey
from knapsack.instance import Graph, Instance, Variant, make_instance
from log.logger import LOGGER
from toolkit.cli import Algorithm, applicable_algorithms, exact_dispatcher
from toolkit.generators import gen_from_clique, gen_from_cutting, gen_from_set_cover, gen_random, gen_star_knapsack
from treewidth.treedecomp import heuristic_td

COLUMNS = ['instance', 'algorithm', 'width_or_b', 'wall_time_us', 'value']


@dataclass(frozen=True)
class BenchCase:
    name: str
    instance: Instance
    variant: Variant


def random_tree(n: int, seed: int, directed: bool = False) -> Instance:
    """Random recursive tree with weights and profits in 1..5 and s = n // 2."""
    rng = np.random.Generator(np.random.Philox(seed))
    parents = [int(rng.integers(0, v)) for v in range(1, n)]
    edges = [(v, parent) for v, parent in zip(range(1, n), parents)]
    weights = rng.integers(1, 6, size=n).tolist()
    profits = rng.integers(1, 6, size=n).tolist()
    return make_instance(n, edges, weights, profits, n // 2, 0, directed, f'tree n={n} seed={seed}')


def _smoke() -> Iterator[BenchCase]:
    for seed in range(3):
        for variant in Variant:
            inst = gen_random(8, 0.3, 4, 4, 8, 0, directed=True, seed=seed)
            yield BenchCase(f'random-{seed}', inst, variant)


def _trees() -> Iterator[BenchCase]:
    for n in (50, 100, 200):
        for variant in (Variant.RELAXED_1N, Variant.HARD_ALL):
            yield BenchCase(f'tree-{n}', random_tree(n, n), variant)


def _gadgets() -> Iterator[BenchCase]:
    cover = gen_from_set_cover(3, [[1, 2], [2, 3]], 2)
    yield BenchCase('set-cover', cover.instance, cover.variant)
    triangle = Graph(4, [(0, 1), (1, 2), (0, 2), (2, 3)], directed=False)
    clique = gen_from_clique(triangle, 3)
    yield BenchCase('clique', clique.instance, clique.variant)
    cutting = gen_from_cutting(Graph(3, [(0, 1), (1, 2)], directed=False), 1, 1)
    yield BenchCase('cutting', cutting.instance, cutting.variant)
    star = gen_star_knapsack([(2, 3), (2, 3), (3, 4)], 4, 6)
    yield BenchCase('star', star.instance, star.variant)


SUITES: dict[str, Callable[[], Iterator[BenchCase]]] = {
    'smoke': _smoke,
    'trees': _trees,
    'gadgets': _gadgets,
}


def run_suite(name: str, config: Config) -> pd.DataFrame:
    """Time every applicable algorithm on every case of a suite.

    Raises:
        KeyError: unknown suite
    """
    cases = list(SUITES[name]())
    rows = []
    for case in tqdm(cases, desc=name, disable=not config.get_value(ConfigKey.BENCH_PROGRESS)):
        dispatcher = exact_dispatcher(case.instance, config)
        for algorithm in applicable_algorithms(case.instance, case.variant, config):
            start = time.perf_counter_ns()
            result = dispatcher.run(case.instance, case.variant, algorithm)
            elapsed = (time.perf_counter_ns() - start) // 1000
            if algorithm == Algorithm.TWDP:
                parameter = heuristic_td(case.instance.graph).width
            else:
                parameter = result.details.get('b', '')
            rows.append([f'{case.name}-{case.variant.tag}', algorithm.value, parameter, elapsed, result.best_profit])
        LOGGER.debug(f'bench {name}: {case.name} done')
    return pd.DataFrame(rows, columns=COLUMNS)
