import math
from itertools import combinations

import pytest

from colorcode.coloring import (ColorCodingError, EdgeColoring, HashFamily, exhaustive_colorings, preprocess_cc,
                                random_coloring, trial_seed)
from knapsack.instance import Graph, make_instance


@pytest.fixture
def path():
    return Graph(4, [(0, 1), (1, 2), (2, 3)])


class TestEdgeColoring:
    def test_lookup(self, path):
        coloring = EdgeColoring.of(path, [2, 1, 2], 2)
        assert coloring.color((1, 2)) == 1
        assert coloring.as_dict() == {(0, 1): 2, (1, 2): 1, (2, 3): 2}

    def test_incoming(self):
        graph = Graph(3, [(0, 2), (1, 2), (2, 0)])
        incoming = EdgeColoring.of(graph, [1, 1, 2], 2).incoming()
        assert incoming[2][1] == [0, 1]
        assert incoming[0][2] == [2]
        assert incoming[1] == {}

    def test_colour_out_of_range(self, path):
        with pytest.raises(ColorCodingError):
            EdgeColoring.of(path, [1, 3, 1], 2)

    def test_length_mismatch(self, path):
        with pytest.raises(ColorCodingError):
            EdgeColoring.of(path, [1, 1], 2)


class TestPreprocess:
    def test_sinkless_unchanged(self):
        inst = make_instance(2, [(0, 1), (1, 0)], [1, 1], [1, 1], 2, 0)
        prepared = preprocess_cc(inst)
        assert prepared.instance is inst
        assert prepared.dummies == 0
        assert prepared.real_budget(3) == 3

    def test_single_sink(self):
        prepared = preprocess_cc(make_instance(2, [(0, 1)], [1, 1], [1, 1], 2, 0))
        assert prepared.instance.n == 3
        assert prepared.original_n == 2
        assert prepared.dummies == 1
        assert prepared.real_budget(3) == 2
        assert prepared.real_budget(4) == 3

    def test_many_sinks(self):
        prepared = preprocess_cc(make_instance(5, [], [1] * 5, [1] * 5, 5, 0))
        assert prepared.dummies == 5
        assert prepared.real_budget(4) == 2
        assert prepared.real_budget(5) == 2

    def test_zero_sink_counted(self):
        prepared = preprocess_cc(make_instance(2, [(0, 1)], [1, 0], [1, 0], 2, 0))
        assert prepared.dummies == 1
        assert prepared.instance.graph.out_neighbors(1) == (2,)

    def test_undirected(self):
        with pytest.raises(ColorCodingError):
            preprocess_cc(make_instance(2, [(0, 1)], [1, 1], [1, 1], 2, 0, directed=False))


class TestRandomColoring:
    def test_single_colour(self, path):
        assert random_coloring(path, 1, 5).colors == (1, 1, 1)

    def test_same_seed(self, path):
        assert random_coloring(path, 4, 11) == random_coloring(path, 4, 11)
        assert random_coloring(path, 4, trial_seed(3, 2)) == random_coloring(path, 4, trial_seed(3, 2))

    def test_trial_seeds_differ(self):
        graph = Graph(2, [(0, 1), (1, 0)])
        colorings = {random_coloring(graph, 8, trial_seed(1, t)).colors for t in range(20)}
        assert len(colorings) > 1

    def test_uniform(self):
        edge = Graph(2, [(0, 1)])
        samples = 10000
        counts = [0] * 4
        for t in range(samples):
            counts[random_coloring(edge, 4, trial_seed(99, t)).colors[0] - 1] += 1
        sigma = math.sqrt(samples * 0.25 * 0.75)
        assert all(abs(count - samples / 4) <= 4 * sigma for count in counts)

    def test_no_colours(self, path):
        with pytest.raises(ColorCodingError):
            random_coloring(path, 0, 1)


class TestExhaustive:
    def test_all_colourings(self):
        graph = Graph(2, [(0, 1), (1, 0)])
        colorings = [c.colors for c in exhaustive_colorings(graph, 2, 10)]
        assert colorings == [(1, 1), (1, 2), (2, 1), (2, 2)]

    def test_over_budget(self, path):
        with pytest.raises(ColorCodingError):
            list(exhaustive_colorings(path, 3, 26))


class TestHashFamily:
    def test_size(self):
        family = HashFamily(4, 2, primes=1)
        assert family.primes == [5]
        assert len(family) == 8

    def test_primes_above_table(self):
        family = HashFamily(3, 3, primes=2)
        assert family.primes == [11, 13]

    def test_separates_every_pair(self):
        graph = Graph(8, [(v, v + 1) for v in range(7)])
        colorings = list(HashFamily(graph.m, 3).colorings(graph))
        for i, j in combinations(range(graph.m), 2):
            assert any(c.colors[i] != c.colors[j] for c in colorings)

    def test_distinct_members(self, path):
        family = HashFamily(path.m, 2)
        colorings = [c.colors for c in family.colorings(path)]
        assert len(colorings) == len(set(colorings))
        assert len(colorings) <= len(family)
        assert all(set(colors) <= {1, 2} for colors in colorings)

    def test_edge_count_mismatch(self, path):
        with pytest.raises(ColorCodingError):
            list(HashFamily(5, 2).colorings(path))
