import pytest

from knapsack.instance import (Graph, InstanceError, Variant, VertexRangeError, add_sink_dummies, make_instance,
                               neighbors, normalize_self_loops, validate_instance)
from knapsack.oracle import brute_force
from test.helpers import VARIANTS, random_instances


class TestValidateInstance:
    def test_minimal_instance_ok(self):
        assert validate_instance(make_instance(1, [], [1], [1], 0, 0)).ok

    def test_parallel_edge(self):
        report = validate_instance(make_instance(2, [(0, 1), (0, 1)], [1, 1], [1, 1], 1, 0))
        assert 'parallel edge (0,1)' in report

    def test_undirected_parallel_edge_either_order(self):
        report = validate_instance(make_instance(2, [(0, 1), (1, 0)], [1, 1], [1, 1], 1, 0, directed=False))
        assert 'parallel edge (0,1)' in report

    def test_weight_length_mismatch(self):
        report = validate_instance(make_instance(3, [], [1, 1], [1, 1, 1], 1, 0))
        assert 'weight vector length mismatch' in report

    def test_dangling_and_negative(self):
        report = validate_instance(make_instance(2, [(0, 5)], [-1, 1], [1, 1], -3, 0))
        assert 'dangling endpoint in edge (0,5)' in report
        assert 'negative weight at vertex 0' in report
        assert 'negative knapsack size' in report
        assert len(report.violations) == 3

    def test_directed_antiparallel_edges_are_fine(self):
        assert validate_instance(make_instance(2, [(0, 1), (1, 0)], [1, 1], [1, 1], 1, 0)).ok


class TestNeighbors:
    def test_directed(self):
        inst = make_instance(2, [(0, 1)], [1, 1], [1, 1], 1, 0)
        assert neighbors(inst, 0) == {1}
        assert neighbors(inst, 1) == frozenset()

    def test_undirected(self):
        inst = make_instance(2, [(0, 1)], [1, 1], [1, 1], 1, 0, directed=False)
        assert neighbors(inst, 1) == {0}

    def test_out_of_range(self):
        inst = make_instance(2, [(0, 1)], [1, 1], [1, 1], 1, 0)
        with pytest.raises(VertexRangeError):
            neighbors(inst, 2)


class TestNormalizeSelfLoops:
    def test_undirected_one_neighborhood_adds_dummy(self):
        inst = make_instance(1, [(0, 0)], [3], [4], 5, 0, directed=False)
        result = normalize_self_loops(inst, Variant.RELAXED_1N)
        assert result.n == 2
        assert result.graph.edges == ((0, 1),)
        assert (result.weights[1], result.profits[1]) == (0, 0)

    def test_directed_one_neighborhood_drops_out_edges(self):
        inst = make_instance(2, [(0, 0), (0, 1)], [1, 1], [1, 1], 2, 0)
        result = normalize_self_loops(inst, Variant.HARD_1N)
        assert result.graph.edges == ()
        assert result.n == 2

    @pytest.mark.parametrize('variant', [Variant.RELAXED_ALL, Variant.HARD_ALL])
    @pytest.mark.parametrize('directed', [True, False])
    def test_all_neighborhood_drops_loop_only(self, variant, directed):
        inst = make_instance(2, [(0, 0), (0, 1)], [1, 1], [1, 1], 2, 0, directed=directed)
        assert normalize_self_loops(inst, variant).graph.edges == ((0, 1),)

    @pytest.mark.parametrize('variant', VARIANTS)
    def test_loop_free_is_identity(self, variant):
        inst = make_instance(3, [(0, 1), (1, 2)], [1, 2, 3], [3, 2, 1], 4, 0)
        assert normalize_self_loops(inst, variant) is inst

    @pytest.mark.parametrize('variant', VARIANTS)
    @pytest.mark.parametrize('directed', [True, False])
    def test_optimum_preserved(self, variant, directed):
        for index, inst in enumerate(random_instances(50, directed, seed=11, max_n=7)):
            loops = [(v, v) for v in range(inst.n) if (v + index) % 3 == 0]
            looped = inst.replace(graph=Graph(inst.n, list(inst.graph.edges) + loops, directed))
            normalized = normalize_self_loops(looped, variant)
            assert normalized.graph.self_loops == []
            assert normalize_self_loops(normalized, variant) is normalized
            assert brute_force(normalized, variant).best_profit == brute_force(looped, variant).best_profit


class TestAddSinkDummies:
    def test_single_vertex(self):
        inst, mapping = add_sink_dummies(make_instance(1, [], [2], [3], 2, 0))
        assert inst.n == 2
        assert inst.graph.edges == ((0, 1),)
        assert (inst.weights[1], inst.profits[1]) == (0, 0)
        assert mapping == {0: 0}

    def test_cycle_unchanged(self):
        original = make_instance(2, [(0, 1), (1, 0)], [1, 1], [1, 1], 2, 0)
        inst, _ = add_sink_dummies(original)
        assert inst is original

    def test_path_gets_one_dummy(self):
        inst, _ = add_sink_dummies(make_instance(3, [(0, 1), (1, 2)], [1, 1, 1], [1, 1, 1], 3, 0))
        assert inst.n == 4
        assert inst.graph.out_neighbors(2) == (3,)

    def test_zero_sink_gets_dummy(self):
        inst, _ = add_sink_dummies(make_instance(1, [], [0], [0], 0, 0))
        assert inst.n == 2
        assert inst.graph.edges == ((0, 1),)

    def test_dummies_count_as_sinks(self):
        once, _ = add_sink_dummies(make_instance(3, [(0, 1)], [1, 1, 1], [1, 1, 1], 3, 0))
        assert once.n == 5
        twice, _ = add_sink_dummies(once)
        assert twice.n == 7
        assert all(twice.graph.out_neighbors(v) == once.graph.out_neighbors(v) for v in range(3))

    def test_rejects_undirected(self):
        with pytest.raises(InstanceError):
            add_sink_dummies(make_instance(2, [(0, 1)], [1, 1], [1, 1], 1, 0, directed=False))

    def test_optimum_preserved(self):
        for inst in random_instances(60, True, seed=5, max_n=7):
            augmented, _ = add_sink_dummies(inst)
            assert brute_force(augmented, Variant.RELAXED_1N).best_profit == \
                brute_force(inst, Variant.RELAXED_1N).best_profit
