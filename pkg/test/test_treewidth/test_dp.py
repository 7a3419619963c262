import pytest

from knapsack.instance import Graph, InstanceError, Variant, make_instance
from knapsack.oracle import brute_force
from test.helpers import VARIANTS, random_instances, random_tree
from toolkit.generators import gen_star_knapsack, knapsack_optimum
from treewidth.dp import DPState, TwdpStrategy, dp_forget, dp_introduce, dp_join, dp_leaf, solve_treewidth
from treewidth.treedecomp import DecompositionError, TreeDecomposition


def single(w, p, s):
    return make_instance(1, [], [w], [p], s, 0)


def cells(table):
    return {state: lst.pairs for state, lst in table.items()}


class TestLeaf:
    def test_fits(self):
        table = dp_leaf(Variant.RELAXED_1N, single(1, 1, 3), 0)
        # profit is credited when the vertex is forgotten
        assert cells(table) == {DPState.of(): [(0, 0)], DPState.of({0}, {0}): [(1, 0)]}

    def test_over_budget(self):
        assert cells(dp_leaf(Variant.RELAXED_1N, single(5, 1, 3), 0)) == {DPState.of(): [(0, 0)]}

    def test_zero_weight(self):
        table = dp_leaf(Variant.HARD_1N, single(0, 0, 3), 0)
        assert table[DPState.of({0}, {0})] == [(0, 0)]

    def test_one_neighborhood_needs_witness(self):
        inst = make_instance(2, [(0, 1)], [1, 1], [1, 1], 3, 0)
        assert DPState.of({0}, ()) in dp_leaf(Variant.RELAXED_1N, inst, 0)
        assert DPState.of({0}, {0}) in dp_leaf(Variant.RELAXED_ALL, inst, 0)

    def test_empty_bag(self):
        assert cells(dp_leaf(Variant.HARD_ALL, single(1, 1, 3), None)) == {DPState.of(): [(0, 0)]}


class TestIntroduceForget:
    @pytest.fixture
    def edge(self):
        return make_instance(2, [(0, 1)], [1, 2], [3, 4], 5, 0)

    def test_witness_activates_tail(self, edge):
        table = dp_introduce(Variant.RELAXED_1N, edge, dp_leaf(Variant.RELAXED_1N, edge, 0), 1, {0})
        assert cells(table) == {
            DPState.of(): [(0, 0)],
            DPState.of({0}, ()): [(1, 0)],
            DPState.of({1}, {1}): [(2, 0)],
            DPState.of({0, 1}, {0, 1}): [(3, 0)],
        }

    @pytest.mark.parametrize('variant', [Variant.RELAXED_1N, Variant.HARD_1N])
    def test_forget_both(self, edge, variant):
        table = dp_introduce(variant, edge, dp_leaf(variant, edge, 0), 1, {0})
        table = dp_forget(variant, edge, dp_forget(variant, edge, table, 1), 0)
        assert cells(table) == {DPState.of(): [(0, 0), (2, 4), (3, 7)]}

    def test_all_neighborhood_unselected_out_neighbor(self, edge):
        table = dp_introduce(Variant.RELAXED_ALL, edge, dp_leaf(Variant.RELAXED_ALL, edge, 0), 1, {0})
        assert DPState.of({0}, {0}) not in table
        assert table[DPState.of({0}, ())] == [(1, 0)]
        assert table[DPState.of({0, 1}, {0, 1})] == [(3, 0)]

    def test_isolated_vertex(self):
        inst = make_instance(2, [], [1, 2], [3, 4], 5, 0)
        table = dp_introduce(Variant.RELAXED_1N, inst, dp_leaf(Variant.RELAXED_1N, inst, 0), 1, {0})
        assert table[DPState.of({1}, {1})] == [(2, 0)]
        assert table[DPState.of({0, 1}, {0, 1})] == [(3, 0)]

    def test_introduce_present_vertex(self, edge):
        with pytest.raises(DecompositionError):
            dp_introduce(Variant.RELAXED_1N, edge, dp_leaf(Variant.RELAXED_1N, edge, 0), 0, {0})

    def test_forget_unsatisfied(self, edge):
        child = dp_leaf(Variant.RELAXED_1N, edge, 0)
        assert cells(dp_forget(Variant.RELAXED_1N, edge, child, 0)) == {DPState.of(): [(0, 0)]}
        lone = {DPState.of({0}, ()): child[DPState.of({0}, ())]}
        assert dp_forget(Variant.HARD_1N, edge, lone, 0) == {}
        assert cells(dp_forget(Variant.RELAXED_1N, edge, lone, 0)) == {DPState.of(): [(1, 0)]}

    def test_forget_unselected(self, edge):
        table = dp_leaf(Variant.RELAXED_1N, edge, None)
        assert cells(dp_forget(Variant.RELAXED_1N, edge, table, 0)) == cells(table)


class TestJoin:
    @pytest.fixture
    def inst(self):
        return make_instance(3, [(0, 1), (0, 2)], [2, 1, 1], [5, 1, 1], 6, 0)

    def test_empty_states(self, inst):
        leaf = dp_leaf(Variant.RELAXED_1N, inst, None)
        assert cells(dp_join(Variant.RELAXED_1N, leaf, leaf, (), inst)) == {DPState.of(): [(0, 0)]}

    def test_shared_vertex_not_doubled(self, inst):
        leaf = dp_leaf(Variant.RELAXED_ALL, make_instance(1, [], [2], [5], 6, 0), 0)
        table = dp_join(Variant.RELAXED_ALL, leaf, leaf, {0}, inst)
        assert table[DPState.of({0}, {0})] == [(2, 0)]

    def test_one_neighborhood_unions_profitable(self, inst):
        leaf = dp_leaf(Variant.RELAXED_1N, inst, 0)
        left = dp_forget(Variant.RELAXED_1N, inst,
                         dp_introduce(Variant.RELAXED_1N, inst, leaf, 1, {0}), 1)
        right = dp_forget(Variant.RELAXED_1N, inst,
                          dp_introduce(Variant.RELAXED_1N, inst, leaf, 2, {0}), 2)
        table = dp_join(Variant.RELAXED_1N, left, right, {0}, inst)
        # 0 picked with one witness on either side
        assert table[DPState.of({0}, {0})] == [(3, 1), (4, 2)]
        final = dp_forget(Variant.RELAXED_1N, inst, table, 0)
        assert final[DPState.of()].best_profit == 7

    def test_all_neighborhood_intersects_profitable(self, inst):
        leaf = dp_leaf(Variant.RELAXED_ALL, inst, 0)
        left = dp_forget(Variant.RELAXED_ALL, inst,
                         dp_introduce(Variant.RELAXED_ALL, inst, leaf, 1, {0}), 1)
        right = dp_forget(Variant.RELAXED_ALL, inst,
                          dp_introduce(Variant.RELAXED_ALL, inst, leaf, 2, {0}), 2)
        table = dp_join(Variant.RELAXED_ALL, left, right, {0}, inst)
        assert table[DPState.of({0}, {0})] == [(4, 2)]
        assert table[DPState.of({0}, ())] == [(2, 0), (3, 1)]

    def test_bag_mismatch(self, inst):
        leaf = dp_leaf(Variant.RELAXED_1N, inst, 1)
        with pytest.raises(DecompositionError):
            dp_join(Variant.RELAXED_1N, leaf, leaf, {0}, inst)


class TestSolveTreewidth:
    def test_uniform_path(self):
        path = make_instance(3, [(0, 1), (1, 2)], [1] * 3, [1] * 3, 2, 0, directed=False)
        assert solve_treewidth(path, Variant.RELAXED_1N).best_profit == 2

    def test_isolated_vertex(self):
        assert solve_treewidth(single(1, 7, 1), Variant.RELAXED_1N).best_profit == 7

    @pytest.mark.parametrize('strategy', list(TwdpStrategy))
    def test_star_knapsack(self, strategy):
        items = [(3, 4), (4, 5), (2, 3), (5, 8), (1, 1)]
        gadget = gen_star_knapsack(items, 9, 12)
        result = solve_treewidth(gadget.instance, gadget.variant, strategy=strategy)
        assert result.best_profit == knapsack_optimum(items, 9)

    def test_rejects_self_loops(self):
        inst = make_instance(2, [(0, 0)], [1, 1], [1, 1], 1, 0)
        with pytest.raises(InstanceError):
            solve_treewidth(inst, Variant.RELAXED_1N)

    def test_rejects_foreign_decomposition(self):
        path = make_instance(3, [(0, 1), (1, 2)], [1] * 3, [1] * 3, 2, 0, directed=False)
        with pytest.raises(DecompositionError):
            solve_treewidth(path, Variant.RELAXED_1N, TreeDecomposition({0: {0, 1}, 1: {2}}, [(0, 1)]))

    def test_given_decomposition(self):
        path = make_instance(3, [(0, 1), (1, 2)], [1] * 3, [1] * 3, 3, 0, directed=False)
        td = TreeDecomposition({0: {0, 1}, 1: {1, 2}}, [(0, 1)])
        result = solve_treewidth(path, Variant.HARD_ALL, td)
        assert result.best_profit == 3
        assert result.details['width'] == 1

    def test_zero_demand_short_circuit(self):
        inst = make_instance(2, [(0, 1)], [1, 1], [1, 1], 2, 0)
        result = solve_treewidth(inst, Variant.RELAXED_1N, decision=True)
        assert result.best_profit == 0
        assert result.frontier == [(0, 0)]

    @pytest.mark.parametrize('variant', VARIANTS)
    @pytest.mark.parametrize('directed', [True, False])
    def test_rooted_matches_oracle(self, variant, directed):
        for inst in random_instances(100, directed, seed=31, max_n=8):
            expected = brute_force(inst, variant)
            result = solve_treewidth(inst, variant, strategy=TwdpStrategy.ROOTED)
            assert result.best_profit == expected.best_profit, inst
            assert result.frontier == expected.frontier

    @pytest.mark.parametrize('variant', VARIANTS)
    @pytest.mark.parametrize('directed', [True, False])
    def test_guessed_matches_oracle(self, variant, directed):
        for inst in random_instances(25, directed, seed=37, max_n=7):
            expected = brute_force(inst, variant)
            result = solve_treewidth(inst, variant, strategy=TwdpStrategy.GUESSED)
            assert result.best_profit == expected.best_profit, inst
            assert result.frontier == expected.frontier

    @pytest.mark.parametrize('directed', [True, False])
    def test_guessed_matches_oracle_up_to_ten_vertices(self, directed):
        for index, inst in enumerate(random_instances(250, directed, seed=43, max_n=10)):
            variant = VARIANTS[index % len(VARIANTS)]
            expected = brute_force(inst, variant)
            result = solve_treewidth(inst, variant, strategy=TwdpStrategy.GUESSED)
            assert result.best_profit == expected.best_profit, (variant, inst)
            assert result.frontier == expected.frontier

    @pytest.mark.parametrize('variant', VARIANTS)
    def test_decision_frontier(self, variant):
        for index, inst in enumerate(random_instances(60, True, seed=41, max_n=8)):
            inst = inst.replace(demand=1 + index % 15)
            expected = brute_force(inst, variant, decision=True)
            result = solve_treewidth(inst, variant, strategy=TwdpStrategy.ROOTED, decision=True)
            assert result.frontier == expected.frontier
            assert len(result.frontier) <= min(inst.size, inst.demand) + 1
            assert result.meets(inst.demand) == expected.meets(inst.demand)

    @pytest.mark.parametrize('directed', [True, False])
    def test_large_trees(self, directed):
        for seed in range(2):
            tree = random_tree(200, seed, directed).replace(size=200, demand=200)
            results = {variant: solve_treewidth(tree, variant, strategy=TwdpStrategy.ROOTED, decision=True)
                       for variant in VARIANTS}
            assert results[Variant.HARD_1N].best_profit <= results[Variant.RELAXED_1N].best_profit
            assert results[Variant.HARD_ALL].best_profit <= results[Variant.RELAXED_ALL].best_profit
            assert all(len(r.frontier) <= 201 for r in results.values())

    def test_hard_agrees_with_relaxed_on_sinkless_cycle(self):
        cycle = make_instance(4, [(i, (i + 1) % 4) for i in range(4)], [1] * 4, [2] * 4, 4, 0)
        hard = solve_treewidth(cycle, Variant.HARD_1N)
        relaxed = solve_treewidth(cycle, Variant.RELAXED_1N)
        assert hard.best_profit == relaxed.best_profit == 8

    def test_disconnected_graph(self):
        inst = make_instance(4, [(0, 1), (2, 3)], [1] * 4, [1, 2, 3, 4], 2, 0, directed=False)
        assert solve_treewidth(inst, Variant.HARD_ALL, strategy=TwdpStrategy.GUESSED).best_profit == 7
        assert solve_treewidth(inst, Variant.HARD_ALL, strategy=TwdpStrategy.ROOTED).best_profit == 7
