import jsonpickle
import numpy as np
import pytest

from general.utils import INT64_MAX, ValueOverflowError
from knapsack import pareto
from knapsack.pareto import ParetoError, ParetoList


def brute_undominated(pairs, cap, demand=None):
    clamped = {(w, min(p, demand) if demand is not None else p) for w, p in pairs if 0 <= w <= cap}
    kept = [a for a in clamped
            if not any(b != a and b[0] <= a[0] and b[1] >= a[1] for b in clamped)]
    return sorted(kept)


class TestInsert:
    def test_new_pair(self):
        assert ParetoList([(1, 5)], 4).insert((3, 9)) == [(1, 5), (3, 9)]

    def test_dominated(self):
        assert ParetoList([(1, 5)], 4).insert((2, 4)) == [(1, 5)]

    def test_over_cap(self):
        assert ParetoList([(1, 5)], 4).insert((5, 13)) == [(1, 5)]

    def test_equal_weight_keeps_larger_profit(self):
        assert ParetoList([(2, 3), (2, 7), (2, 7)], 4) == [(2, 7)]

    def test_matches_brute_force(self):
        rng = np.random.Generator(np.random.Philox(8))
        for _ in range(200):
            count = int(rng.integers(0, 51))
            pairs = [tuple(int(x) for x in rng.integers(0, 31, size=2)) for _ in range(count)]
            cap = int(rng.integers(0, 31))
            lst = ParetoList.empty(cap)
            for pair in pairs:
                lst = lst.insert(pair)
            assert lst.pairs == brute_undominated(pairs, cap)

    def test_decision_mode_length(self):
        rng = np.random.Generator(np.random.Philox(9))
        for _ in range(100):
            pairs = [tuple(int(x) for x in rng.integers(0, 31, size=2)) for _ in range(40)]
            cap, demand = int(rng.integers(0, 31)), int(rng.integers(0, 31))
            lst = ParetoList(pairs, cap, demand)
            assert len(lst) <= min(cap, demand) + 1
            assert lst.pairs == brute_undominated(pairs, cap, demand)


class TestUnion:
    def test_disjoint(self):
        assert ParetoList([(0, 0)], 4).union(ParetoList([(1, 5)], 4)) == [(0, 0), (1, 5)]

    def test_dominated(self):
        assert ParetoList([(1, 5)], 4).union(ParetoList([(1, 3)], 4)) == [(1, 5)]

    def test_identity(self):
        x = ParetoList([(1, 5), (3, 9)], 4)
        assert ParetoList.empty(4).union(x) == x

    def test_cap_mismatch(self):
        with pytest.raises(ParetoError):
            ParetoList([(1, 5)], 4).union(ParetoList([(1, 5)], 5))

    def test_mode_mismatch(self):
        with pytest.raises(ParetoError):
            ParetoList([(1, 5)], 4).union(ParetoList([(1, 5)], 4, demand=3))

    def test_union_of_many(self):
        lists = [ParetoList([(1, 1)], 3), ParetoList([(2, 5)], 3), ParetoList([(3, 4)], 3)]
        assert lists[0].union(lists[1]).union(lists[2]) == [(1, 1), (2, 5)]


class TestCombine:
    def test_cap_drops_sum(self):
        a = ParetoList([(1, 5), (3, 9)], 4)
        b = ParetoList([(0, 0), (2, 4)], 4)
        assert a.combine(b) == [(1, 5), (3, 9)]

    def test_zero_identity(self):
        x = ParetoList([(1, 5), (3, 9)], 4)
        assert x.combine(ParetoList.zero(4)) == x

    def test_shared_bag_correction(self):
        assert ParetoList([(2, 2)], 4).combine(ParetoList([(2, 2)], 4), -2, -2) == [(2, 2)]

    def test_negative_weights_dropped(self):
        assert ParetoList([(0, 1)], 4).combine(ParetoList([(0, 1)], 4), -1, 0) == []

    def test_decision_clamp(self):
        assert ParetoList([(1, 3)], 4, 4).combine(ParetoList([(1, 3)], 4, 4)) == [(2, 4)]

    def test_overflow(self):
        big = ParetoList([(0, INT64_MAX)], 4)
        with pytest.raises(ValueOverflowError):
            big.combine(ParetoList([(0, 1)], 4))

    def test_commutative_and_associative(self):
        rng = np.random.Generator(np.random.Philox(10))

        def draw():
            return ParetoList([tuple(int(x) for x in rng.integers(0, 20, size=2)) for _ in range(8)], 25)

        for _ in range(50):
            a, b, c = draw(), draw(), draw()
            assert a.combine(b) == b.combine(a)
            assert a.combine(b).combine(c) == a.combine(b.combine(c))

    def test_vectorized_path_matches_loop(self):
        a = ParetoList([(i, 2 * i) for i in range(40)], 200)
        b = ParetoList([(i, 3 * i) for i in range(40)], 200)
        expected = brute_undominated([(wa + wb, pa + pb) for wa, pa in a for wb, pb in b], 200)
        assert a.combine(b).pairs == expected


class TestValueBehaviour:
    def test_best_profit(self):
        assert ParetoList([(1, 5), (3, 9)], 4).best_profit == 9
        assert ParetoList.empty(4).best_profit is None

    def test_shift(self):
        assert ParetoList([(1, 5), (3, 9)], 4).shift(1, 1) == [(2, 6), (4, 10)]
        assert ParetoList([(1, 5), (3, 9)], 4).shift(2, 0) == [(3, 5)]

    def test_covers(self):
        big = ParetoList([(1, 5), (3, 9)], 4)
        assert big.covers(ParetoList([(2, 5)], 4))
        assert not big.covers(ParetoList([(0, 1)], 4))

    def test_jsonpickle_state(self):
        lst = ParetoList([(1, 5)], 4, 3)
        assert jsonpickle.decode(jsonpickle.encode(lst)) == lst


class TestModuleSurface:
    @pytest.mark.parametrize('name', ['insert', 'union', 'combine', 'union_all'])
    def test_operations_are_methods_only(self, name):
        assert not hasattr(pareto, name)
        assert name == 'union_all' or callable(getattr(ParetoList, name))
