import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from balpart import (BalanceSpec, blp_iteration, blp_solve_relocation, build_queues, cut_size, from_edges,
                     klshp_iteration, node_scores, random_balanced_init, run_synchronous,
                     shp1_iteration, shp2_iteration)
from balpart.sync import MoveQueue, kl_swap_count
from conftest import cycle, part
from oracles import enumerate_relocation

CROSS = [0, 1, 0, 1]
SIDE = [0, 0, 1, 1]


def queue(i, j, gains):
    gains = np.sort(np.asarray(gains))[::-1]
    return MoveQueue(i, j, np.arange(len(gains)), gains)


class TestBuildQueues:
    def test_blp_all_nodes_queued(self, c4):
        qs = build_queues(c4, part(c4, CROSS), "blp", 0)
        assert sorted(n for q in qs.values() for n in q.nodes) == [0, 1, 2, 3]
        assert all((q.gains == 2).all() for q in qs.values())

    def test_shp_equilibrium_empty(self, c4):
        assert build_queues(c4, part(c4, SIDE), "shp", 0) == {}

    def test_kl_second_best_nodes(self, c4):
        qs = build_queues(c4, part(c4, SIDE), "kl")
        assert sorted(n for q in qs.values() for n in q.nodes) == [0, 1, 2, 3]
        assert all((q.gains == 0).all() for q in qs.values())

    @settings(max_examples=60, deadline=None)
    @given(st.integers(0, 10_000), st.sampled_from(["blp", "shp", "kl"]), st.sampled_from([None, -1, 0, 1]))
    def test_queue_invariants(self, seed, mode, c):
        rng = np.random.default_rng(seed)
        g = from_edges(rng.integers(0, 40, size=(120, 2)))
        p = random_balanced_init(g, BalanceSpec(g.n, 3), rng)
        qs = build_queues(g, p, mode, c)
        s = node_scores(g, p)
        thr = {"blp": 0, "shp": 0, "kl": -math.inf}[mode] if c is None else c
        nodes = np.concatenate([q.nodes for q in qs.values()]) if qs else np.array([], int)
        assert len(nodes) == len(set(nodes.tolist()))
        assert set(nodes.tolist()) == set(np.flatnonzero(s.gain > thr).tolist())
        for (i, j), q in qs.items():
            assert (p.assignment[q.nodes] == i).all() and (s.target[q.nodes] == j).all()
            assert np.array_equal(q.gains, s.external_gain[q.nodes])
            key = list(zip(-q.gains, q.nodes))
            assert key == sorted(key)


class TestRelocationLP:
    def test_empty(self):
        z, obj = blp_solve_relocation({}, [3, 3], BalanceSpec(6, 2))
        assert obj == 0 and not z.any()

    def test_balance_forces_equal_exchange(self):
        qs = {(0, 1): queue(0, 1, [3, 1]), (1, 0): queue(1, 0, [2])}
        z, obj = blp_solve_relocation(qs, [3, 3], BalanceSpec(6, 2))
        expected = enumerate_relocation({(0, 1): [3, 1], (1, 0): [2]}, [3, 3], 3, 3)
        assert expected == 5
        assert (z[0, 1], z[1, 0], obj) == (1, 1, 5)

    def test_loose_bounds_move_everything(self):
        qs = {(0, 1): queue(0, 1, [3, 1]), (1, 0): queue(1, 0, [2])}
        z, obj = blp_solve_relocation(qs, [3, 3], BalanceSpec(6, 2, 1.0))
        assert (z[0, 1], z[1, 0], obj) == (2, 1, 6)

    @settings(max_examples=150, deadline=None)
    @given(st.integers(2, 3), st.data())
    def test_matches_integer_enumeration(self, k, data):
        pairs = [(i, j) for i in range(k) for j in range(k) if i != j]
        chosen = data.draw(st.lists(st.sampled_from(pairs), min_size=1, max_size=3, unique=True))
        budget = 6
        gains = {}
        for pr in chosen:
            if budget == 0:
                break
            g = data.draw(st.lists(st.integers(-2, 4), min_size=1, max_size=min(budget, 3)))
            budget -= len(g)
            gains[pr] = g
        sizes = data.draw(st.lists(st.integers(2, 5), min_size=k, max_size=k))
        n = sum(sizes)
        eps = data.draw(st.sampled_from([0.0, 0.2, 0.5]))
        spec = BalanceSpec(n, k, eps)
        if not spec.is_feasible(sizes):
            return
        qs = {pr: queue(*pr, g) for pr, g in gains.items()}
        z, obj = blp_solve_relocation(qs, sizes, spec)
        assert obj == enumerate_relocation(gains, sizes, spec.lower, spec.upper)
        new = np.asarray(sizes) - z.sum(1) + z.sum(0)
        assert spec.is_feasible(new)


class TestBLPIteration:
    def test_crossed_cycle_swaps_everything(self, c4):
        # LP optimum moves all four gain-2 nodes (objective 8 beats 4), so the
        # nodes pass each other and the cut is unchanged
        qs = build_queues(c4, part(c4, CROSS), "blp", 0)
        z, obj = blp_solve_relocation(qs, [2, 2], BalanceSpec(4, 2))
        assert (z[0, 1], z[1, 0], obj) == (2, 2, 8)
        assert enumerate_relocation({pr: q.gains.tolist() for pr, q in qs.items()}, [2, 2], 2, 2) == 8
        p, moved = blp_iteration(c4, part(c4, CROSS), 0)
        assert moved == 4
        assert p.assignment.tolist() == [1, 0, 1, 0]
        assert cut_size(c4, p) == 4

    def test_equilibrium_no_moves(self, c4):
        p0 = part(c4, SIDE)
        p, moved = blp_iteration(c4, p0, 0)
        assert moved == 0 and np.array_equal(p.assignment, p0.assignment)

    def test_single_positive_node_blocked_by_balance(self):
        # two triangles; node 0 has 2 neighbors at home and 3 across
        g = from_edges([(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (0, 3), (0, 4), (0, 5)],
                       id_map=np.arange(6))
        p0 = part(g, [0, 0, 0, 1, 1, 1])
        assert node_scores(g, p0).gain.tolist() == [1, 0, 0, 0, 0, 0]
        p, moved = blp_iteration(g, p0, 0)
        assert moved == 0

    def test_exact_balance_sizes(self):
        rng = np.random.default_rng(2)
        g = from_edges(rng.integers(0, 203, size=(800, 2)))
        spec = BalanceSpec(g.n, 5)
        p = random_balanced_init(g, spec, rng)
        for _ in range(5):
            p, _ = blp_iteration(g, p, 0)
            assert set(p.shard_sizes.tolist()) <= {g.n // 5, -(-g.n // 5)}


class TestSwaps:
    def test_cycle_swaps(self, c4):
        for fn in (lambda g, p: shp1_iteration(g, p, 0), shp2_iteration, klshp_iteration):
            p, swaps = fn(c4, part(c4, CROSS))
            assert swaps == 2
            assert p.shard_sizes.tolist() == [2, 2]

    def test_equilibrium(self, c4):
        for fn in (lambda g, p: shp1_iteration(g, p, 0), shp2_iteration):
            _, swaps = fn(c4, part(c4, SIDE))
            assert swaps == 0

    def test_kl_rule(self):
        assert kl_swap_count([2, -1], [1, -1]) == 1
        assert kl_swap_count([0, -1], [0, -2]) == 0
        assert kl_swap_count([1], [-1]) == 0
        assert kl_swap_count([], [3]) == 0

    @settings(max_examples=40, deadline=None)
    @given(st.integers(0, 10_000), st.integers(2, 4))
    def test_swap_counts_and_sizes(self, seed, k):
        rng = np.random.default_rng(seed)
        g = from_edges(rng.integers(0, 60, size=(200, 2)))
        p = random_balanced_init(g, BalanceSpec(g.n, k), rng)
        shp = build_queues(g, p, "shp", 0)
        kl = build_queues(g, p, "kl")
        pairs = [(i, j) for i in range(k) for j in range(i + 1, k)]
        expect_shp = sum(min(len(shp[(i, j)]), len(shp[(j, i)]))
                         for i, j in pairs if (i, j) in shp and (j, i) in shp)
        expect_kl = sum(kl_swap_count(kl[(i, j)].gains, kl[(j, i)].gains)
                        for i, j in pairs if (i, j) in kl and (j, i) in kl)
        for fn, expect in ((lambda g, p: shp1_iteration(g, p, rng), expect_shp),
                           (shp2_iteration, expect_shp), (klshp_iteration, expect_kl)):
            q, swaps = fn(g, p)
            assert swaps == expect
            assert np.array_equal(q.shard_sizes, p.shard_sizes)
            assert np.count_nonzero(q.assignment != p.assignment) == 2 * swaps

    def test_shp2_takes_top_gains(self):
        rng = np.random.default_rng(11)
        g = from_edges(rng.integers(0, 80, size=(300, 2)))
        p = random_balanced_init(g, BalanceSpec(g.n, 2), rng)
        qs = build_queues(g, p, "shp", 0)
        m = min(len(qs[(0, 1)]), len(qs[(1, 0)]))
        q, _ = shp2_iteration(g, p)
        moved = set(np.flatnonzero(q.assignment != p.assignment).tolist())
        assert moved == set(qs[(0, 1)].nodes[:m].tolist()) | set(qs[(1, 0)].nodes[:m].tolist())


def test_klshp_at_zero_equals_shp2():
    rng = np.random.default_rng(4)
    g = from_edges(rng.integers(0, 300, size=(1200, 2)))
    spec = BalanceSpec(g.n, 4)
    a = run_synchronous(g, "klshp", spec, c=0.0, max_iters=6, seed=9, trials=2, keep_assignment=True)
    b = run_synchronous(g, "shp2", spec, max_iters=6, seed=9, trials=2, keep_assignment=True)
    assert a.final_fractions() == b.final_fractions()
    for ta, tb in zip(a.trials, b.trials):
        assert np.array_equal(ta.assignment, tb.assignment)


@pytest.mark.parametrize("algo", ["blp", "shp1", "shp2", "klshp"])
def test_infinite_threshold_is_identity(algo):
    rng = np.random.default_rng(8)
    g = from_edges(rng.integers(0, 100, size=(400, 2)))
    rep = run_synchronous(g, algo, BalanceSpec(g.n, 4), c=math.inf, max_iters=5, seed=1)
    t = rep.trials[0]
    assert t.iterations == [0, 1] and t.moves == [0, 0]
    assert t.fractions[0] == t.fractions[1]


@pytest.mark.parametrize("algo", ["blp", "shp1", "shp2", "klshp"])
@pytest.mark.parametrize("eps", [0.0, 0.05])
def test_feasible_every_iteration(algo, eps):
    rng = np.random.default_rng(12)
    g = from_edges(rng.integers(0, 500, size=(2500, 2)))
    spec = BalanceSpec(g.n, 7, eps)
    rep = run_synchronous(g, algo, spec, max_iters=8, seed=3, trials=2)
    for t in rep.trials:
        assert spec.is_feasible(t.shard_sizes)
        assert all(0 <= f <= 1 for f in t.fractions)
        assert len(t.iterations) <= 9


def test_run_is_reproducible():
    g = cycle(30)
    spec = BalanceSpec(30, 3)
    a = run_synchronous(g, "shp1", spec, max_iters=4, seed=5, trials=3)
    b = run_synchronous(g, "shp1", spec, max_iters=4, seed=5, trials=3)
    assert [t.fractions for t in a.trials] == [t.fractions for t in b.trials]
    assert len({t.seed for t in a.trials}) == 3
