"""Restreaming linear deterministic greedy (reLDG).

Each pass streams every node once and places it on the admissible shard
maximizing ``|N(u) ∩ V_i| * (1 - x_i / C)``, where neighbor shards are read
from the current pass when already streamed and from the previous pass
otherwise. Shards at the upper size bound are never admissible; once the
nodes left to stream are exactly enough to lift every shard to the lower
bound, only under-filled shards are.
"""

from __future__ import annotations

import math
import time

import numpy as np

from . import _kernels
from .metrics import internal_edge_fraction
from .orders import OrderSource, check_permutation
from .partition import BalanceSpec, Partition, PartitionHistory, periodicity_histogram
from .report import RunReport, TrialRecord
from .sync import trial_seeds


class StreamState:
    """Mutable state of one streaming pass.

    ``x`` counts nodes placed this pass; ``view(v)`` is the hybrid view of
    node ``v`` (its new shard if streamed, else its previous shard, else -1).
    """

    def __init__(self, g, spec: BalanceSpec, prev: Partition | None = None, c: float = -math.inf):
        self.g = g
        self.spec = spec
        self.c = float(c)
        self.prev = (np.full(g.n, -1, np.int32) if prev is None
                     else np.asarray(prev.assignment, dtype=np.int32))
        self.new = np.full(g.n, -1, np.int32)
        self.x = np.zeros(spec.k, np.int64)
        self._state = np.array([spec.k * spec.lower, g.n], np.int64)
        self._counts = np.zeros(spec.k, np.int64)

    @property
    def streamed(self) -> int:
        return int(self.g.n - self._state[1])

    def view(self, v: int) -> int:
        return int(self.new[v] if self.new[v] >= 0 else self.prev[v])

    def to_partition(self) -> Partition:
        if (self.new < 0).any():
            raise RuntimeError("pass not finished")
        return Partition(self.new.copy(), self.spec, self.x.copy())


def reldg_assign(g, state: StreamState, u: int, rng=None) -> int:
    """Stream node ``u``; ties go uniformly at random with ``rng``.

    Without ``rng``, ties go to the least-loaded shard, then the lowest index.
    """
    if state.new[u] >= 0:
        raise ValueError(f"node {u} already streamed in this pass")
    u01 = 0.0 if rng is None else float(rng.random())
    spec = state.spec
    return int(_kernels.stream_step(g.indptr, g.indices, u, state.new, state.prev, state.x,
                                    state._state, state._counts, spec.k, spec.capacity,
                                    spec.upper, spec.lower, state.c, u01, rng is not None))


def reldg_iteration(g, prev: Partition | None, order, spec: BalanceSpec,
                    c: float = -math.inf, rng=None) -> Partition:
    """One full pass over ``order``.

    With a previous partition and ``c > -inf``, a node whose gain against the
    hybrid view at its turn is ``<= c`` keeps its previous shard when that
    shard is still admissible.
    """
    perm = check_permutation(getattr(order, "permutation", order), g.n)
    prev_arr = (np.full(g.n, -1, np.int32) if prev is None
                else np.asarray(prev.assignment, dtype=np.int32))
    if rng is None:
        u01, random_ties = np.zeros(g.n), False
    else:
        u01, random_ties = rng.random(g.n), True
    new = _kernels.stream_pass(g.indptr, g.indices, perm, prev_arr, spec.k, spec.capacity,
                               spec.upper, spec.lower, float(c), u01, random_ties)
    out = Partition(new, spec)
    assert out.is_feasible(), f"streaming pass broke balance: {out.shard_sizes}"
    return out


def run_restream(g, order_kind: str, spec: BalanceSpec, c: float = -math.inf,
                 max_iters: int = 10, seed: int = 0, trials: int = 1, ties: str = "random",
                 keep_assignment: bool = False, on_order=None) -> RunReport:
    """Repeated reLDG passes per trial.

    Dynamic orders start from degree order and are recomputed from each
    finished pass. A trial stops early when a pass changes no assignment.
    ``on_order(trial, order)`` is called with every order actually streamed.
    """
    config = {"algo": "reldg", "order": order_kind, "k": spec.k, "epsilon": spec.epsilon,
              "c": c, "iters": max_iters, "seed": seed, "trials": trials, "ties": ties}
    report = RunReport(config)
    for t, tseed in enumerate(trial_seeds(seed, trials)):
        rng = np.random.default_rng(tseed)
        rec = TrialRecord(trial=t, seed=tseed)
        source = OrderSource(g, order_kind, rng)
        hist = PartitionHistory(first=1)
        p = None
        for it in range(1, max_iters + 1):
            start = time.perf_counter()
            order = source.for_iteration(it, p)
            if on_order is not None:
                on_order(t, order)
            new = reldg_iteration(g, p, order, spec, c, rng if ties == "random" else None)
            moved = g.n if p is None else int(np.count_nonzero(new.assignment != p.assignment))
            p = new
            hist.record(p.assignment)
            rec.add(it, internal_edge_fraction(g, p), moved, periodicity_histogram(hist, it),
                    time.perf_counter() - start)
            if moved == 0:
                break
        rec.shard_sizes = p.shard_sizes.tolist()
        if keep_assignment:
            rec.assignment = p.assignment
        report.trials.append(rec)
    return report
