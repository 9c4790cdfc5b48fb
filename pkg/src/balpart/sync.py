"""Synchronous partitioners: BLP, SHP-I, SHP-II and KL-SHP.

All relocations of an iteration are computed from one frozen snapshot of the
partition and applied at once. Nodes are eligible to move only when their
gain exceeds the incumbency threshold ``c``.
"""

from __future__ import annotations

import math
import time
from collections import Counter
from dataclasses import dataclass

import numpy as np
from scipy.optimize import linprog

from .errors import RelocationInfeasibleError
from .metrics import internal_edge_fraction, node_scores
from .partition import BalanceSpec, Partition, PartitionHistory, periodicity_histogram, random_balanced_init
from .report import RunReport, TrialRecord

ALGORITHMS = ("blp", "shp1", "shp2", "klshp")

# default incumbency threshold per queue mode
DEFAULT_THRESHOLD = {"blp": 0.0, "shp": 0.0, "kl": -math.inf}


@dataclass
class MoveQueue:
    """Nodes in shard ``source`` whose target is ``target``, best first."""

    source: int
    target: int
    nodes: np.ndarray
    gains: np.ndarray

    def __len__(self):
        return len(self.nodes)


def build_queues(g, p: Partition, mode: str = "blp", c: float | None = None, rng=None) -> dict:
    """Gain-sorted move queues keyed by ``(source, target)``.

    Every mode targets the best external shard and ranks by external gain,
    which equals the plain gain for any node with positive gain. The modes
    differ in the default threshold: ``blp`` and ``shp`` admit only nodes
    with gain > 0, ``kl`` admits every node (satisfied nodes enter at their
    second-best shard). Empty queues are omitted.
    """
    if c is None:
        c = DEFAULT_THRESHOLD[mode]
    s = node_scores(g, p, rng)
    eligible = np.flatnonzero(s.gain > c)
    src = p.assignment[eligible]
    dst = s.target[eligible]
    pri = s.external_gain[eligible]
    order = np.lexsort((eligible, -pri, dst, src))
    eligible, src, dst, pri = eligible[order], src[order], dst[order], pri[order]
    queues = {}
    if len(eligible) == 0:
        return queues
    key = src.astype(np.int64) * p.k + dst
    cuts = np.flatnonzero(np.diff(key)) + 1
    for lo, hi in zip(np.r_[0, cuts], np.r_[cuts, len(key)]):
        i, j = int(src[lo]), int(dst[lo])
        queues[(i, j)] = MoveQueue(i, j, eligible[lo:hi], pri[lo:hi])
    return queues


def blp_solve_relocation(queues: dict, shard_sizes, spec: BalanceSpec):
    """Maximum-gain move counts per shard pair under the shard size bounds.

    Solves the relocation LP with one variable per (pair, gain level),
    bounded by the number of queued nodes at that level. The constraint
    matrix is a network matrix, so the simplex vertex is integral; values
    are still floored defensively. Returns ``(z, objective)`` where
    ``z[i, j]`` is how many top nodes of ``Q_ij`` to move.
    """
    k = spec.k
    sizes = np.asarray(shard_sizes, dtype=np.int64)
    levels = []
    for (i, j), q in queues.items():
        for gval, cnt in sorted(Counter(q.gains.tolist()).items(), reverse=True):
            levels.append((i, j, gval, cnt))
    z = np.zeros((k, k), dtype=np.int64)
    if not levels:
        return z, 0
    nv = len(levels)
    cost = np.array([-lv[2] for lv in levels], dtype=float)
    A = np.zeros((2 * k, nv))
    for col, (i, j, _, _) in enumerate(levels):
        # row s: net inflow into s; row k+s: net outflow from s
        A[j, col] += 1
        A[i, col] -= 1
        A[k + i, col] += 1
        A[k + j, col] -= 1
    b = np.concatenate([spec.upper - sizes, sizes - spec.lower]).astype(float)
    bounds = [(0, lv[3]) for lv in levels]
    res = linprog(cost, A_ub=A, b_ub=b, bounds=bounds, method="highs")
    if res.status != 0:
        raise RelocationInfeasibleError(f"relocation LP failed: {res.message}")
    x = np.floor(res.x + 1e-7).astype(np.int64)
    objective = 0
    for col, (i, j, gval, _) in enumerate(levels):
        z[i, j] += x[col]
        objective += gval * x[col]
    new_sizes = sizes - z.sum(axis=1) + z.sum(axis=0)
    if new_sizes.min() < spec.lower or new_sizes.max() > spec.upper:
        raise RelocationInfeasibleError("rounded relocation violates shard bounds")
    return z, int(objective)


def _apply(p: Partition, nodes, targets) -> Partition:
    assignment = p.assignment.copy()
    assignment[nodes] = targets
    out = Partition(assignment, p.spec)
    if not out.is_feasible():
        raise RelocationInfeasibleError(f"iteration produced infeasible sizes {out.shard_sizes}")
    return out


def blp_iteration(g, p: Partition, c: float = 0.0, rng=None):
    """One BLP iteration; returns ``(partition, moved)``."""
    queues = build_queues(g, p, "blp", c, rng)
    z, _ = blp_solve_relocation(queues, p.shard_sizes, p.spec)
    nodes, targets = [], []
    for (i, j), q in queues.items():
        take = z[i, j]
        if take:
            nodes.append(q.nodes[:take])
            targets.append(np.full(take, j, dtype=np.int32))
    if not nodes:
        return p.copy(), 0
    nodes = np.concatenate(nodes)
    return _apply(p, nodes, np.concatenate(targets)), len(nodes)


def _swap(p: Partition, queues: dict, pair_count) -> tuple[Partition, int]:
    nodes, targets = [], []
    for i in range(p.k):
        for j in range(i + 1, p.k):
            a, b = queues.get((i, j)), queues.get((j, i))
            if a is None or b is None:
                continue
            a_nodes, b_nodes = pair_count(a, b)
            nodes += [a_nodes, b_nodes]
            targets += [np.full(len(a_nodes), j, np.int32), np.full(len(b_nodes), i, np.int32)]
    if not nodes:
        return p.copy(), 0
    nodes = np.concatenate(nodes)
    return _apply(p, nodes, np.concatenate(targets)), len(nodes) // 2


def shp1_iteration(g, p: Partition, rng, c: float = 0.0, random_ties: bool = False):
    """SHP-I: random pairing of positive-gain nodes; returns ``(partition, swaps)``."""
    rng = np.random.default_rng(rng)
    queues = build_queues(g, p, "shp", c, rng if random_ties else None)

    def pair_count(a, b):
        m = min(len(a), len(b))
        return rng.permutation(a.nodes)[:m], rng.permutation(b.nodes)[:m]

    return _swap(p, queues, pair_count)


def shp2_iteration(g, p: Partition, c: float = 0.0, rng=None):
    """SHP-II: rank-by-rank pairing of positive-gain nodes."""
    queues = build_queues(g, p, "shp", c, rng)

    def pair_count(a, b):
        m = min(len(a), len(b))
        return a.nodes[:m], b.nodes[:m]

    return _swap(p, queues, pair_count)


def kl_swap_count(gains_a, gains_b) -> int:
    """Number of leading rank pairs whose summed gain is strictly positive."""
    m = min(len(gains_a), len(gains_b))
    s = np.asarray(gains_a[:m]) + np.asarray(gains_b[:m])
    bad = np.flatnonzero(s <= 0)
    return int(bad[0]) if len(bad) else m


def klshp_iteration(g, p: Partition, c: float | None = None, rng=None):
    """KL-SHP: includes second-best nodes; swaps while a pair's gain sum is positive."""
    queues = build_queues(g, p, "kl", c, rng)

    def pair_count(a, b):
        t = kl_swap_count(a.gains, b.gains)
        return a.nodes[:t], b.nodes[:t]

    return _swap(p, queues, pair_count)


def sync_step(algo: str, g, p: Partition, c, rng, random_ties: bool):
    tie_rng = rng if random_ties else None
    if algo == "blp":
        return blp_iteration(g, p, DEFAULT_THRESHOLD["blp"] if c is None else c, tie_rng)
    if algo == "shp1":
        return shp1_iteration(g, p, rng, DEFAULT_THRESHOLD["shp"] if c is None else c, random_ties)
    if algo == "shp2":
        return shp2_iteration(g, p, DEFAULT_THRESHOLD["shp"] if c is None else c, tie_rng)
    if algo == "klshp":
        return klshp_iteration(g, p, c, tie_rng)
    raise ValueError(f"unknown synchronous algorithm {algo!r}")


def trial_seeds(seed: int, trials: int) -> list:
    return [int(s.generate_state(1)[0]) for s in np.random.SeedSequence(seed).spawn(trials)]


def run_synchronous(g, algo: str, spec: BalanceSpec, c=None, max_iters: int = 10,
                    seed: int = 0, trials: int = 1, ties: str = "random",
                    keep_assignment: bool = False) -> RunReport:
    """Random balanced init followed by up to ``max_iters`` iterations, per trial.

    Iteration 0 is the initial partition. A trial stops early once an
    iteration relocates nothing.
    """
    if algo not in ALGORITHMS:
        raise ValueError(f"unknown synchronous algorithm {algo!r}")
    if spec.k < 2:
        raise ValueError("synchronous partitioners need k >= 2")
    config = {"algo": algo, "order": None, "k": spec.k, "epsilon": spec.epsilon,
              "c": c, "iters": max_iters, "seed": seed, "trials": trials, "ties": ties}
    report = RunReport(config)
    for t, tseed in enumerate(trial_seeds(seed, trials)):
        rng = np.random.default_rng(tseed)
        rec = TrialRecord(trial=t, seed=tseed)
        start = time.perf_counter()
        p = random_balanced_init(g, spec, rng)
        hist = PartitionHistory(first=0)
        hist.record(p.assignment)
        rec.add(0, internal_edge_fraction(g, p), 0, periodicity_histogram(hist, 0),
                time.perf_counter() - start)
        for it in range(1, max_iters + 1):
            start = time.perf_counter()
            p, moved = sync_step(algo, g, p, c, rng, ties == "random")
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
