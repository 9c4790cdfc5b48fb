"""Experiment drivers: single runs, incumbency and shard-count sweeps, order correlations."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .kendall import weighted_kendall_tau
from .orders import order_ambivalence, order_bfs, order_cc, order_degree, order_gain, order_random
from .partition import BalanceSpec, Partition
from .streaming import run_restream
from .sync import ALGORITHMS, run_synchronous


def run_partition(g, algo: str, k: int, epsilon: float = 0.0, order: str = "random",
                  c=None, iters: int = 10, seed: int = 0, trials: int = 1,
                  ties: str = "random", keep_assignment: bool = False):
    spec = BalanceSpec(g.n, k, epsilon)
    if algo == "reldg":
        return run_restream(g, order, spec, -math.inf if c is None else c, iters, seed,
                            trials, ties, keep_assignment)
    if algo in ALGORITHMS:
        return run_synchronous(g, algo, spec, c, iters, seed, trials, ties, keep_assignment)
    raise ValueError(f"unknown algorithm {algo!r}")


def sweep_incumbency(g, algos=("blp", "klshp", "reldg"), c_values=(-math.inf, -2, -1, 0, 1, 2),
                     k: int = 16, epsilon: float = 0.0, iters: int = 10, seed: int = 0,
                     trials: int = 1, order: str = "random", ties: str = "random") -> list:
    """Final internal edge fraction for every (algorithm, c) cell."""
    rows = []
    for algo in algos:
        for c in c_values:
            rep = run_partition(g, algo, k, epsilon, order, float(c), iters, seed, trials, ties)
            rows.append({"algo": algo, "c": float(c), "mean_final": rep.mean_final(),
                         "finals": rep.final_fractions()})
    return rows


def sweep_k(g, k_values=(20, 40, 60, 80, 100), order: str = "ambivalence", epsilon: float = 0.0,
            iters: int = 10, seed: int = 0, trials: int = 1, ties: str = "random") -> list:
    rows = []
    for k in k_values:
        rep = run_partition(g, "reldg", k, epsilon, order, None, iters, seed, trials, ties)
        rows.append({"k": int(k), "mean_final": rep.mean_final(), "finals": rep.final_fractions()})
    return rows


@dataclass
class CorrelationMatrix:
    labels: list
    values: np.ndarray

    def __getitem__(self, pair):
        a, b = pair
        return float(self.values[self.labels.index(a), self.labels.index(b)])

    def as_dict(self) -> dict:
        return {"labels": list(self.labels), "values": self.values.tolist()}


def dynamic_orders_at(g, kind: str, iterations, spec: BalanceSpec, seed: int = 0,
                      ties: str = "random") -> dict:
    """The ``kind`` order streamed at each requested pass of a ``kind``-driven run."""
    seen = {}
    last = max(iterations)
    rep = run_restream(g, kind, spec, max_iters=last, seed=seed, trials=1, ties=ties,
                       keep_assignment=True,
                       on_order=lambda _t, o: seen.__setitem__(o.iteration, o.permutation))
    final = Partition(rep.trials[0].assignment, spec)
    make = order_ambivalence if kind == "ambivalence" else order_gain
    out = {}
    for it in iterations:
        if it in seen:
            out[it] = seen[it]
        else:
            # run converged before pass ``it``; its order would come from the fixed point
            out[it] = make(g, final, it).permutation
    return out


def correlate_orders(g, seed: int = 0, k: int = 16, epsilon: float = 0.0,
                     iterations=(2, 10), ties: str = "random") -> CorrelationMatrix:
    spec = BalanceSpec(g.n, k, epsilon)
    orders = {
        "Random": order_random(g, seed).permutation,
        "CC": order_cc(g).permutation,
        "BFS": order_bfs(g).permutation,
        "Degree": order_degree(g).permutation,
    }
    for kind, tag in (("ambivalence", "Amb"), ("gain", "Gain")):
        for it, perm in dynamic_orders_at(g, kind, iterations, spec, seed, ties).items():
            orders[f"{tag}-{it}"] = perm
    return correlation_matrix(orders)


def correlation_matrix(orders: dict) -> CorrelationMatrix:
    labels = list(orders)
    vals = np.eye(len(labels))
    for i in range(len(labels)):
        for j in range(i + 1, len(labels)):
            vals[i, j] = vals[j, i] = weighted_kendall_tau(orders[labels[i]], orders[labels[j]])
    return CorrelationMatrix(labels, vals)
