"""Stream orders for restreaming.

Static orders depend on the graph only; dynamic orders (gain, ambivalence)
are recomputed from the partition left by the previous pass. All ties are
broken by ascending node id.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _kernels
from .errors import InvalidOrderError, MissingPartitionError
from .metrics import node_scores

STATIC_KINDS = ("random", "bfs", "degree", "cc")
DYNAMIC_KINDS = ("gain", "ambivalence")
KINDS = STATIC_KINDS + DYNAMIC_KINDS


@dataclass(frozen=True)
class StreamOrder:
    permutation: np.ndarray
    kind: str
    iteration: int | None = None

    def __len__(self):
        return len(self.permutation)

    def __iter__(self):
        return iter(self.permutation)


def is_permutation(perm, n: int) -> bool:
    perm = np.asarray(perm)
    if perm.shape != (n,) or not np.issubdtype(perm.dtype, np.integer):
        return False
    if n and (perm.min() < 0 or perm.max() >= n):
        return False
    seen = np.zeros(n, dtype=bool)
    seen[perm] = True
    return bool(seen.all())


def check_permutation(perm, n: int) -> np.ndarray:
    perm = np.asarray(perm)
    if not is_permutation(perm, n):
        raise InvalidOrderError(f"stream order is not a permutation of 0..{n - 1}")
    return perm.astype(np.int64)


def _descending(key) -> np.ndarray:
    # stable sort of the negated key keeps ascending ids within ties
    return np.argsort(-np.asarray(key), kind="stable")


def order_random(g, seed=None) -> StreamOrder:
    return StreamOrder(np.random.default_rng(seed).permutation(g.n), "random")


def order_degree(g) -> StreamOrder:
    return StreamOrder(_descending(g.degrees), "degree")


def order_bfs(g) -> StreamOrder:
    """BFS from the max-degree node; restarts at the max-degree unvisited node."""
    roots = _descending(g.degrees)
    return StreamOrder(_kernels.bfs_order(g.indptr, g.indices, roots), "bfs")


def clustering_coefficients(g) -> np.ndarray:
    tri = _kernels.triangles(g.indptr, g.indices)
    d = g.degrees.astype(np.float64)
    cc = np.zeros(g.n)
    ok = d > 1
    cc[ok] = 2.0 * tri[ok] / (d[ok] * (d[ok] - 1))
    return cc


def order_cc(g) -> StreamOrder:
    return StreamOrder(_descending(clustering_coefficients(g)), "cc")


def _need_partition(p, kind):
    if p is None:
        raise MissingPartitionError(
            f"{kind} order needs the previous partition; use degree order for the first pass")


def order_gain(g, p, iteration: int | None = None) -> StreamOrder:
    """Decreasing gain."""
    _need_partition(p, "gain")
    return StreamOrder(_descending(node_scores(g, p).gain), "gain", iteration)


def order_ambivalence(g, p, iteration: int | None = None) -> StreamOrder:
    """Increasing ambivalence: strongest preference first, most indifferent last."""
    _need_partition(p, "ambivalence")
    return StreamOrder(np.argsort(node_scores(g, p).ambivalence, kind="stable"),
                       "ambivalence", iteration)


class OrderSource:
    """Supplies the stream order for each pass of a restreaming run.

    Static orders are computed once. Dynamic orders use degree order on the
    first pass and the previous pass's partition afterwards.
    """

    def __init__(self, g, kind: str, seed=None):
        if kind not in KINDS:
            raise ValueError(f"unknown stream order {kind!r}; expected one of {KINDS}")
        self.g = g
        self.kind = kind
        self._static = None
        if kind == "random":
            self._static = order_random(g, seed)
        elif kind == "bfs":
            self._static = order_bfs(g)
        elif kind == "cc":
            self._static = order_cc(g)
        elif kind in ("degree",) + DYNAMIC_KINDS:
            self._static = order_degree(g)

    @property
    def dynamic(self) -> bool:
        return self.kind in DYNAMIC_KINDS

    def for_iteration(self, iteration: int, prev) -> StreamOrder:
        if not self.dynamic or prev is None:
            return StreamOrder(self._static.permutation, self.kind, iteration)
        if self.kind == "gain":
            return order_gain(self.g, prev, iteration)
        return order_ambivalence(self.g, prev, iteration)


def order_for(g, kind: str, p=None, seed=None) -> StreamOrder:
    """Single order of ``kind``; dynamic kinds fall back to degree when ``p`` is None."""
    return OrderSource(g, kind, seed).for_iteration(1 if p is None else 2, p)


def write_order(g, order, path) -> None:
    """Write one original node id per line, in stream order."""
    perm = order.permutation if isinstance(order, StreamOrder) else np.asarray(order)
    np.savetxt(path, g.id_map[perm], fmt="%d")


def read_order(path) -> np.ndarray:
    return np.loadtxt(path, dtype=np.int64, ndmin=1)
