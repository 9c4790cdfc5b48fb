"""Partition state, balance bounds and assignment history."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import InfeasibleBalanceError

#: Period buckets reported by :func:`periodicity_histogram`.
PERIOD_BUCKETS = ("1", "2", "3", "4+", "new")
NEW = 0


@dataclass(frozen=True)
class BalanceSpec:
    """Shard count, imbalance and the derived size bounds for ``n`` nodes.

    ``upper`` is ``ceil((1+eps) n/k)``. ``lower`` is ``ceil((1-eps) n/k)``
    capped at ``floor(n/k)`` so that exact balance stays feasible when ``k``
    does not divide ``n``. ``capacity`` is the streaming capacity
    ``(1+eps) * ceil(n/k)`` used in the multiplicative weight.
    """

    n: int
    k: int
    epsilon: float = 0.0

    def __post_init__(self):
        if self.k < 1:
            raise InfeasibleBalanceError(f"k must be >= 1, got {self.k}")
        if self.epsilon < 0:
            raise InfeasibleBalanceError(f"epsilon must be >= 0, got {self.epsilon}")
        if self.k > self.n:
            raise InfeasibleBalanceError(f"cannot split {self.n} nodes into {self.k} non-empty shards")

    @property
    def lower(self) -> int:
        return min(_ceil_frac((1 - self.epsilon), self.n, self.k), self.n // self.k)

    @property
    def upper(self) -> int:
        return _ceil_frac((1 + self.epsilon), self.n, self.k)

    @property
    def capacity(self) -> float:
        return (1 + self.epsilon) * -(-self.n // self.k)

    def is_feasible(self, sizes) -> bool:
        sizes = np.asarray(sizes)
        return bool(len(sizes) == self.k and sizes.sum() == self.n
                    and sizes.min() >= self.lower and sizes.max() <= self.upper)


def _ceil_frac(factor: float, n: int, k: int) -> int:
    # round away float noise before ceil so that e.g. 1.0*8/2 stays 4
    return math.ceil(round(factor * n / k, 9))


@dataclass(eq=False)
class Partition:
    """Dense node -> shard assignment with maintained shard sizes."""

    assignment: np.ndarray
    spec: BalanceSpec
    shard_sizes: np.ndarray = field(default=None)

    def __post_init__(self):
        self.assignment = np.asarray(self.assignment, dtype=np.int32)
        if self.shard_sizes is None:
            self.shard_sizes = np.bincount(self.assignment, minlength=self.spec.k).astype(np.int64)

    @property
    def k(self) -> int:
        return self.spec.k

    @property
    def n(self) -> int:
        return len(self.assignment)

    def is_feasible(self) -> bool:
        return self.spec.is_feasible(self.shard_sizes)

    def move(self, u: int, shard: int) -> None:
        old = self.assignment[u]
        if old == shard:
            return
        self.shard_sizes[old] -= 1
        self.shard_sizes[shard] += 1
        self.assignment[u] = shard

    def copy(self) -> "Partition":
        return Partition(self.assignment.copy(), self.spec, self.shard_sizes.copy())

    def recount(self) -> np.ndarray:
        return np.bincount(self.assignment, minlength=self.k)


def random_balanced_init(g, spec: BalanceSpec, seed=None) -> Partition:
    """Uniformly random exactly balanced assignment.

    Nodes are shuffled and cut into contiguous blocks; which shards receive
    the ``n mod k`` larger blocks is also random.
    """
    rng = np.random.default_rng(seed)
    n, k = g.n, spec.k
    if k > n:
        raise InfeasibleBalanceError(f"k={k} exceeds n={n}")
    sizes = np.full(k, n // k, dtype=np.int64)
    sizes[rng.permutation(k)[: n % k]] += 1
    assignment = np.empty(n, dtype=np.int32)
    assignment[rng.permutation(n)] = np.repeat(np.arange(k, dtype=np.int32), sizes)
    return Partition(assignment, spec, sizes)


class PartitionHistory:
    """Assignment snapshots for consecutive iterations ``first, first+1, ...``."""

    def __init__(self, first: int = 1):
        self.first = first
        self.snapshots: list[np.ndarray] = []

    def record(self, assignment) -> int:
        self.snapshots.append(np.array(assignment, dtype=np.int32, copy=True))
        return self.last

    @property
    def last(self) -> int:
        return self.first + len(self.snapshots) - 1

    def at(self, t: int) -> np.ndarray:
        if not self.first <= t <= self.last:
            raise IndexError(f"iteration {t} not recorded (have {self.first}..{self.last})")
        return self.snapshots[t - self.first]

    def periods(self, t: int) -> np.ndarray:
        """Per-node period at iteration ``t``; 0 encodes NEW."""
        cur = self.at(t)
        out = np.zeros(len(cur), dtype=np.int64)
        open_ = np.ones(len(cur), dtype=bool)
        for x in range(1, t - self.first + 1):
            hit = open_ & (self.at(t - x) == cur)
            out[hit] = x
            open_ &= ~hit
            if not open_.any():
                break
        return out


def periodicity(hist: PartitionHistory, t: int, u: int) -> int:
    """Minimum ``x >= 1`` with ``P_t(u) == P_{t-x}(u)``, or ``NEW`` (0)."""
    cur = hist.at(t)[u]
    for x in range(1, t - hist.first + 1):
        if hist.at(t - x)[u] == cur:
            return x
    return NEW


def periodicity_histogram(hist: PartitionHistory, t: int) -> dict:
    """Fraction of nodes per bucket in :data:`PERIOD_BUCKETS`."""
    periods = hist.periods(t)
    n = len(periods)
    counts = [
        np.count_nonzero(periods == 1),
        np.count_nonzero(periods == 2),
        np.count_nonzero(periods == 3),
        np.count_nonzero(periods >= 4),
        np.count_nonzero(periods == NEW),
    ]
    return {b: c / n for b, c in zip(PERIOD_BUCKETS, counts)}
