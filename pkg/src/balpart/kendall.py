"""Weighted Kendall's tau between two stream orders.

Additive hyperbolic weighting: the element at rank ``r`` of the reference
order weighs ``1/(r+1)`` and a pair weighs the sum of its two elements'
weights. The coefficient is ``(concordant - discordant) / total`` weighted
mass, averaged over taking each order as the reference.
"""

from __future__ import annotations

import numpy as np

from . import _kernels
from .errors import InvalidOrderError
from .orders import is_permutation


def _tau_against(ref: np.ndarray, other_rank: np.ndarray) -> float:
    n = len(ref)
    inv = _kernels.discordance_counts(other_rank[ref])
    w = 1.0 / np.arange(1, n + 1)
    total = (n - 1) * w.sum()
    return float(1.0 - 2.0 * np.dot(w, inv) / total)


def weighted_kendall_tau(order_a, order_b) -> float:
    """Symmetrized weighted tau of two permutations of ``0..n-1``; O(n log n)."""
    a = np.asarray(order_a)
    b = np.asarray(order_b)
    if a.shape != b.shape:
        raise InvalidOrderError(f"orders differ in length ({len(a)} vs {len(b)})")
    n = len(a)
    if not (is_permutation(a, n) and is_permutation(b, n)):
        raise InvalidOrderError("both orders must be permutations of the same node set 0..n-1")
    if n < 2:
        return 1.0
    a = a.astype(np.int64)
    b = b.astype(np.int64)
    rank_a = np.empty(n, np.int64)
    rank_a[a] = np.arange(n)
    rank_b = np.empty(n, np.int64)
    rank_b[b] = np.arange(n)
    return 0.5 * (_tau_against(a, rank_b) + _tau_against(b, rank_a))


def relabel(orders) -> list:
    """Map orders over an arbitrary shared id set onto ``0..n-1``."""
    orders = [np.asarray(o) for o in orders]
    ids = np.sort(orders[0])
    out = []
    for o in orders:
        if len(o) != len(ids) or not np.array_equal(np.sort(o), ids):
            raise InvalidOrderError("orders are not permutations of the same id set")
        out.append(np.searchsorted(ids, o))
    return out
