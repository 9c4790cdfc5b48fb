"""Per-node and per-partition quantities.

For node ``u`` with shard counts ``c_i = |N(u) ∩ V_i|`` and own shard ``p``:

* gain: ``max_i c_i - c_p`` (never negative)
* external gain: ``max_{i != p} c_i - c_p`` and its argmax shard
* ambivalence: ``-max_{i != p} |c_i - c_p|``
* adjusted ambivalence: ``max_{i != p} (c_i - c_p)**2``
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _kernels
from .errors import SingleShardError


def colocation_counts(g, p, u: int) -> np.ndarray:
    counts = np.zeros(p.k, dtype=np.int64)
    _kernels.colocation(g.indptr, g.indices, p.assignment, u, counts)
    return counts


def _others(counts, own):
    if len(counts) < 2:
        raise SingleShardError("quantity compares against other shards; undefined for k=1")
    mask = np.ones(len(counts), dtype=bool)
    mask[own] = False
    return counts[mask], np.flatnonzero(mask)


def gain(g, p, u: int) -> int:
    counts = colocation_counts(g, p, u)
    return int(counts.max() - counts[p.assignment[u]])


def external_gain(g, p, u: int, rng=None) -> tuple[int, int]:
    """``(g', target)``; ties go to the lowest shard unless ``rng`` is given."""
    counts = colocation_counts(g, p, u)
    own = p.assignment[u]
    rest, shards = _others(counts, own)
    best = rest.max()
    tied = shards[rest == best]
    target = tied[0] if rng is None else rng.choice(tied)
    return int(best - counts[own]), int(target)


def ambivalence(g, p, u: int) -> int:
    counts = colocation_counts(g, p, u)
    own = p.assignment[u]
    rest, _ = _others(counts, own)
    return -int(np.abs(rest - counts[own]).max())


def adjusted_ambivalence(g, p, u: int) -> int:
    counts = colocation_counts(g, p, u)
    own = p.assignment[u]
    rest, _ = _others(counts, own)
    return int(((rest - counts[own]) ** 2).max())


@dataclass
class NodeScores:
    """All-node arrays computed from one frozen assignment."""

    gain: np.ndarray
    external_gain: np.ndarray
    target: np.ndarray
    ambivalence: np.ndarray


def node_scores(g, p, rng=None) -> NodeScores:
    """Vectorized gain, external gain/target and ambivalence for every node.

    With ``rng`` the external target is uniform among tied shards; otherwise
    the lowest tied shard index wins.
    """
    if p.k < 2:
        raise SingleShardError("external quantities are undefined for k=1")
    if rng is None:
        u01, random_ties = np.zeros(g.n), False
    else:
        u01, random_ties = rng.random(g.n), True
    return NodeScores(*_kernels.node_scores(g.indptr, g.indices, p.assignment,
                                            p.k, u01, random_ties))


def cut_size(g, p) -> int:
    assignment = p.assignment if hasattr(p, "assignment") else np.asarray(p, dtype=np.int32)
    return int(_kernels.cut_size(g.indptr, g.indices, assignment))


def internal_edge_fraction(g, p) -> float:
    return 1.0 - cut_size(g, p) / g.m
