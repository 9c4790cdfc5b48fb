"""Degree-corrected planted-community graphs used as a stand-in for web graphs."""

import numpy as np


def planted(n, m, communities, mixing, seed=0):
    """Edge array with heavy-tailed degrees; a ``mixing`` share of edges ignore communities."""
    rng = np.random.default_rng(seed)
    w = rng.pareto(1.5, n) + 1
    w /= w.sum()
    comm = rng.integers(communities, size=n)
    u = rng.choice(n, size=m, p=w)
    same = rng.random(m) > mixing
    v = np.empty(m, np.int64)
    order = np.argsort(comm, kind="stable")
    bounds = np.searchsorted(comm[order], np.arange(communities + 1))
    cw = np.cumsum(w[order])
    for c in range(communities):
        idx = np.flatnonzero(same & (comm[u] == c))
        lo, hi = bounds[c], bounds[c + 1]
        base = cw[lo - 1] if lo else 0.0
        r = base + rng.random(len(idx)) * (cw[hi - 1] - base)
        v[idx] = order[np.minimum(np.searchsorted(cw, r), hi - 1)]
    idx = np.flatnonzero(~same)
    v[idx] = rng.choice(n, size=len(idx), p=w)
    return np.column_stack([u, v])
