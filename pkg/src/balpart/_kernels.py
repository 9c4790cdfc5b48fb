"""Numba kernels for the per-node hot loops.

Every kernel takes CSR arrays directly. Random tie-breaking consumes one
pre-drawn uniform per node (``u01[u]``): the kernel counts the tied
candidates, then takes the ``floor(u01[u] * ties)``-th one.
"""

import numpy as np
from numba import njit


@njit(cache=True)
def cut_size(indptr, indices, assign):
    cut = 0
    for u in range(len(indptr) - 1):
        pu = assign[u]
        for e in range(indptr[u], indptr[u + 1]):
            v = indices[e]
            if v > u and assign[v] != pu:
                cut += 1
    return cut


@njit(cache=True)
def colocation(indptr, indices, assign, u, counts):
    counts[:] = 0
    for e in range(indptr[u], indptr[u + 1]):
        counts[assign[indices[e]]] += 1


@njit(cache=True)
def node_scores(indptr, indices, assign, k, u01, random_ties):
    """Gain, external gain, external target and ambivalence of every node."""
    n = len(indptr) - 1
    gain = np.empty(n, np.int64)
    ext = np.empty(n, np.int64)
    target = np.empty(n, np.int32)
    amb = np.empty(n, np.int64)
    counts = np.zeros(k, np.int64)
    for u in range(n):
        colocation(indptr, indices, assign, u, counts)
        p = assign[u]
        own = counts[p]
        best = -1
        ties = 0
        far = 0
        for i in range(k):
            if i == p:
                continue
            ci = counts[i]
            if ci > best:
                best = ci
                ties = 1
            elif ci == best:
                ties += 1
            d = abs(ci - own)
            if d > far:
                far = d
        pick = 0
        if random_ties and ties > 1:
            pick = int(u01[u] * ties)
        t = -1
        for i in range(k):
            if i != p and counts[i] == best:
                if pick == 0:
                    t = i
                    break
                pick -= 1
        ext[u] = best - own
        gain[u] = max(best - own, 0)
        target[u] = t
        amb[u] = -far
    return gain, ext, target, amb


@njit(cache=True)
def stream_step(indptr, indices, u, new, prev, x, state, counts,
                k, capacity, upper, lower, c, u01v, random_ties):
    """Assign node ``u`` under the restreaming rule; returns the shard.

    ``new[v] >= 0`` marks nodes already streamed this pass; others read
    ``prev[v]`` (``-1`` when there is no previous partition). ``state``
    holds ``[deficit, remaining]``: total shortfall below ``lower`` and the
    number of nodes still to stream. When they are equal only shards under
    ``lower`` may receive nodes, which keeps the lower bound reachable.
    """
    counts[:] = 0
    for e in range(indptr[u], indptr[u + 1]):
        v = indices[e]
        s = new[v]
        if s < 0:
            s = prev[v]
        if s >= 0:
            counts[s] += 1
    forced = state[0] >= state[1]

    chosen = -1
    p = prev[u]
    if p >= 0 and c != -np.inf:
        top = 0
        for i in range(k):
            if counts[i] > top:
                top = counts[i]
        if top - counts[p] <= c and x[p] < upper and (not forced or x[p] < lower):
            chosen = p

    if chosen < 0:
        best = -1.0
        ties = 0
        load = 0
        for i in range(k):
            if x[i] >= upper or (forced and x[i] >= lower):
                continue
            sc = counts[i] * (1.0 - x[i] / capacity)
            if sc > best:
                best = sc
                chosen = i
                ties = 1
                load = x[i]
            elif sc == best:
                ties += 1
                if not random_ties and x[i] < load:
                    chosen = i
                    load = x[i]
        if chosen < 0:
            raise RuntimeError("no admissible shard")
        if random_ties and ties > 1:
            pick = int(u01v * ties)
            for i in range(k):
                if x[i] >= upper or (forced and x[i] >= lower):
                    continue
                if counts[i] * (1.0 - x[i] / capacity) == best:
                    if pick == 0:
                        chosen = i
                        break
                    pick -= 1

    if x[chosen] < lower:
        state[0] -= 1
    state[1] -= 1
    x[chosen] += 1
    new[u] = chosen
    return chosen


@njit(cache=True)
def stream_pass(indptr, indices, order, prev, k, capacity, upper, lower, c, u01, random_ties):
    n = len(indptr) - 1
    new = np.full(n, -1, np.int32)
    x = np.zeros(k, np.int64)
    state = np.array([k * lower, n], np.int64)
    counts = np.zeros(k, np.int64)
    for u in order:
        stream_step(indptr, indices, u, new, prev, x, state, counts,
                    k, capacity, upper, lower, c, u01[u], random_ties)
    return new


@njit(cache=True)
def triangles(indptr, indices):
    n = len(indptr) - 1
    mark = np.zeros(n, np.bool_)
    tri = np.zeros(n, np.int64)
    for u in range(n):
        for e in range(indptr[u], indptr[u + 1]):
            mark[indices[e]] = True
        twice = 0
        for e in range(indptr[u], indptr[u + 1]):
            v = indices[e]
            for f in range(indptr[v], indptr[v + 1]):
                if mark[indices[f]]:
                    twice += 1
        for e in range(indptr[u], indptr[u + 1]):
            mark[indices[e]] = False
        tri[u] = twice // 2
    return tri


@njit(cache=True)
def bfs_order(indptr, indices, roots):
    """BFS visiting neighbors in CSR (ascending) order; ``roots`` gives restart priority."""
    n = len(indptr) - 1
    seen = np.zeros(n, np.bool_)
    out = np.empty(n, np.int64)
    head = 0
    tail = 0
    for r in roots:
        if seen[r]:
            continue
        seen[r] = True
        out[tail] = r
        tail += 1
        while head < tail:
            u = out[head]
            head += 1
            for e in range(indptr[u], indptr[u + 1]):
                v = indices[e]
                if not seen[v]:
                    seen[v] = True
                    out[tail] = v
                    tail += 1
    return out


@njit(cache=True)
def discordance_counts(seq):
    """For each position of ``seq``, how many other positions are inverted with it.

    Bottom-up merge sort over ``(value, original position)`` pairs; while
    merging, every element taken from the right run is inverted with all
    elements still waiting in the left run, and vice versa.
    """
    n = len(seq)
    vals = seq.copy()
    pos = np.arange(n)
    tmp_v = np.empty_like(vals)
    tmp_p = np.empty_like(pos)
    inv = np.zeros(n, np.int64)
    width = 1
    while width < n:
        for lo in range(0, n, 2 * width):
            mid = min(lo + width, n)
            hi = min(lo + 2 * width, n)
            i = lo
            j = mid
            o = lo
            while i < mid or j < hi:
                if j >= hi or (i < mid and vals[i] <= vals[j]):
                    # left element passes every right element already emitted
                    inv[pos[i]] += j - mid
                    tmp_v[o] = vals[i]
                    tmp_p[o] = pos[i]
                    i += 1
                else:
                    inv[pos[j]] += mid - i
                    tmp_v[o] = vals[j]
                    tmp_p[o] = pos[j]
                    j += 1
                o += 1
        vals, tmp_v = tmp_v, vals
        pos, tmp_p = tmp_p, pos
        width *= 2
    return inv
