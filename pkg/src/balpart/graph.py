"""Immutable undirected graphs in compressed adjacency (CSR) form.

Graphs are loaded from SNAP-style edge lists. Directed edges are
reciprocated, self-loops dropped and parallel edges merged; original ids are
remapped to dense ids ``0..n-1`` in order of first appearance.
"""

from __future__ import annotations

import gzip
import io
from dataclasses import dataclass
from pathlib import Path

import numpy as np
import pandas as pd
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components

from .errors import EdgeListParseError, EmptyGraphError


def _frozen(a: np.ndarray) -> np.ndarray:
    a.flags.writeable = False
    return a


@dataclass(frozen=True, eq=False)
class Graph:
    """Undirected simple graph.

    ``indices[indptr[u]:indptr[u+1]]`` is the sorted neighbor list of ``u``.
    ``id_map[u]`` is the id ``u`` had in the source file.
    """

    indptr: np.ndarray
    indices: np.ndarray
    id_map: np.ndarray

    @property
    def n(self) -> int:
        return len(self.indptr) - 1

    @property
    def m(self) -> int:
        return len(self.indices) // 2

    @property
    def degrees(self) -> np.ndarray:
        return np.diff(self.indptr)

    def degree(self, u: int) -> int:
        return int(self.indptr[u + 1] - self.indptr[u])

    def neighbors(self, u: int) -> np.ndarray:
        return self.indices[self.indptr[u]:self.indptr[u + 1]]

    def edges(self) -> np.ndarray:
        """Each undirected edge once, as an ``(m, 2)`` array with ``u < v``."""
        src = np.repeat(np.arange(self.n, dtype=self.indices.dtype), self.degrees)
        keep = src < self.indices
        return np.column_stack([src[keep], self.indices[keep]])

    def to_scipy(self) -> csr_matrix:
        data = np.ones(len(self.indices), dtype=np.int8)
        return csr_matrix((data, self.indices, self.indptr), shape=(self.n, self.n))

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return (np.array_equal(self.indptr, other.indptr)
                and np.array_equal(self.indices, other.indices)
                and np.array_equal(self.id_map, other.id_map))

    __hash__ = object.__hash__


@dataclass(frozen=True)
class GraphStats:
    n: int
    m: int
    avg_degree: float
    lcc_fraction: float

    def as_dict(self) -> dict:
        return {"n": self.n, "m": self.m, "avg_degree": self.avg_degree,
                "lcc_fraction": self.lcc_fraction}


def from_edges(edges, id_map=None) -> Graph:
    """Build a graph from an ``(E, 2)`` array of endpoint ids.

    Endpoints are remapped to dense ids in order of first appearance (reading
    the array row by row) unless ``id_map`` is given, in which case the
    endpoints are taken to be dense ids already.
    """
    edges = np.asarray(edges, dtype=np.int64).reshape(-1, 2)
    if id_map is None:
        codes, uniques = pd.factorize(edges.ravel())
        id_map = np.asarray(uniques, dtype=np.int64)
        edges = codes.reshape(-1, 2).astype(np.int64)
    else:
        id_map = np.asarray(id_map, dtype=np.int64)
    n = len(id_map)
    u, v = edges[:, 0], edges[:, 1]
    keep = u != v
    u, v = u[keep], v[keep]
    if len(u) == 0:
        raise EmptyGraphError("graph has no edges after dropping self-loops")
    # both directions, then dedup on the combined key; np.unique sorts by (src, dst)
    keys = np.unique(np.concatenate([u * n + v, v * n + u]))
    src, dst = np.divmod(keys, n)
    indptr = np.zeros(n + 1, dtype=np.int64)
    np.cumsum(np.bincount(src, minlength=n), out=indptr[1:])
    idx_dtype = np.int32 if n < 2**31 else np.int64
    return Graph(_frozen(indptr), _frozen(dst.astype(idx_dtype)), _frozen(id_map))


def _open_text(path: Path):
    if path.suffix == ".gz":
        return io.TextIOWrapper(gzip.open(path, "rb"), encoding="utf-8")
    return open(path, encoding="utf-8")


def _locate_bad_line(path: Path):
    with _open_text(path) as fh:
        for lineno, line in enumerate(fh, start=1):
            s = line.strip()
            if not s or s.startswith("#"):
                continue
            tokens = s.split()
            if len(tokens) != 2 or not all(t.isdigit() for t in tokens):
                raise EdgeListParseError(path, lineno, line.rstrip("\n"))
    return None


def load_edge_list(path) -> Graph:
    """Load a SNAP edge list (optionally gzipped) into a :class:`Graph`.

    Raises :class:`EdgeListParseError` naming the first malformed line and
    :class:`EmptyGraphError` when the file yields no edges.
    """
    path = Path(path)
    try:
        frame = pd.read_csv(path, sep=r"\s+", comment="#", header=None,
                            dtype=np.int64, engine="c", compression="infer")
    except pd.errors.EmptyDataError:
        raise EmptyGraphError(f"{path}: no edges") from None
    except (ValueError, pd.errors.ParserError, OverflowError):
        _locate_bad_line(path)
        raise
    if frame.shape[1] != 2 or (frame.shape[0] and frame.values.min() < 0):
        _locate_bad_line(path)
        raise EdgeListParseError(path, 0, "<unlocated>")
    if frame.shape[0] == 0:
        raise EmptyGraphError(f"{path}: no edges")
    try:
        return from_edges(frame.values)
    except EmptyGraphError:
        raise EmptyGraphError(f"{path}: no edges after dropping self-loops") from None


def graph_stats(g: Graph) -> GraphStats:
    _, labels = connected_components(g.to_scipy(), directed=False)
    lcc = int(np.bincount(labels).max())
    return GraphStats(n=g.n, m=g.m, avg_degree=2 * g.m / g.n, lcc_fraction=lcc / g.n)
