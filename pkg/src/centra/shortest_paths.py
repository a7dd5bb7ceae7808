"""Shortest path lengths and shortest-path multiplicities on positive weights.

Lengths live in the extended nonnegative reals: an unreachable target has
length ``math.inf``.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass

import numpy as np
from scipy.sparse import csgraph

from .exceptions import CountOverflowError, NegativeDifferenceError
from .graph import WeightedDigraph
from .validation import check_graph

__all__ = [
    "DEFAULT_TIE_TOL",
    "SsspResult",
    "sssp_with_counts",
    "all_pairs_with_counts",
    "apsp",
    "extended_subtract",
    "lengths_tie",
]

DEFAULT_TIE_TOL = 1e-9
_INT64_MAX = np.iinfo(np.int64).max


def lengths_tie(a: float, b: float, tie_tol: float = DEFAULT_TIE_TOL) -> bool:
    """Two finite path lengths count as equal when within ``tie_tol`` relative."""
    return abs(a - b) <= tie_tol * max(a, b)


@dataclass(frozen=True)
class SsspResult:
    source: int
    dist: np.ndarray
    sigma: np.ndarray


def sssp_with_counts(g: WeightedDigraph, source: int, tie_tol: float = DEFAULT_TIE_TOL) -> SsspResult:
    """Dijkstra from ``source`` that also counts shortest paths.

    ``sigma[v]`` counts paths whose length ties ``dist[v]`` under
    :func:`lengths_tie`; ``sigma[source] = 1`` and unreachable nodes get
    ``dist = inf`` and ``sigma = 0``.
    """
    check_graph(g, weight_kind="dissimilarity")
    if not 0 <= source < g.n:
        from .exceptions import NodeOutOfRangeError

        raise NodeOutOfRangeError(f"source {source} not in 0..{g.n - 1}")
    adj = g.out_adjacency
    dist = [math.inf] * g.n
    sigma = [0] * g.n
    done = [False] * g.n
    dist[source] = 0.0
    sigma[source] = 1
    heap = [(0.0, source)]
    while heap:
        d, u = heapq.heappop(heap)
        if done[u]:
            continue
        done[u] = True
        su = sigma[u]
        for v, w in adj[u]:
            if done[v]:
                continue
            nd = d + w
            dv = dist[v]
            if dv == math.inf or (nd < dv and not lengths_tie(nd, dv, tie_tol)):
                dist[v] = nd
                sigma[v] = su
                heapq.heappush(heap, (nd, v))
            elif lengths_tie(nd, dv, tie_tol):
                sigma[v] += su
                if nd < dv:
                    dist[v] = nd
                    heapq.heappush(heap, (nd, v))
    if max(sigma) > _INT64_MAX:
        raise CountOverflowError(f"shortest-path count from node {source} exceeds int64")
    return SsspResult(source, np.array(dist, dtype=np.float64), np.array(sigma, dtype=np.int64))


def all_pairs_with_counts(g: WeightedDigraph, tie_tol: float = DEFAULT_TIE_TOL):
    """Distance matrix and shortest-path count matrix from ``n`` single-source runs."""
    dist = np.empty((g.n, g.n))
    sigma = np.empty((g.n, g.n), dtype=np.int64)
    for s in range(g.n):
        r = sssp_with_counts(g, s, tie_tol)
        dist[s] = r.dist
        sigma[s] = r.sigma
    return dist, sigma


def apsp(g: WeightedDigraph, method: str = "auto") -> np.ndarray:
    """All-pairs shortest path lengths, ``inf`` where unreachable.

    ``method="dijkstra"`` runs :func:`sssp_with_counts` from every source;
    ``"auto"`` delegates the same computation to scipy's compiled Dijkstra.
    """
    check_graph(g, weight_kind="dissimilarity")
    if method == "dijkstra":
        return all_pairs_with_counts(g)[0]
    if method != "auto":
        raise ValueError(f"unknown method {method!r}")
    if g.n == 0:
        return np.zeros((0, 0))
    return csgraph.dijkstra(g.csr, directed=True)


def extended_subtract(a: float, b: float) -> float:
    """``a - b`` on extended lengths with the convention ``inf - inf = 0``.

    ``inf - finite`` is ``inf``. A finite ``a`` smaller than ``b`` raises.
    """
    if math.isinf(a):
        return 0.0 if math.isinf(b) else math.inf
    if math.isinf(b) or a < b:
        raise NegativeDifferenceError(f"{a!r} - {b!r} is negative")
    return a - b
