"""Weighted directed graphs, the l1 graph metric, weight conversions and node deletion."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np
import scipy.sparse as sp

from .exceptions import (
    DuplicateEdgeError,
    NodeOutOfRangeError,
    NonPositiveWeightError,
    SelfLoopError,
    TopologyMismatchError,
    WeightOutOfRangeError,
)

__all__ = [
    "WeightKind",
    "ConversionRule",
    "WeightedDigraph",
    "GraphPair",
    "build_graph",
    "graph_distance",
    "convert_weights",
    "remove_node",
    "adjacency_matrix",
]


class WeightKind(str, enum.Enum):
    SIMILARITY = "similarity"
    DISSIMILARITY = "dissimilarity"

    @property
    def flipped(self) -> "WeightKind":
        if self is WeightKind.SIMILARITY:
            return WeightKind.DISSIMILARITY
        return WeightKind.SIMILARITY


class ConversionRule(str, enum.Enum):
    AFFINE_TWO_MINUS = "affine_two_minus"
    RECIPROCAL = "reciprocal"


class WeightedDigraph:
    """Immutable directed graph on nodes ``0..n-1`` with strictly positive weights.

    Edges are kept sorted by ``(src, dst)`` so that every derived quantity is
    independent of the order in which edges were supplied. Undirected graphs
    are stored as symmetric edge sets with equal weights in both directions.

    Use :func:`build_graph` (or :meth:`from_edges`) to construct instances;
    the constructor validates its input either way.
    """

    def __init__(self, n, src, dst, weights, weight_kind=WeightKind.DISSIMILARITY):
        n = int(n)
        if n < 0:
            raise NodeOutOfRangeError(f"node count must be nonnegative, got {n}")
        src = np.asarray(src, dtype=np.int64).reshape(-1)
        dst = np.asarray(dst, dtype=np.int64).reshape(-1)
        weights = np.asarray(weights, dtype=np.float64).reshape(-1)
        if not (len(src) == len(dst) == len(weights)):
            raise ValueError("src, dst and weights must have equal length")

        bad = (src < 0) | (src >= n) | (dst < 0) | (dst >= n)
        if bad.any():
            i = int(np.flatnonzero(bad)[0])
            raise NodeOutOfRangeError(f"edge ({src[i]}, {dst[i]}) references a node outside 0..{n - 1}")
        loops = src == dst
        if loops.any():
            i = int(np.flatnonzero(loops)[0])
            raise SelfLoopError(f"self-loop on node {src[i]}")
        nonpos = ~(weights > 0) | ~np.isfinite(weights)
        if nonpos.any():
            i = int(np.flatnonzero(nonpos)[0])
            raise NonPositiveWeightError(
                f"edge ({src[i]}, {dst[i]}) has weight {weights[i]!r}; weights must be finite and > 0"
            )

        order = np.lexsort((dst, src))
        src, dst, weights = src[order], dst[order], weights[order]
        if len(src) > 1:
            dup = (src[1:] == src[:-1]) & (dst[1:] == dst[:-1])
            if dup.any():
                i = int(np.flatnonzero(dup)[0])
                raise DuplicateEdgeError(f"duplicate edge ({src[i]}, {dst[i]})")

        for arr in (src, dst, weights):
            arr.setflags(write=False)
        self.n = n
        self.src = src
        self.dst = dst
        self.weights = weights
        self.weight_kind = WeightKind(weight_kind)

    @classmethod
    def from_edges(cls, n, edge_list, weight_kind=WeightKind.DISSIMILARITY):
        edge_list = list(edge_list)
        if edge_list:
            src, dst, w = zip(*edge_list)
        else:
            src, dst, w = (), (), ()
        return cls(n, src, dst, w, weight_kind)

    @classmethod
    def from_undirected(cls, n, edge_list, weight_kind=WeightKind.DISSIMILARITY):
        """Expand ``(u, v, w)`` triples into symmetric directed pairs."""
        both = []
        for u, v, w in edge_list:
            both.append((u, v, w))
            both.append((v, u, w))
        return cls.from_edges(n, both, weight_kind)

    def __repr__(self):
        return (
            f"WeightedDigraph(n={self.n}, edges={self.n_edges}, "
            f"weight_kind={self.weight_kind.value!r})"
        )

    def __eq__(self, other):
        if not isinstance(other, WeightedDigraph):
            return NotImplemented
        return (
            self.n == other.n
            and self.weight_kind == other.weight_kind
            and np.array_equal(self.src, other.src)
            and np.array_equal(self.dst, other.dst)
            and np.array_equal(self.weights, other.weights)
        )

    __hash__ = None

    @property
    def n_edges(self) -> int:
        return len(self.src)

    def edges(self):
        """Directed edges as ``(src, dst, weight)`` in sorted order."""
        return [(int(u), int(v), float(w)) for u, v, w in zip(self.src, self.dst, self.weights)]

    def edge_set(self) -> frozenset:
        return frozenset(zip(self.src.tolist(), self.dst.tolist()))

    @cached_property
    def _index(self) -> dict:
        return {(u, v): i for i, (u, v) in enumerate(zip(self.src.tolist(), self.dst.tolist()))}

    def has_edge(self, u, v) -> bool:
        return (u, v) in self._index

    def weight(self, u, v) -> float:
        return float(self.weights[self._index[(u, v)]])

    def with_weights(self, weights, weight_kind=None) -> "WeightedDigraph":
        """Same topology, new weights aligned with :meth:`edges` order."""
        kind = self.weight_kind if weight_kind is None else weight_kind
        return WeightedDigraph(self.n, self.src, self.dst, weights, kind)

    @cached_property
    def out_adjacency(self) -> list:
        """Per-node list of ``(neighbor, weight)`` pairs for outgoing edges."""
        adj = [[] for _ in range(self.n)]
        for u, v, w in zip(self.src.tolist(), self.dst.tolist(), self.weights.tolist()):
            adj[u].append((v, w))
        return adj

    @cached_property
    def csr(self) -> sp.csr_matrix:
        return sp.csr_matrix((self.weights, (self.src, self.dst)), shape=(self.n, self.n))

    def out_degree_count(self) -> np.ndarray:
        return np.bincount(self.src, minlength=self.n)

    def in_degree_count(self) -> np.ndarray:
        return np.bincount(self.dst, minlength=self.n)

    @cached_property
    def is_symmetric(self) -> bool:
        idx = self._index
        for (u, v), i in idx.items():
            j = idx.get((v, u))
            if j is None or self.weights[i] != self.weights[j]:
                return False
        return True

    def undirected_edges(self):
        """For symmetric graphs: each undirected edge once as ``(u, v, w)`` with ``u < v``."""
        return [(u, v, w) for u, v, w in self.edges() if u < v]


@dataclass(frozen=True)
class GraphPair:
    """Two graphs on the same node and edge sets, differing only in weights."""

    g: WeightedDigraph
    h: WeightedDigraph

    def __post_init__(self):
        _check_same_topology(self.g, self.h)

    @property
    def distance(self) -> float:
        return graph_distance(self.g, self.h)


def _check_same_topology(g, h):
    if g.n != h.n:
        raise TopologyMismatchError(f"node counts differ: {g.n} vs {h.n}")
    if not (np.array_equal(g.src, h.src) and np.array_equal(g.dst, h.dst)):
        raise TopologyMismatchError("edge sets differ")


def build_graph(n, edge_list: Iterable[Sequence], weight_kind=WeightKind.DISSIMILARITY) -> WeightedDigraph:
    """Validate ``(src, dst, weight)`` triples and build a graph on ``n`` nodes."""
    return WeightedDigraph.from_edges(n, edge_list, weight_kind)


def graph_distance(g, h=None) -> float:
    """Sum over directed edges of ``|W(e) - W'(e)|``.

    Accepts either two graphs or a single :class:`GraphPair`.
    """
    if h is None:
        if not isinstance(g, GraphPair):
            raise TypeError("graph_distance needs a GraphPair or two graphs")
        g, h = g.g, g.h
    _check_same_topology(g, h)
    return float(np.abs(g.weights - h.weights).sum())


def convert_weights(g: WeightedDigraph, rule) -> WeightedDigraph:
    """Map similarities to dissimilarities or back.

    ``affine_two_minus`` sends ``w`` to ``2 - w`` and needs every weight below 2;
    ``reciprocal`` sends ``w`` to ``1 / w``. The weight kind is flipped.
    """
    rule = ConversionRule(rule)
    if rule is ConversionRule.AFFINE_TWO_MINUS:
        if g.n_edges and g.weights.max() >= 2.0:
            raise WeightOutOfRangeError(
                f"affine conversion needs all weights < 2, max is {g.weights.max()!r}"
            )
        new = 2.0 - g.weights
    else:
        new = 1.0 / g.weights
    return g.with_weights(new, g.weight_kind.flipped)


def remove_node(g: WeightedDigraph, x: int, return_mapping: bool = False):
    """Delete node ``x`` and every edge into or out of it.

    Surviving nodes are renumbered in order. With ``return_mapping=True`` also
    returns an array mapping old ids to new ids (``-1`` for ``x``).
    """
    if not 0 <= x < g.n:
        raise NodeOutOfRangeError(f"node {x} not in 0..{g.n - 1}")
    mapping = np.arange(g.n, dtype=np.int64)
    mapping[x] = -1
    mapping[x + 1:] -= 1
    keep = (g.src != x) & (g.dst != x)
    out = WeightedDigraph(g.n - 1, mapping[g.src[keep]], mapping[g.dst[keep]], g.weights[keep], g.weight_kind)
    if return_mapping:
        return out, mapping
    return out


def adjacency_matrix(g: WeightedDigraph) -> np.ndarray:
    """Dense ``n x n`` matrix with ``A[i, j]`` the weight of ``(i, j)`` or 0."""
    a = np.zeros((g.n, g.n))
    a[g.src, g.dst] = g.weights
    return a
