"""Small hand-built graph families with known centrality values.

Node ``k`` corresponds to label ``x{k+1}``.
"""

from __future__ import annotations

from .graph import GraphPair, WeightedDigraph, WeightKind

__all__ = ["labels", "twin_hub_graph", "twin_hub_pair", "detour_pair", "two_node_pair", "path_graph"]

# x1 and x2 both join the hubs x3 and x4; x5, x6 hang off x3 and x7, x8 off x4
_TWIN_HUB_EDGES = [(0, 2), (0, 3), (2, 1), (3, 1), (4, 2), (5, 2), (6, 3), (7, 3)]


def labels(n: int = 8):
    return [f"x{k + 1}" for k in range(n)]


def twin_hub_graph(top=1.0, bottom=1.0, weight_kind=WeightKind.DISSIMILARITY) -> WeightedDigraph:
    """Eight-node undirected graph; ``top`` weights the x1 edges, ``bottom`` the x2 edges."""
    w = {(0, 2): top, (0, 3): top, (2, 1): bottom, (3, 1): bottom}
    edges = [(u, v, w.get((u, v), 1.0)) for u, v in _TWIN_HUB_EDGES]
    return WeightedDigraph.from_undirected(8, edges, weight_kind)


def twin_hub_pair(eps: float, weight_kind=WeightKind.DISSIMILARITY) -> GraphPair:
    """Unit weights versus the x1 edges raised to ``1 + eps``: x1 drops off every shortest path."""
    return GraphPair(twin_hub_graph(weight_kind=weight_kind), twin_hub_graph(top=1.0 + eps, weight_kind=weight_kind))


def detour_pair(eps: float, big: float) -> GraphPair:
    """The x2 route costs ``1 + eps`` per edge in the first graph and ``1 + big`` in the second."""
    return GraphPair(twin_hub_graph(bottom=1.0 + eps), twin_hub_graph(bottom=1.0 + big))


def two_node_pair(delta: float, weight_kind=WeightKind.SIMILARITY) -> GraphPair:
    g = WeightedDigraph.from_undirected(2, [(0, 1, 1.0)], weight_kind)
    h = WeightedDigraph.from_undirected(2, [(0, 1, 1.0 + delta)], weight_kind)
    return GraphPair(g, h)


def path_graph(n: int, weight: float = 1.0, weight_kind=WeightKind.DISSIMILARITY) -> WeightedDigraph:
    return WeightedDigraph.from_undirected(n, [(i, i + 1, weight) for i in range(n - 1)], weight_kind)
