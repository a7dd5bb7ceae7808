"""Input validation helpers shared by the functional API and the estimators."""

from __future__ import annotations

from scipy.sparse import csgraph

from .exceptions import NotConnectedError, NotSymmetricError, WrongWeightKindError
from .graph import WeightedDigraph, WeightKind

__all__ = ["check_graph", "is_strongly_connected", "is_weakly_connected"]


def is_strongly_connected(g: WeightedDigraph) -> bool:
    if g.n <= 1:
        return True
    k, _ = csgraph.connected_components(g.csr, directed=True, connection="strong")
    return k == 1


def is_weakly_connected(g: WeightedDigraph) -> bool:
    if g.n <= 1:
        return True
    k, _ = csgraph.connected_components(g.csr, directed=True, connection="weak")
    return k == 1


def check_graph(g, weight_kind=None, symmetric=False, connected=False) -> WeightedDigraph:
    """Raise if ``g`` does not meet the requested preconditions; return it otherwise.

    Parameters
    ----------
    g : WeightedDigraph
    weight_kind : WeightKind or str, optional
        Required interpretation of the weights.
    symmetric : bool
        Require an undirected (symmetric, equal-weight) edge set.
    connected : bool
        Require a single connected component.
    """
    if not isinstance(g, WeightedDigraph):
        raise TypeError(f"expected a WeightedDigraph, got {type(g).__name__}")
    if weight_kind is not None and g.weight_kind is not WeightKind(weight_kind):
        raise WrongWeightKindError(
            f"this operation needs {WeightKind(weight_kind).value} weights, "
            f"graph carries {g.weight_kind.value} weights"
        )
    if symmetric and not g.is_symmetric:
        raise NotSymmetricError("graph is not symmetric (undirected)")
    if connected and not is_weakly_connected(g):
        raise NotConnectedError("graph is not connected")
    return g
