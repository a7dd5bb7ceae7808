"""scikit-learn style wrappers around the centrality measures.

Each estimator is fitted on one graph (a :class:`WeightedDigraph` or a
square nonnegative adjacency matrix) and exposes ``centrality_``,
``scores_`` and ``ranking_``. ``transform`` returns per-node scores as an
``(n_nodes, 1)`` column so the result can feed a feature pipeline.
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from . import centrality as C
from .graph import WeightedDigraph, WeightKind, convert_weights
from .ranking import centrality_ranking

__all__ = [
    "as_graph",
    "DegreeCentrality",
    "DegreeSquaredCentrality",
    "FloorDegreeCentrality",
    "ClosenessDecentrality",
    "BetweennessCentrality",
    "EigenvectorCentrality",
    "StableBetweennessCentrality",
    "make_estimator",
]


def as_graph(X, weight_kind=None) -> WeightedDigraph:
    """Coerce ``X`` to a graph.

    Graphs pass through unchanged. Anything else is read as a dense
    adjacency matrix: square, finite, nonnegative, zero diagonal; positive
    entries become edges of kind ``weight_kind``.
    """
    if isinstance(X, WeightedDigraph):
        return X
    if weight_kind is None:
        raise ValueError("weight_kind is required when passing an adjacency matrix")
    a = np.asarray(X, dtype=np.float64)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"adjacency matrix must be square, got shape {a.shape}")
    if not np.isfinite(a).all() or (a < 0).any():
        raise ValueError("adjacency matrix entries must be finite and nonnegative")
    if np.diag(a).any():
        raise ValueError("adjacency matrix must have a zero diagonal (no self-loops)")
    src, dst = np.nonzero(a)
    return WeightedDigraph(a.shape[0], src, dst, a[src, dst], weight_kind)


class _CentralityEstimator(TransformerMixin, BaseEstimator):
    _measure: C.Measure

    def _prepare(self, X) -> WeightedDigraph:
        native = WeightKind(self._measure.weight_kind)
        g = as_graph(X, native)
        if g.weight_kind is not native and self.conversion is not None:
            g = convert_weights(g, self.conversion)
        return g

    def _compute(self, g) -> C.CentralityVector:
        raise NotImplementedError

    def fit(self, X, y=None):
        g = self._prepare(X)
        self.centrality_ = self._compute(g)
        self.scores_ = np.asarray(self.centrality_.values)
        self.ranking_ = centrality_ranking(self.centrality_)
        self.n_nodes_ = g.n
        return self

    def transform(self, X):
        check_is_fitted(self, "centrality_")
        return np.asarray(self._compute(self._prepare(X)).values).reshape(-1, 1)

    def fit_transform(self, X, y=None, **fit_params):
        return self.fit(X, y).scores_.reshape(-1, 1)


class DegreeCentrality(_CentralityEstimator):
    """Weighted degree; ``mode`` is ``"undirected"``, ``"out"`` or ``"in"``."""

    def __init__(self, mode="undirected", conversion=None):
        self.mode = mode
        self.conversion = conversion

    @property
    def _measure(self):
        return {"undirected": C.Measure.DEGREE, "out": C.Measure.OUT_DEGREE, "in": C.Measure.IN_DEGREE}[self.mode]

    def _compute(self, g):
        return C.degree(g, self.mode)


class DegreeSquaredCentrality(_CentralityEstimator):
    _measure = C.Measure.DEGREE_SQUARED

    def __init__(self, conversion=None):
        self.conversion = conversion

    def _compute(self, g):
        return C.degree_squared(g)


class FloorDegreeCentrality(_CentralityEstimator):
    _measure = C.Measure.FLOOR_DEGREE

    def __init__(self, conversion=None):
        self.conversion = conversion

    def _compute(self, g):
        return C.floor_degree(g)


class ClosenessDecentrality(_CentralityEstimator):
    """Sum of distances to every other node; lower is more central."""

    _measure = C.Measure.CLOSENESS_DECENTRALITY

    def __init__(self, conversion=None):
        self.conversion = conversion

    def _compute(self, g):
        return C.closeness_decentrality(g)


class BetweennessCentrality(_CentralityEstimator):
    _measure = C.Measure.BETWEENNESS

    def __init__(self, tie_tol=1e-9, conversion=None):
        self.tie_tol = tie_tol
        self.conversion = conversion

    def _compute(self, g):
        return C.betweenness(g, self.tie_tol)


class EigenvectorCentrality(_CentralityEstimator):
    _measure = C.Measure.EIGENVECTOR

    def __init__(self, tol=1e-12, max_iter=100_000, conversion=None):
        self.tol = tol
        self.max_iter = max_iter
        self.conversion = conversion

    def _compute(self, g):
        return C.eigenvector_centrality(g, self.tol, self.max_iter)


class StableBetweennessCentrality(_CentralityEstimator):
    """Total shortest-path lengthening caused by deleting each node."""

    _measure = C.Measure.STABLE_BETWEENNESS

    def __init__(self, conversion=None):
        self.conversion = conversion

    def _compute(self, g):
        return C.stable_betweenness(g)


_REGISTRY = {
    C.Measure.DEGREE: lambda **kw: DegreeCentrality(mode="undirected", **kw),
    C.Measure.OUT_DEGREE: lambda **kw: DegreeCentrality(mode="out", **kw),
    C.Measure.IN_DEGREE: lambda **kw: DegreeCentrality(mode="in", **kw),
    C.Measure.DEGREE_SQUARED: DegreeSquaredCentrality,
    C.Measure.FLOOR_DEGREE: FloorDegreeCentrality,
    C.Measure.CLOSENESS_DECENTRALITY: ClosenessDecentrality,
    C.Measure.BETWEENNESS: BetweennessCentrality,
    C.Measure.EIGENVECTOR: EigenvectorCentrality,
    C.Measure.STABLE_BETWEENNESS: StableBetweennessCentrality,
}


def make_estimator(measure, **params) -> _CentralityEstimator:
    """Estimator for a :class:`~centra.centrality.Measure` name."""
    measure = C.Measure(measure)
    if measure not in _REGISTRY:
        raise ValueError(f"no estimator for {measure.value}")
    return _REGISTRY[measure](**params)
