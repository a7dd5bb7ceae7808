"""Node centrality and decentrality measures on weighted digraphs.

Degree-type measures and eigenvector centrality read weights as
similarities; closeness, betweenness and stable betweenness read them as
dissimilarities (path lengths). No measure is normalized.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .exceptions import NegativeDifferenceError, NoConvergenceError, NotConnectedError
from .graph import WeightedDigraph, adjacency_matrix, remove_node
from .shortest_paths import DEFAULT_TIE_TOL, all_pairs_with_counts, apsp
from .validation import check_graph, is_strongly_connected

__all__ = [
    "Measure",
    "Orientation",
    "CentralityVector",
    "degree",
    "closeness_decentrality",
    "closeness",
    "betweenness",
    "eigenvector_centrality",
    "dominant_eigenpair",
    "stable_betweenness",
    "degree_squared",
    "floor_degree",
    "compute",
]


class Measure(str, enum.Enum):
    DEGREE = "degree"
    OUT_DEGREE = "out_degree"
    IN_DEGREE = "in_degree"
    CLOSENESS_DECENTRALITY = "closeness_decentrality"
    CLOSENESS = "closeness"
    BETWEENNESS = "betweenness"
    EIGENVECTOR = "eigenvector"
    STABLE_BETWEENNESS = "stable_betweenness"
    DEGREE_SQUARED = "degree_squared"
    FLOOR_DEGREE = "floor_degree"

    @property
    def weight_kind(self) -> str:
        if self in _PATH_MEASURES:
            return "dissimilarity"
        return "similarity"


_PATH_MEASURES = frozenset(
    {Measure.CLOSENESS_DECENTRALITY, Measure.CLOSENESS, Measure.BETWEENNESS, Measure.STABLE_BETWEENNESS}
)


class Orientation(str, enum.Enum):
    HIGHER_IS_CENTRAL = "higher_is_central"
    LOWER_IS_CENTRAL = "lower_is_central"


@dataclass(frozen=True)
class CentralityVector:
    """Per-node scores from one measure.

    Values are nonnegative and may be ``inf`` for the path-based measures on
    graphs that are not (bi)connected.
    """

    measure: Measure
    values: np.ndarray
    orientation: Orientation = Orientation.HIGHER_IS_CENTRAL

    def __post_init__(self):
        object.__setattr__(self, "measure", Measure(self.measure))
        object.__setattr__(self, "orientation", Orientation(self.orientation))
        values = np.asarray(self.values, dtype=np.float64)
        if np.isnan(values).any() or (values < 0).any():
            raise ValueError(f"{self.measure.value}: centrality values must be nonnegative")
        expected = (
            Orientation.LOWER_IS_CENTRAL
            if self.measure is Measure.CLOSENESS_DECENTRALITY
            else Orientation.HIGHER_IS_CENTRAL
        )
        if self.orientation is not expected:
            raise ValueError(f"{self.measure.value} must have orientation {expected.value}")
        values.setflags(write=False)
        object.__setattr__(self, "values", values)

    def __len__(self):
        return len(self.values)

    def __getitem__(self, node):
        return float(self.values[node])


def degree(g: WeightedDigraph, mode: str = "undirected") -> CentralityVector:
    """Weighted degree: sum of incident edge weights.

    ``mode`` is ``"undirected"`` (symmetric graphs only), ``"out"`` or ``"in"``.
    """
    if mode == "undirected":
        check_graph(g, weight_kind="similarity", symmetric=True)
        measure = Measure.DEGREE
    elif mode in ("out", "in"):
        check_graph(g, weight_kind="similarity")
        measure = Measure.OUT_DEGREE if mode == "out" else Measure.IN_DEGREE
    else:
        raise ValueError(f"unknown degree mode {mode!r}")
    ends = g.dst if mode == "in" else g.src
    return CentralityVector(measure, np.bincount(ends, weights=g.weights, minlength=g.n))


def degree_squared(g: WeightedDigraph) -> CentralityVector:
    """Sum of squared outgoing edge weights."""
    check_graph(g, weight_kind="similarity")
    return CentralityVector(Measure.DEGREE_SQUARED, np.bincount(g.src, weights=g.weights**2, minlength=g.n))


def floor_degree(g: WeightedDigraph) -> CentralityVector:
    """Sum of floored outgoing edge weights."""
    check_graph(g, weight_kind="similarity")
    return CentralityVector(Measure.FLOOR_DEGREE, np.bincount(g.src, weights=np.floor(g.weights), minlength=g.n))


def closeness_decentrality(g: WeightedDigraph) -> CentralityVector:
    """Sum of shortest path lengths from each node; ``inf`` if some node is unreachable.

    Lower means more central.
    """
    check_graph(g, weight_kind="dissimilarity")
    d = apsp(g)
    return CentralityVector(Measure.CLOSENESS_DECENTRALITY, d.sum(axis=1), Orientation.LOWER_IS_CENTRAL)


def closeness(g: WeightedDigraph) -> CentralityVector:
    """Reciprocal of :func:`closeness_decentrality`; strongly connected graphs with n >= 2 only."""
    check_graph(g, weight_kind="dissimilarity")
    if g.n < 2 or not is_strongly_connected(g):
        raise NotConnectedError("closeness needs a strongly connected graph with at least two nodes")
    return CentralityVector(Measure.CLOSENESS, 1.0 / closeness_decentrality(g).values)


def betweenness(g: WeightedDigraph, tie_tol: float = DEFAULT_TIE_TOL) -> CentralityVector:
    """Sum over ordered pairs ``(s, t)`` with ``s != x != t`` of the fraction of
    shortest ``s -> t`` paths passing through ``x``.

    Disconnected pairs contribute nothing. Path lengths within ``tie_tol``
    relative are treated as equal when counting shortest paths.
    """
    check_graph(g, weight_kind="dissimilarity")
    n = g.n
    dist, sigma = all_pairs_with_counts(g, tie_tol)
    sig = sigma.astype(np.float64)
    finite = np.isfinite(dist)
    out = np.zeros(n)
    with np.errstate(invalid="ignore", divide="ignore"):
        for x in range(n):
            via = dist[:, x, None] + dist[None, x, :]
            on_path = finite & np.isfinite(via) & (np.abs(via - dist) <= tie_tol * via)
            on_path[x, :] = False
            on_path[:, x] = False
            np.fill_diagonal(on_path, False)
            if on_path.any():
                ratio = (sig[:, x, None] * sig[None, x, :]) / sig
                out[x] = ratio[on_path].sum()
    return CentralityVector(Measure.BETWEENNESS, out)


def dominant_eigenpair(a: np.ndarray, tol: float = 1e-12, max_iter: int = 100_000):
    """Leading eigenpair of a nonnegative symmetric matrix by shifted power iteration.

    Iterates on ``a + c I`` with ``c`` half the max row sum, which keeps the
    Perron eigenvalue strictly dominant even for bipartite graphs where plain
    power iteration oscillates. Stops once successive unit iterates differ by
    at most ``tol`` in Euclidean norm.
    """
    n = a.shape[0]
    if n == 1:
        return 0.0, np.ones(1)
    shift = 0.5 * a.sum(axis=1).max()
    v = np.full(n, 1.0 / math.sqrt(n))
    for _ in range(max_iter):
        w = a @ v + shift * v
        w /= np.linalg.norm(w)
        if np.linalg.norm(w - v) <= tol:
            v = w
            break
        v = w
    else:
        raise NoConvergenceError(f"power iteration did not converge in {max_iter} iterations")
    return float(v @ a @ v), v


def eigenvector_centrality(g: WeightedDigraph, tol: float = 1e-12, max_iter: int = 100_000) -> CentralityVector:
    """Unit-norm, entrywise positive dominant eigenvector of the adjacency matrix.

    Needs an undirected, connected similarity graph.
    """
    check_graph(g, weight_kind="similarity", symmetric=True, connected=True)
    if g.n == 0:
        return CentralityVector(Measure.EIGENVECTOR, np.zeros(0))
    _, v = dominant_eigenpair(adjacency_matrix(g), tol, max_iter)
    # iterates of a nonnegative matrix from a positive start stay nonnegative
    return CentralityVector(Measure.EIGENVECTOR, np.abs(v))


def stable_betweenness(g: WeightedDigraph, apsp_method: str = "auto", rel_tol: float = 1e-9) -> CentralityVector:
    """Total increase of shortest path lengths between other node pairs when a node is deleted.

    Uses ``inf - inf = 0``, so pairs already disconnected in ``g`` contribute
    nothing and a node whose deletion disconnects some connected pair scores
    ``inf``. Costs one all-pairs run on ``g`` plus one per deleted node.
    Round-off below ``rel_tol`` relative that would make a term negative is
    clamped to zero.
    """
    check_graph(g, weight_kind="dissimilarity")
    n = g.n
    full = apsp(g, method=apsp_method)
    out = np.zeros(n)
    for x in range(n):
        gx = remove_node(g, x)
        keep = np.delete(np.arange(n), x)
        before = full[np.ix_(keep, keep)]
        after = apsp(gx, method=apsp_method)
        both_inf = np.isinf(after) & np.isinf(before)
        if (np.isinf(after) & ~both_inf).any():
            out[x] = math.inf
            continue
        if np.isinf(before[~both_inf]).any():
            raise NegativeDifferenceError(f"deleting node {x} shortened a path from infinite length")
        with np.errstate(invalid="ignore"):
            diff = np.where(both_inf, 0.0, after - before)
        neg = diff < 0
        if neg.any():
            if (-diff[neg] > rel_tol * before[neg]).any():
                raise NegativeDifferenceError(f"deleting node {x} shortened a shortest path")
            diff[neg] = 0.0
        out[x] = diff.sum()
    return CentralityVector(Measure.STABLE_BETWEENNESS, out)


def compute(g: WeightedDigraph, measure, **kwargs) -> CentralityVector:
    """Dispatch on a :class:`Measure` name."""
    measure = Measure(measure)
    if measure is Measure.DEGREE:
        return degree(g, "undirected")
    if measure is Measure.OUT_DEGREE:
        return degree(g, "out")
    if measure is Measure.IN_DEGREE:
        return degree(g, "in")
    return _DISPATCH[measure](g, **kwargs)


_DISPATCH = {
    Measure.CLOSENESS_DECENTRALITY: closeness_decentrality,
    Measure.CLOSENESS: closeness,
    Measure.BETWEENNESS: betweenness,
    Measure.EIGENVECTOR: eigenvector_centrality,
    Measure.STABLE_BETWEENNESS: stable_betweenness,
    Measure.DEGREE_SQUARED: degree_squared,
    Measure.FLOOR_DEGREE: floor_degree,
}
