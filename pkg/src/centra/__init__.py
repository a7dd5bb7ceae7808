"""Centrality measures on weighted graphs and tools for probing their stability."""

from .centrality import (
    CentralityVector,
    Measure,
    Orientation,
    betweenness,
    closeness,
    closeness_decentrality,
    compute,
    degree,
    degree_squared,
    eigenvector_centrality,
    floor_degree,
    stable_betweenness,
)
from .estimators import (
    BetweennessCentrality,
    ClosenessDecentrality,
    DegreeCentrality,
    DegreeSquaredCentrality,
    EigenvectorCentrality,
    FloorDegreeCentrality,
    StableBetweennessCentrality,
    as_graph,
    make_estimator,
)
from .graph import (
    ConversionRule,
    GraphPair,
    WeightedDigraph,
    WeightKind,
    adjacency_matrix,
    build_graph,
    convert_weights,
    graph_distance,
    remove_node,
)
from .perturbation import TYPE1, TYPE2, NoiseSpec, magnitude_sweep, perturb
from .ranking import Ranking, centrality_ranking, rank_displacement, top_k_retained
from .shortest_paths import apsp, extended_subtract, sssp_with_counts
from .validation import check_graph

__version__ = "0.1.0"
