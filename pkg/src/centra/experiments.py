"""Random networks, stability ratios and the ranking-robustness experiments."""

from __future__ import annotations

import math
import os
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations
from typing import NamedTuple, Sequence

import numpy as np

from .centrality import CentralityVector, Measure, compute
from .exceptions import SizeTooSmallError, ZeroDistanceError
from .graph import ConversionRule, GraphPair, WeightedDigraph, WeightKind, adjacency_matrix, convert_weights
from .perturbation import TYPE1, TYPE2, NoiseSpec, magnitude_sweep, make_rng, perturb
from .ranking import centrality_ranking, rank_displacement, top_k_retained
from .validation import is_strongly_connected, is_weakly_connected

__all__ = [
    "FIVE_MEASURES",
    "TwinNetwork",
    "random_network",
    "connected_random_network",
    "centrality_difference",
    "stability_ratio",
    "stability_bound",
    "ExperimentConfig",
    "IndicatorReport",
    "run_perturbation_experiment",
    "CrossMeasureResult",
    "cross_measure_matrix",
    "BOUNDED_MEASURES",
    "BoundCheck",
    "verify_stability_bounds",
    "real_network_sweep",
]

FIVE_MEASURES = (
    Measure.DEGREE,
    Measure.CLOSENESS_DECENTRALITY,
    Measure.BETWEENNESS,
    Measure.EIGENVECTOR,
    Measure.STABLE_BETWEENNESS,
)


class TwinNetwork(NamedTuple):
    """One network seen through dissimilarity weights and their ``2 - w`` similarity twin."""

    dissimilarity: WeightedDigraph
    similarity: WeightedDigraph

    def view(self, measure) -> WeightedDigraph:
        if Measure(measure).weight_kind == "dissimilarity":
            return self.dissimilarity
        return self.similarity

    @classmethod
    def from_dissimilarity(cls, g: WeightedDigraph) -> "TwinNetwork":
        return cls(g, convert_weights(g, ConversionRule.AFFINE_TWO_MINUS))


def random_network(n: int, seed=0) -> TwinNetwork:
    """Undirected random network on ``n >= 10`` nodes.

    Every node pair is joined with probability ``10 / n``; weights are
    uniform on ``[0.5, 1.5]`` and read as dissimilarities. ``seed`` may also
    be a ``numpy.random.Generator``.
    """
    if n < 10:
        raise SizeTooSmallError(f"random networks need n >= 10, got {n}")
    rng = seed if isinstance(seed, np.random.Generator) else make_rng(seed)
    iu, ju = np.triu_indices(n, k=1)
    present = rng.random(len(iu)) < 10.0 / n
    w = rng.uniform(0.5, 1.5, len(iu))
    edges = zip(iu[present].tolist(), ju[present].tolist(), w[present].tolist())
    g = WeightedDigraph.from_undirected(n, edges, WeightKind.DISSIMILARITY)
    return TwinNetwork.from_dissimilarity(g)


def connected_random_network(n: int, seed=0, max_draws: int = 1000) -> TwinNetwork:
    """Draw :func:`random_network` samples from one stream until one is connected."""
    rng = seed if isinstance(seed, np.random.Generator) else make_rng(seed)
    for _ in range(max_draws):
        net = random_network(n, rng)
        if is_weakly_connected(net.dissimilarity):
            return net
    raise RuntimeError(f"no connected network of size {n} in {max_draws} draws")


def centrality_difference(a: CentralityVector, b: CentralityVector) -> np.ndarray:
    """Per-node ``|a - b|`` with ``inf - inf = 0``."""
    va, vb = np.asarray(a.values), np.asarray(b.values)
    both_inf = np.isinf(va) & np.isinf(vb)
    with np.errstate(invalid="ignore"):
        diff = np.abs(va - vb)
    diff[both_inf] = 0.0
    return diff


def _measure_fn(measure):
    if callable(measure):
        return measure
    return lambda g: compute(g, measure)


def stability_ratio(measure, pair: GraphPair) -> float:
    """Worst-node ``|C^G(x) - C^H(x)| / d(G, H)``.

    ``measure`` is a :class:`Measure` (or its name) or any callable mapping a
    graph to a :class:`CentralityVector`.
    """
    d = pair.distance
    if d <= 0:
        raise ZeroDistanceError("graphs are identical; the ratio is undefined")
    fn = _measure_fn(measure)
    diff = centrality_difference(fn(pair.g), fn(pair.h))
    return float(diff.max()) / d if len(diff) else 0.0


def stability_bound(measure, g: WeightedDigraph) -> float:
    """Proven Lipschitz constant of ``measure`` at ``g``.

    Degree-type measures: 1. Closeness decentrality: ``n``. Eigenvector:
    ``4 / (lambda_max - lambda_second)`` of ``g``'s adjacency spectrum. Stable
    betweenness: ``2 n^2``. Other measures have no finite constant.
    """
    measure = Measure(measure)
    if measure in (Measure.DEGREE, Measure.OUT_DEGREE, Measure.IN_DEGREE):
        return 1.0
    if measure is Measure.CLOSENESS_DECENTRALITY:
        return float(g.n)
    if measure is Measure.STABLE_BETWEENNESS:
        return 2.0 * g.n**2
    if measure is Measure.EIGENVECTOR:
        lam = np.linalg.eigvalsh(adjacency_matrix(g))
        gap = lam[-1] - lam[-2]
        return math.inf if gap <= 0 else 4.0 / gap
    return math.inf


@dataclass(frozen=True)
class ExperimentConfig:
    sizes: tuple = (20, 40, 60, 80, 100)
    trials: int = 20
    p: float = 1.0
    delta: float = 0.01
    measures: tuple = FIVE_MEASURES
    thresholds: tuple = (3, 5, 10)
    top_k: int = 5
    seed: int = 0

    def __post_init__(self):
        object.__setattr__(self, "sizes", tuple(int(s) for s in self.sizes))
        object.__setattr__(self, "measures", tuple(Measure(m) for m in self.measures))
        object.__setattr__(self, "thresholds", tuple(int(t) for t in self.thresholds))
        if not self.sizes or min(self.sizes) < 10:
            raise SizeTooSmallError(f"sizes must all be >= 10, got {self.sizes}")
        if self.trials < 1:
            raise ValueError("trials must be positive")
        if self.top_k > min(self.sizes):
            raise ValueError("top_k exceeds the smallest network size")
        # noise must keep dissimilarities below 2 so the similarity twin stays positive
        if 1.5 * (1.0 + self.delta) >= 2.0:
            raise ValueError(f"delta={self.delta} can push weights past 2; use delta < 1/3")
        NoiseSpec(self.p, self.delta)

    def noise(self, n: int, trial: int) -> NoiseSpec:
        return NoiseSpec(self.p, self.delta, (self.seed, n, trial, 1))


@dataclass
class IndicatorReport:
    """Robustness indicators for one (size, measure) cell, one entry per trial."""

    max_displacement: list = field(default_factory=list)
    mean_displacement: list = field(default_factory=list)
    top_k_retained: list = field(default_factory=list)

    def add(self, max_disp: int, mean_disp: float, retained: bool):
        self.max_displacement.append(int(max_disp))
        self.mean_displacement.append(float(mean_disp))
        self.top_k_retained.append(bool(retained))

    @property
    def trials(self) -> int:
        return len(self.max_displacement)

    @property
    def mean_max(self) -> float:
        return float(np.mean(self.max_displacement))

    @property
    def mean_average(self) -> float:
        return float(np.mean(self.mean_displacement))

    def exceedance(self, threshold: int) -> float:
        """Fraction of trials whose max displacement is strictly above ``threshold``."""
        return float(np.mean(np.asarray(self.max_displacement) > threshold))

    def exceeds(self, threshold: int) -> list:
        return [m > threshold for m in self.max_displacement]

    @property
    def top_k_rate(self) -> float:
        return float(np.mean(self.top_k_retained))

    @property
    def histogram(self) -> dict:
        return dict(sorted(Counter(self.max_displacement).items()))


def _trial(args):
    config, n, t = args
    net = connected_random_network(n, (config.seed, n, t, 0))
    noisy = TwinNetwork.from_dissimilarity(perturb(net.dissimilarity, config.noise(n, t)))
    rows = []
    for m in config.measures:
        r0 = centrality_ranking(compute(net.view(m), m))
        r1 = centrality_ranking(compute(noisy.view(m), m))
        disp = rank_displacement(r0, r1)
        rows.append((m, disp.max, disp.mean, top_k_retained(r0, r1, config.top_k)))
    return n, rows


def _pool_map(fn, tasks, jobs):
    if jobs is None:
        jobs = os.cpu_count() or 1
    if jobs <= 1 or len(tasks) <= 1:
        return [fn(t) for t in tasks]
    with ProcessPoolExecutor(max_workers=jobs) as ex:
        return list(ex.map(fn, tasks))


def run_perturbation_experiment(config: ExperimentConfig, jobs: int | None = 1) -> dict:
    """Rank stability of each measure under noise, per network size.

    Every trial draws a connected random network, perturbs its
    dissimilarity view once and rebuilds the similarity twin from the noisy
    weights, then compares the rankings before and after. Trial ``t`` at size
    ``n`` uses the streams ``(seed, n, t, 0)`` for the network and
    ``(seed, n, t, 1)`` for the noise, so results do not depend on ``jobs``.

    Returns ``{(size, measure): IndicatorReport}``.
    """
    tasks = [(config, n, t) for n in config.sizes for t in range(config.trials)]
    reports = {(n, m): IndicatorReport() for n in config.sizes for m in config.measures}
    for n, rows in _pool_map(_trial, tasks, jobs):
        for m, mx, mean, kept in rows:
            reports[(n, m)].add(mx, mean, kept)
    return reports


@dataclass
class CrossMeasureResult:
    """Mean over networks of the average and maximum rank displacement between measure pairs."""

    measures: tuple
    average: np.ndarray
    maximum: np.ndarray

    def table(self) -> np.ndarray:
        """Upper triangle holds average displacement, lower triangle the maximum."""
        k = len(self.measures)
        out = np.zeros((k, k))
        upper = np.triu_indices(k, 1)
        lower = np.tril_indices(k, -1)
        out[upper] = self.average[upper]
        out[lower] = self.maximum[lower]
        return out

    def entry(self, a, b):
        i, j = self.measures.index(Measure(a)), self.measures.index(Measure(b))
        return float(self.average[i, j]), float(self.maximum[i, j])


def cross_measure_matrix(graphs: Sequence[TwinNetwork], measures: Sequence) -> CrossMeasureResult:
    """Compare rankings from different measures on the same networks."""
    if not graphs:
        raise ValueError("need at least one network")
    measures = tuple(Measure(m) for m in measures)
    k = len(measures)
    avg = np.zeros((k, k))
    mx = np.zeros((k, k))
    for net in graphs:
        if isinstance(net, WeightedDigraph):
            net = TwinNetwork.from_dissimilarity(net)
        rankings = [centrality_ranking(compute(net.view(m), m)) for m in measures]
        for i, j in combinations(range(k), 2):
            disp = rank_displacement(rankings[i], rankings[j])
            avg[i, j] += disp.mean
            mx[i, j] += disp.max
    avg /= len(graphs)
    mx /= len(graphs)
    avg = avg + avg.T
    mx = mx + mx.T
    return CrossMeasureResult(measures, avg, mx)


BOUNDED_MEASURES = (
    Measure.DEGREE,
    Measure.CLOSENESS_DECENTRALITY,
    Measure.EIGENVECTOR,
    Measure.STABLE_BETWEENNESS,
)

# absorbs floating-point round-off in the ratio, nothing more
_BOUND_SLACK = 1e-12


@dataclass
class BoundCheck:
    measure: Measure
    pairs: int = 0
    worst_ratio: float = 0.0
    worst_fraction: float = 0.0
    violations: int = 0

    def record(self, ratio: float, bound: float):
        self.pairs += 1
        self.worst_ratio = max(self.worst_ratio, ratio)
        self.worst_fraction = max(self.worst_fraction, ratio / bound)
        if ratio > bound * (1.0 + _BOUND_SLACK):
            self.violations += 1


def _bound_task(args):
    n, t, k, noise, seed, measures = args
    net = connected_random_network(n, (seed, n, t, 0))
    noisy = TwinNetwork.from_dissimilarity(perturb(net.dissimilarity, noise.with_seed((seed, n, t, 1, k))))
    out = []
    for m in measures:
        pair = GraphPair(net.view(m), noisy.view(m))
        if pair.distance <= 0:
            continue
        if m is Measure.CLOSENESS_DECENTRALITY and not (
            is_strongly_connected(pair.g) and is_strongly_connected(pair.h)
        ):
            continue
        out.append((m, stability_ratio(m, pair), stability_bound(m, pair.g)))
    return out


def verify_stability_bounds(
    sizes=(10, 20, 30, 40, 50, 60),
    trials: int = 42,
    seed: int = 0,
    measures=BOUNDED_MEASURES,
    noises=(TYPE1, TYPE2),
    jobs: int | None = 1,
) -> dict:
    """Check ``|C^G(x) - C^H(x)| <= K_G d(G, H)`` on random same-topology pairs.

    For every size, trial and noise model, ``G`` is a connected random
    network and ``H`` its perturbed copy. Returns ``{measure: BoundCheck}``.
    """
    measures = tuple(Measure(m) for m in measures)
    tasks = [(n, t, k, noise, seed, measures) for n in sizes for t in range(trials) for k, noise in enumerate(noises)]
    checks = {m: BoundCheck(m) for m in measures}
    for rows in _pool_map(_bound_task, tasks, jobs):
        for m, ratio, bound in rows:
            checks[m].record(ratio, bound)
    return checks


def real_network_sweep(
    views: dict,
    deltas: Sequence[float],
    trials: int,
    seed: int = 0,
    measures=FIVE_MEASURES,
    top_k: int = 5,
    conversion=ConversionRule.RECIPROCAL,
) -> dict:
    """Ranking robustness of a fixed network against perturbation magnitude.

    ``views`` maps weight kind to graph and must hold the graph the data was
    recorded in; the other view, if missing, is derived after every
    perturbation with ``conversion``. Every weight is perturbed (``p = 1``).
    Returns ``{(delta, measure): IndicatorReport}``.
    """
    views = {WeightKind(k): g for k, g in views.items()}
    if len(views) != 1:
        raise ValueError("pass exactly one recorded view; the other is derived")
    (kind, base), = views.items()
    measures = tuple(Measure(m) for m in measures)

    def both(g):
        return {kind: g, kind.flipped: convert_weights(g, conversion)}

    ref = both(base)
    rankings0 = {m: centrality_ranking(compute(ref[WeightKind(m.weight_kind)], m)) for m in measures}
    reports = {}
    for delta, graphs in magnitude_sweep(base, deltas, trials, seed):
        for m in measures:
            reports[(delta, m)] = IndicatorReport()
        for h in graphs:
            hv = both(h)
            for m in measures:
                r1 = centrality_ranking(compute(hv[WeightKind(m.weight_kind)], m))
                disp = rank_displacement(rankings0[m], r1)
                k = min(top_k, base.n)
                reports[(delta, m)].add(disp.max, disp.mean, top_k_retained(rankings0[m], r1, k))
    return reports
