"""Seeded multiplicative edge-weight noise.

Random streams come from numpy's PCG64 generator seeded through
``numpy.random.SeedSequence(seed)``; ``seed`` may be an int or a sequence of
ints, which is how per-trial streams are derived from a master seed.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Sequence, Union

import numpy as np

from .graph import WeightedDigraph

__all__ = ["NoiseSpec", "TYPE1", "TYPE2", "make_rng", "perturb", "magnitude_sweep"]

Seed = Union[int, Sequence[int]]


def make_rng(seed: Seed) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed)))


@dataclass(frozen=True)
class NoiseSpec:
    """Each undirected edge is hit with probability ``p`` and then scaled by
    a factor drawn uniformly from ``[1 - delta, 1 + delta]``."""

    p: float
    delta: float
    seed: Seed = 0

    def __post_init__(self):
        if not 0.0 <= self.p <= 1.0:
            raise ValueError(f"p must lie in [0, 1], got {self.p!r}")
        if not 0.0 <= self.delta < 1.0:
            raise ValueError(f"delta must lie in [0, 1), got {self.delta!r}")

    def with_seed(self, seed: Seed) -> "NoiseSpec":
        return replace(self, seed=seed)


TYPE1 = NoiseSpec(p=1.0, delta=0.01)
TYPE2 = NoiseSpec(p=0.1, delta=0.1)


def _edge_units(g: WeightedDigraph) -> np.ndarray:
    """Label each directed edge with its undirected unit; units are numbered in sorted order."""
    lo = np.minimum(g.src, g.dst)
    hi = np.maximum(g.src, g.dst)
    keys = lo * max(g.n, 1) + hi
    _, unit = np.unique(keys, return_inverse=True)
    return unit.reshape(-1)


def perturb(g: WeightedDigraph, spec: NoiseSpec, rng: np.random.Generator | None = None) -> WeightedDigraph:
    """Same-topology copy of ``g`` with multiplicative noise.

    The two directions of an undirected edge share one draw, so symmetric
    graphs stay symmetric; an edge without a reverse is drawn on its own.
    Draws are taken in sorted edge order, two per unit (selection, factor),
    so the result depends only on the graph, ``p``, ``delta`` and the seed.
    """
    if rng is None:
        rng = make_rng(spec.seed)
    unit = _edge_units(g)
    k = int(unit.max()) + 1 if len(unit) else 0
    hit = rng.random(k) < spec.p
    factor = rng.uniform(1.0 - spec.delta, 1.0 + spec.delta, k)
    mult = np.where(hit, factor, 1.0)
    return g.with_weights(g.weights * mult[unit])


def magnitude_sweep(g: WeightedDigraph, deltas, trials: int, seed: Seed = 0):
    """For every ``delta``, ``trials`` independent graphs with every edge perturbed (``p = 1``).

    Trial ``t`` of the ``i``-th delta uses the stream ``(seed, i, t)``.
    """
    base = [seed] if isinstance(seed, (int, np.integer)) else list(seed)
    out = []
    for i, delta in enumerate(deltas):
        graphs = [perturb(g, NoiseSpec(1.0, float(delta), tuple(base + [i, t]))) for t in range(trials)]
        out.append((float(delta), graphs))
    return out
