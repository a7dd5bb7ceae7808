"""Centrality rankings and the displacement statistics between two rankings."""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .centrality import CentralityVector, Orientation
from .exceptions import UniverseMismatchError

__all__ = ["Ranking", "Displacement", "centrality_ranking", "rank_displacement", "top_k_retained"]


@dataclass(frozen=True)
class Ranking:
    """Node ids from most to least central; ``rank_of[x]`` is the 1-based rank of ``x``."""

    order: np.ndarray

    def __post_init__(self):
        order = np.asarray(self.order, dtype=np.int64)
        if not np.array_equal(np.sort(order), np.arange(len(order))):
            raise ValueError("order must be a permutation of 0..n-1")
        order.setflags(write=False)
        object.__setattr__(self, "order", order)

    @property
    def rank_of(self) -> np.ndarray:
        ranks = np.empty(len(self.order), dtype=np.int64)
        ranks[self.order] = np.arange(1, len(self.order) + 1)
        return ranks

    def __len__(self):
        return len(self.order)


class Displacement(NamedTuple):
    per_node: np.ndarray
    max: int
    mean: float


def centrality_ranking(cv: CentralityVector) -> Ranking:
    """Sort most-central first; ties go to the smaller node id."""
    values = np.asarray(cv.values)
    ids = np.arange(len(values))
    key = values if cv.orientation is Orientation.LOWER_IS_CENTRAL else -values
    return Ranking(np.lexsort((ids, key)))


def rank_displacement(a: Ranking, b: Ranking) -> Displacement:
    """Per-node ``|rank_a(x) - rank_b(x)|`` with its max and mean over nodes."""
    if len(a) != len(b):
        raise UniverseMismatchError(f"rankings cover {len(a)} and {len(b)} nodes")
    per_node = np.abs(a.rank_of - b.rank_of)
    if len(per_node) == 0:
        return Displacement(per_node, 0, 0.0)
    return Displacement(per_node, int(per_node.max()), float(per_node.mean()))


def top_k_retained(a: Ranking, b: Ranking, k: int) -> bool:
    """True iff the first ``k`` positions hold the same nodes in the same order."""
    if k > len(a) or k > len(b):
        raise ValueError(f"k={k} exceeds the number of ranked nodes")
    return bool(np.array_equal(a.order[:k], b.order[:k]))
