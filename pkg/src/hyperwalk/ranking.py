"""Nearest-neighbor rankings and evaluation statistics."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    InvalidParams,
    MismatchedNodeSets,
    MissingLabel,
    MissingTags,
)
from .hypergraph import Hypergraph, expand_to_graph


@dataclass(frozen=True)
class RankedNeighbors:
    """Nodes ordered by ascending distance to ``target``.

    Ties are broken by ascending node id, so the order is deterministic.
    """

    target: int
    scenario: str
    entries: tuple[tuple[int, float], ...]

    def nodes(self) -> tuple[int, ...]:
        return tuple(n for n, _ in self.entries)


def rank_neighbors(result, top_n: int | None = None) -> RankedNeighbors:
    """Order all non-target nodes by hitting-time distance."""
    target = result.target
    pairs = sorted(
        ((float(result.times[s]), s) for s in range(result.times.size) if s != target)
    )
    if top_n is not None:
        pairs = pairs[:top_n]
    return RankedNeighbors(target, result.scenario,
                           tuple((s, d) for d, s in pairs))


def _average_ranks(values: np.ndarray) -> np.ndarray:
    """Ranks 1..n with tied values sharing their average rank."""
    order = np.argsort(values, kind="stable")
    sv = values[order]
    boundaries = np.flatnonzero(np.r_[True, sv[1:] != sv[:-1], True])
    ranks = np.empty(values.size)
    for g in range(boundaries.size - 1):
        lo, hi = boundaries[g], boundaries[g + 1]
        ranks[order[lo:hi]] = 0.5 * (lo + hi - 1) + 1.0
    return ranks


def spearman(rank_a: RankedNeighbors, rank_b: RankedNeighbors) -> float:
    """Spearman rank correlation of two rankings over the same node set.

    Tied distances receive average ranks. Returns NaN when either ranking
    is entirely tied (zero rank variance).
    """
    nodes_a = sorted(rank_a.nodes())
    nodes_b = sorted(rank_b.nodes())
    if nodes_a != nodes_b:
        raise MismatchedNodeSets("rankings cover different node sets")
    dist_a = dict(rank_a.entries)
    dist_b = dict(rank_b.entries)
    da = np.array([dist_a[n] for n in nodes_a])
    db = np.array([dist_b[n] for n in nodes_a])
    ra = _average_ranks(da)
    rb = _average_ranks(db)
    ra -= ra.mean()
    rb -= rb.mean()
    denom = np.sqrt((ra @ ra) * (rb @ rb))
    if denom == 0.0:
        return float("nan")
    return float((ra @ rb) / denom)


def _lookup(mapping, node):
    if isinstance(mapping, dict):
        return mapping.get(node)
    try:
        return mapping[node]
    except (IndexError, KeyError):
        return None


def label_agreement(ranked: RankedNeighbors, labels, k: int) -> float:
    """Fraction of the top-k neighbors sharing the target's label."""
    if k < 1:
        raise InvalidParams(f"k must be >= 1, got {k}")
    target_label = _lookup(labels, ranked.target)
    if target_label is None:
        raise MissingLabel(f"target node {ranked.target} has no label")
    top = ranked.entries[:k]
    if not top:
        return 0.0
    matches = sum(1 for n, _ in top if _lookup(labels, n) == target_label)
    return matches / len(top)


def jaccard_topk(ranked: RankedNeighbors, subjects, k: int) -> float:
    """Mean Jaccard similarity of the top-k neighbors' tag sets vs the target's."""
    if k < 1:
        raise InvalidParams(f"k must be >= 1, got {k}")
    target_tags = _lookup(subjects, ranked.target)
    if target_tags is None:
        raise MissingTags(f"target node {ranked.target} has no tags")
    target_tags = set(target_tags)
    top = ranked.entries[:k]
    if not top:
        return 0.0
    total = 0.0
    for n, _ in top:
        tags = _lookup(subjects, n)
        if tags is None:
            raise MissingTags(f"node {n} has no tags")
        tags = set(tags)
        union = target_tags | tags
        total += 1.0 if not union else len(target_tags & tags) / len(union)
    return total / len(top)


def degree_histogram(h: Hypergraph, which: str) -> list[tuple[float, int]]:
    """Exact (value, count) histogram of a degree or edge-weight population.

    ``which`` is one of ``node``, ``hyperedge``, ``expanded_edge_weight``.
    Values are rounded to 6 decimals before binning; pairs come back sorted
    by value, ready for log-log plotting elsewhere.
    """
    if which == "node":
        values = h.node_degree
    elif which == "hyperedge":
        values = h.hyperedge_degree
    elif which == "expanded_edge_weight":
        values = np.array([w for _i, _j, w in expand_to_graph(h)])
    else:
        raise InvalidParams(f"unknown histogram kind {which!r}")
    if values.size == 0:
        return []
    rounded = np.round(values, 6)
    uniq, counts = np.unique(rounded, return_counts=True)
    return [(float(v), int(c)) for v, c in zip(uniq, counts)]
