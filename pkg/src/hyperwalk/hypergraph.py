"""Weighted hypergraph container, connectivity, and clique expansion.

A hypergraph is stored as two CSR-style incidence views (node -> hyperedge
and its exact transpose) plus cached node and hyperedge degrees. Instances
are immutable after construction and safe to share across workers.
"""

from __future__ import annotations

from collections import deque

import numpy as np

from .errors import (
    DuplicateMembership,
    InvalidParams,
    NodeOutOfRange,
    NonPositiveWeight,
)


class Hypergraph:
    """Immutable weighted incidence structure.

    ``node_degree[i]`` is the sum of node ``i``'s membership weights over
    all hyperedges; ``hyperedge_degree[a]`` is the total weight of
    hyperedge ``a``'s members.
    """

    __slots__ = (
        "node_count", "hyperedge_count",
        "node_indptr", "node_edge_ids", "node_edge_weights",
        "edge_indptr", "edge_node_ids", "edge_node_weights",
        "node_degree", "hyperedge_degree", "node_labels",
    )

    def __init__(self, node_count, hyperedge_count,
                 node_indptr, node_edge_ids, node_edge_weights,
                 edge_indptr, edge_node_ids, edge_node_weights,
                 node_degree, hyperedge_degree, node_labels=None):
        self.node_count = int(node_count)
        self.hyperedge_count = int(hyperedge_count)
        self.node_indptr = node_indptr
        self.node_edge_ids = node_edge_ids
        self.node_edge_weights = node_edge_weights
        self.edge_indptr = edge_indptr
        self.edge_node_ids = edge_node_ids
        self.edge_node_weights = edge_node_weights
        self.node_degree = node_degree
        self.hyperedge_degree = hyperedge_degree
        self.node_labels = node_labels

    @property
    def incidence_count(self) -> int:
        """Number of stored (node, hyperedge) memberships."""
        return self.edge_node_ids.size

    def node_incidence(self, i):
        """(hyperedge ids, weights) of node ``i``, sorted by hyperedge id."""
        if not 0 <= i < self.node_count:
            raise NodeOutOfRange(f"node {i} outside 0..{self.node_count - 1}")
        a, b = self.node_indptr[i], self.node_indptr[i + 1]
        return self.node_edge_ids[a:b], self.node_edge_weights[a:b]

    def hyperedge_incidence(self, alpha):
        """(node ids, weights) of hyperedge ``alpha``, sorted by node id."""
        if not 0 <= alpha < self.hyperedge_count:
            raise NodeOutOfRange(f"hyperedge {alpha} outside 0..{self.hyperedge_count - 1}")
        a, b = self.edge_indptr[alpha], self.edge_indptr[alpha + 1]
        return self.edge_node_ids[a:b], self.edge_node_weights[a:b]

    def hyperedges(self):
        """Iterate hyperedges as lists of (node id, weight) pairs."""
        for alpha in range(self.hyperedge_count):
            nodes, weights = self.hyperedge_incidence(alpha)
            yield [(int(n), float(w)) for n, w in zip(nodes, weights)]

    @classmethod
    def from_incidence_arrays(cls, edge_indptr, nodes, weights,
                              num_nodes=None, labels=None):
        """Build from flat per-hyperedge membership arrays.

        ``edge_indptr`` delimits hyperedges inside ``nodes``/``weights``.
        Validates positivity, index range, and duplicate memberships.
        """
        edge_indptr = np.ascontiguousarray(edge_indptr, dtype=np.int64)
        nodes = np.ascontiguousarray(nodes, dtype=np.int64)
        weights = np.ascontiguousarray(weights, dtype=np.float64)
        m = edge_indptr.size - 1
        nnz = nodes.size
        if weights.size != nnz or edge_indptr[0] != 0 or edge_indptr[-1] != nnz:
            raise InvalidParams("inconsistent incidence array lengths")

        eids = np.repeat(np.arange(m, dtype=np.int64), np.diff(edge_indptr))
        bad = ~(weights > 0.0) | ~np.isfinite(weights)
        if bad.any():
            k = int(np.flatnonzero(bad)[0])
            raise NonPositiveWeight(
                f"weight {weights[k]} for node {nodes[k]} in hyperedge {eids[k]}")
        if nnz and nodes.min() < 0:
            raise NodeOutOfRange("negative node id")
        if num_nodes is None:
            v = int(nodes.max()) + 1 if nnz else 0
        else:
            v = int(num_nodes)
            if nnz and nodes.max() >= v:
                raise NodeOutOfRange(f"node {int(nodes.max())} outside 0..{v - 1}")

        order = np.lexsort((nodes, eids))
        nodes, weights = nodes[order], weights[order]
        dup = np.flatnonzero((np.diff(eids) == 0) & (np.diff(nodes) == 0))
        if dup.size:
            k = int(dup[0])
            raise DuplicateMembership(
                f"node {nodes[k]} appears twice in hyperedge {eids[k]}")

        torder = np.lexsort((eids, nodes))
        node_indptr = np.zeros(v + 1, dtype=np.int64)
        np.cumsum(np.bincount(nodes, minlength=v), out=node_indptr[1:])

        if labels is not None:
            labels = list(labels)
            if len(labels) != v:
                raise InvalidParams(f"{len(labels)} labels for {v} nodes")

        return cls(
            v, m,
            node_indptr, eids[torder], weights[torder],
            edge_indptr, nodes, weights,
            np.bincount(nodes, weights=weights, minlength=v),
            np.bincount(eids, weights=weights, minlength=m),
            labels,
        )


def build_hypergraph(edges, num_nodes=None, labels=None) -> Hypergraph:
    """Build a hypergraph from an iterable of hyperedges.

    Each hyperedge is an iterable of members; a member is either a node id
    or a ``(node id, weight)`` pair (weight defaults to 1). Node ids must
    be integers in ``0..num_nodes-1`` (``num_nodes`` inferred as max+1 when
    omitted).
    """
    sizes = []
    flat_nodes = []
    flat_weights = []
    for edge in edges:
        count = 0
        for item in edge:
            if isinstance(item, (tuple, list)):
                nid, w = item
            else:
                nid, w = item, 1.0
            flat_nodes.append(int(nid))
            flat_weights.append(float(w))
            count += 1
        sizes.append(count)
    indptr = np.zeros(len(sizes) + 1, dtype=np.int64)
    np.cumsum(np.asarray(sizes, dtype=np.int64), out=indptr[1:])
    return Hypergraph.from_incidence_arrays(
        indptr,
        np.asarray(flat_nodes, dtype=np.int64),
        np.asarray(flat_weights, dtype=np.float64),
        num_nodes=num_nodes, labels=labels,
    )


def connected_components(h: Hypergraph) -> list[list[int]]:
    """Partition the nodes into components of the node-hyperedge graph.

    Two nodes are in the same component iff they are joined by a path
    alternating nodes and hyperedges. Isolated nodes form singletons.
    Components are sorted by smallest member, members ascending.
    """
    seen_nodes = np.zeros(h.node_count, dtype=bool)
    seen_edges = np.zeros(h.hyperedge_count, dtype=bool)
    node_indptr, node_edges = h.node_indptr, h.node_edge_ids
    edge_indptr, edge_nodes = h.edge_indptr, h.edge_node_ids
    components = []
    for seed in range(h.node_count):
        if seen_nodes[seed]:
            continue
        seen_nodes[seed] = True
        members = [seed]
        queue = deque([seed])
        while queue:
            u = queue.popleft()
            for a in node_edges[node_indptr[u]:node_indptr[u + 1]]:
                if seen_edges[a]:
                    continue
                seen_edges[a] = True
                for w in edge_nodes[edge_indptr[a]:edge_indptr[a + 1]]:
                    if not seen_nodes[w]:
                        seen_nodes[w] = True
                        members.append(int(w))
                        queue.append(int(w))
        components.append(sorted(members))
    return components


def _incidence_size_groups(h: Hypergraph, max_block: int = 1 << 22):
    """Yield hyperedges grouped by size as (members, weights, degree) blocks.

    Blocks are chunked so that size * size * rows stays below ``max_block``,
    bounding the memory of pairwise expansions. Size-1 hyperedges are
    skipped (they produce no pairs).
    """
    sizes = np.diff(h.edge_indptr)
    for k in np.unique(sizes):
        k = int(k)
        if k < 2:
            continue
        idx = np.flatnonzero(sizes == k)
        step = max(1, max_block // (k * k))
        for s in range(0, idx.size, step):
            sel = idx[s:s + step]
            gather = h.edge_indptr[sel][:, None] + np.arange(k)
            yield (h.edge_node_ids[gather],
                   h.edge_node_weights[gather],
                   h.hyperedge_degree[sel])


def expand_to_graph(h: Hypergraph) -> list[tuple[int, int, float]]:
    """Clique-expand to weighted graph edges ``(i, j, weight)`` with i < j.

    The edge weight between co-occurring nodes is the sum over shared
    hyperedges of the smaller of the two membership weights.
    """
    rows, cols, vals = [], [], []
    for members, weights, _degree in _incidence_size_groups(h):
        k = members.shape[1]
        iu, ju = np.triu_indices(k, 1)
        a = members[:, iu].ravel()
        b = members[:, ju].ravel()
        m = np.minimum(weights[:, iu], weights[:, ju]).ravel()
        rows.append(np.minimum(a, b))
        cols.append(np.maximum(a, b))
        vals.append(m)
    if not rows:
        return []
    rows = np.concatenate(rows)
    cols = np.concatenate(cols)
    vals = np.concatenate(vals)
    key = rows * h.node_count + cols
    uniq, inv = np.unique(key, return_inverse=True)
    summed = np.bincount(inv, weights=vals, minlength=uniq.size)
    i = uniq // h.node_count
    j = uniq % h.node_count
    return [(int(a), int(b), float(w)) for a, b, w in zip(i, j, summed)]


def subhypergraph(h: Hypergraph, nodes) -> tuple[Hypergraph, np.ndarray]:
    """Restrict to ``nodes``: keep hyperedges fully contained in the set.

    Returns the reindexed hypergraph and the array mapping its new node
    ids back to the original ones. Used for per-component processing, where
    every hyperedge lies entirely inside one component.
    """
    keep = np.zeros(h.node_count, dtype=bool)
    keep[np.asarray(list(nodes), dtype=np.int64)] = True
    old_ids = np.flatnonzero(keep)
    new_of = np.full(h.node_count, -1, dtype=np.int64)
    new_of[old_ids] = np.arange(old_ids.size)

    sizes = np.diff(h.edge_indptr)
    member_kept = keep[h.edge_node_ids]
    kept_per_edge = np.bincount(
        np.repeat(np.arange(h.hyperedge_count), sizes),
        weights=member_kept, minlength=h.hyperedge_count)
    edge_keep = kept_per_edge == sizes
    mask = np.repeat(edge_keep, sizes)

    new_nodes = new_of[h.edge_node_ids[mask]]
    new_weights = h.edge_node_weights[mask]
    new_sizes = sizes[edge_keep]
    indptr = np.zeros(new_sizes.size + 1, dtype=np.int64)
    np.cumsum(new_sizes, out=indptr[1:])
    labels = None
    if h.node_labels is not None:
        labels = [h.node_labels[i] for i in old_ids]
    sub = Hypergraph.from_incidence_arrays(
        indptr, new_nodes, new_weights, num_nodes=old_ids.size, labels=labels)
    return sub, old_ids
