"""Synthetic hypergraph generators for benchmarks and tests."""

from __future__ import annotations

import numpy as np

from .errors import InvalidParams
from .hypergraph import Hypergraph, build_hypergraph


def preferential_attachment(nodes: int, seed: int, *, min_size: int = 2,
                            max_size: int = 5, weight_tail: float = 0.35) -> Hypergraph:
    """Grow a heavy-tailed hypergraph by degree-proportional attachment.

    Each new hyperedge joins one fresh node to existing nodes drawn with
    probability proportional to their current degree; membership weights
    are integers drawn from a geometric tail (mean ``1/weight_tail``).
    Deterministic for a fixed seed.
    """
    if nodes < 2:
        raise InvalidParams("need at least 2 nodes")
    if min_size < 2 or max_size < min_size:
        raise InvalidParams(f"bad hyperedge size range [{min_size}, {max_size}]")
    if not 0.0 < weight_tail <= 1.0:
        raise InvalidParams(f"weight_tail must be in (0, 1], got {weight_tail}")

    rng = np.random.default_rng(seed)

    # One pool entry per unit of degree: uniform draws are degree-proportional.
    pool = np.empty(max(4 * nodes, 64), dtype=np.int64)
    pool_size = 0

    def pool_add(ids, weights):
        nonlocal pool, pool_size
        rep = np.repeat(ids, weights)
        while pool_size + rep.size > pool.size:
            pool = np.resize(pool, 2 * pool.size)
        pool[pool_size:pool_size + rep.size] = rep
        pool_size += rep.size

    edge_nodes = []
    edge_weights = []
    sizes = []

    def add_edge(ids):
        ids = np.asarray(ids, dtype=np.int64)
        w = rng.geometric(weight_tail, size=ids.size)
        edge_nodes.append(ids)
        edge_weights.append(w)
        sizes.append(ids.size)
        pool_add(ids, w)

    add_edge([0, 1])
    next_node = 2
    while next_node < nodes:
        k = int(rng.integers(min_size, max_size + 1))
        want = min(k - 1, next_node)
        chosen = {next_node}
        for _ in range(64):
            draws = pool[rng.integers(0, pool_size, size=want)]
            for d in draws:
                if len(chosen) > want:
                    break
                chosen.add(int(d))
            if len(chosen) > want:
                break
        members = sorted(chosen)
        if len(members) < 2:
            members.append(next_node - 1)
        add_edge(members)
        next_node += 1

    indptr = np.zeros(len(sizes) + 1, dtype=np.int64)
    np.cumsum(np.asarray(sizes, dtype=np.int64), out=indptr[1:])
    return Hypergraph.from_incidence_arrays(
        indptr,
        np.concatenate(edge_nodes),
        np.concatenate(edge_weights).astype(np.float64),
        num_nodes=nodes,
    )


def planted_communities(n_communities: int = 20, community_size: int = 30,
                        edges_per_community: int = 60, cross_fraction: float = 0.02,
                        seed: int = 0, min_size: int = 2, max_size: int = 5) -> Hypergraph:
    """Labeled community hypergraph with a small cross-community fraction.

    Nodes carry their community index as label. Communities are chained
    into a ring by two-node cross hyperedges (counted inside the cross
    budget) so the result is connected.
    """
    if n_communities < 2 or community_size < 2:
        raise InvalidParams("need at least 2 communities of at least 2 nodes")
    if not 0.0 <= cross_fraction < 1.0:
        raise InvalidParams("cross_fraction must be in [0, 1)")
    rng = np.random.default_rng(seed)
    v = n_communities * community_size
    members_of = [np.arange(c * community_size, (c + 1) * community_size)
                  for c in range(n_communities)]

    if edges_per_community < community_size - 1:
        raise InvalidParams("need at least community_size - 1 edges per community")

    edges = []
    for c in range(n_communities):
        # a pair chain first, so every node is covered and each community
        # is internally connected; the rest are random multi-node edges
        chain = rng.permutation(members_of[c])
        for i in range(community_size - 1):
            edges.append([(int(chain[i]), 1.0), (int(chain[i + 1]), 1.0)])
        for _ in range(edges_per_community - (community_size - 1)):
            k = int(rng.integers(min_size, min(max_size, community_size) + 1))
            picks = rng.choice(members_of[c], size=k, replace=False)
            edges.append([(int(p), 1.0) for p in picks])

    within = len(edges)
    cross_total = max(n_communities,
                      int(round(cross_fraction * within / (1.0 - cross_fraction))))
    for c in range(n_communities):
        a = int(rng.choice(members_of[c]))
        b = int(rng.choice(members_of[(c + 1) % n_communities]))
        edges.append([(a, 1.0), (b, 1.0)])
    for _ in range(cross_total - n_communities):
        ca, cb = rng.choice(n_communities, size=2, replace=False)
        a = int(rng.choice(members_of[ca]))
        b = int(rng.choice(members_of[cb]))
        edges.append([(a, 1.0), (b, 1.0)])

    labels = [str(i // community_size) for i in range(v)]
    return build_hypergraph(edges, num_nodes=v, labels=labels)


def random_connected(seed, max_nodes: int = 60, *, weighted: bool = True) -> Hypergraph:
    """Random connected hypergraph with 2..max_nodes nodes.

    A chain of overlapping hyperedges over a node permutation guarantees
    connectivity; extra random hyperedges are layered on top. ``seed`` may
    be an integer or a numpy Generator (useful inside sampling loops).
    """
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    if max_nodes < 2:
        raise InvalidParams("need room for at least 2 nodes")
    v = int(rng.integers(2, max_nodes + 1))
    perm = rng.permutation(v)

    edges = []
    i = 0
    while i < v - 1:
        k = int(rng.integers(2, 6))
        seg = perm[i:i + k]
        if seg.size < 2:
            seg = perm[i - 1:i + 1]
        edges.append(seg.tolist())
        i += max(1, seg.size - 1)

    for _ in range(int(rng.integers(0, v + 1))):
        k = int(rng.integers(2, min(5, v) + 1))
        edges.append(rng.choice(v, size=k, replace=False).tolist())

    if weighted:
        edges = [[(n, round(float(rng.uniform(0.5, 3.0)), 3)) for n in e] for e in edges]
    return build_hypergraph(edges, num_nodes=v)
