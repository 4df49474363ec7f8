"""Row-stochastic transition kernels for simple and frustrated walks.

Both kernels share the same neighbor affinities: for nodes i != j,

    affinity(i, j) = sum over shared hyperedges of
                     (hyperedge degree - weight of i) * min(weight of i, weight of j)

and the out-strength of i is the sum of its affinities. A simple walk
moves with probability affinity/out-strength (zero diagonal). A frustrated
walk multiplies that proposal probability by the reverse-direction
acceptance probability, leaving the declined mass on the diagonal; its
off-diagonal part is symmetric by construction.
"""

from __future__ import annotations

import numpy as np

from .errors import InternalConsistencyError, IsolatedNode, NodeOutOfRange
from .hypergraph import Hypergraph, _incidence_size_groups
from .sparse import SparseMatrix

_DIAG_CLAMP = 1e-12


class TransitionKernel:
    """Transition matrix of one walk scenario plus its shared ingredients.

    ``matrix`` is V x V row-stochastic CSR; ``affinity`` holds the
    unnormalized neighbor weights (zero diagonal); ``out_strength`` their
    row sums. Immutable and shareable across workers.
    """

    __slots__ = ("scenario", "matrix", "affinity", "out_strength", "_cdf")

    def __init__(self, scenario, matrix, affinity, out_strength):
        self.scenario = scenario
        self.matrix = matrix
        self.affinity = affinity
        self.out_strength = out_strength
        self._cdf = None

    @property
    def node_count(self) -> int:
        return self.matrix.n

    def row_cdf(self):
        """Per-row inclusive cumulative sums of ``matrix.data`` (cached)."""
        if self._cdf is None:
            data = self.matrix.data
            if data.size == 0:
                self._cdf = np.zeros(0)
            else:
                c = np.cumsum(data)
                starts = self.matrix.indptr[:-1]
                row_base = np.where(starts > 0, c[starts - 1], 0.0)
                self._cdf = c - np.repeat(row_base, np.diff(self.matrix.indptr))
        return self._cdf


def node_affinities(h: Hypergraph, i: int) -> dict[int, float]:
    """Affinities of node ``i`` toward each neighbor, as a dict."""
    if not 0 <= i < h.node_count:
        raise NodeOutOfRange(f"node {i} outside 0..{h.node_count - 1}")
    acc: dict[int, float] = {}
    edge_ids, w_i = h.node_incidence(i)
    for alpha, wi in zip(edge_ids, w_i):
        factor = h.hyperedge_degree[alpha] - wi
        if factor <= 0.0:
            continue
        members, weights = h.hyperedge_incidence(alpha)
        for j, wj in zip(members, weights):
            if j != i:
                acc[int(j)] = acc.get(int(j), 0.0) + factor * min(wi, wj)
    return acc


def affinity_matrix(h: Hypergraph) -> tuple[SparseMatrix, np.ndarray]:
    """All pairwise affinities as CSR plus the out-strength vector."""
    v = h.node_count
    rows, cols, vals = [], [], []
    for members, weights, degree in _incidence_size_groups(h):
        k = members.shape[1]
        off = ~np.eye(k, dtype=bool)
        ii, jj = np.nonzero(off)
        factor = degree[:, None] - weights
        mins = np.minimum(weights[:, :, None], weights[:, None, :])
        contrib = factor[:, :, None] * mins
        rows.append(members[:, ii].ravel())
        cols.append(members[:, jj].ravel())
        vals.append(contrib[:, ii, jj].ravel())
    if rows:
        aff = SparseMatrix.from_coo(v, np.concatenate(rows),
                                    np.concatenate(cols), np.concatenate(vals))
    else:
        aff = SparseMatrix.from_coo(v, [], [], [])
    return aff, aff.row_sums()


def _require_positive_strength(d):
    zero = np.flatnonzero(d == 0.0)
    if zero.size:
        raise IsolatedNode(int(zero[0]))


def simple_kernel(h: Hypergraph, *, affinity=None) -> TransitionKernel:
    """Proposal-only walk: each affinity normalized by the out-strength."""
    aff, d = affinity if affinity is not None else affinity_matrix(h)
    _require_positive_strength(d)
    row_of = np.repeat(np.arange(aff.n, dtype=np.int64), np.diff(aff.indptr))
    matrix = SparseMatrix(aff.n, aff.indptr.copy(), aff.indices.copy(),
                          aff.data / d[row_of])
    return TransitionKernel("simple", matrix, aff, d)


def frustrated_kernel(h: Hypergraph, *, affinity=None) -> TransitionKernel:
    """Proposal times acceptance, with declined mass on the diagonal."""
    aff, d = affinity if affinity is not None else affinity_matrix(h)
    _require_positive_strength(d)
    v = aff.n
    row_of = np.repeat(np.arange(v, dtype=np.int64), np.diff(aff.indptr))
    # The affinity sparsity pattern is symmetric, so sorting entries by
    # (column, row) aligns each (i, j) slot with the value stored at (j, i).
    perm = np.lexsort((row_of, aff.indices))
    reverse_vals = aff.data[perm]
    off = (aff.data / d[row_of]) * (reverse_vals / d[aff.indices])

    declined = 1.0 - np.bincount(row_of, weights=off, minlength=v)
    too_negative = declined < -_DIAG_CLAMP
    if too_negative.any():
        i = int(np.flatnonzero(too_negative)[0])
        raise InternalConsistencyError(
            f"diagonal entry {declined[i]} at node {i} below clamp tolerance")
    declined[declined < 0.0] = 0.0
    with_diag = np.flatnonzero(declined > 0.0)

    matrix = SparseMatrix.from_coo(
        v,
        np.concatenate([row_of, with_diag]),
        np.concatenate([aff.indices, with_diag]),
        np.concatenate([off, declined[with_diag]]),
    )
    return TransitionKernel("frustrated", matrix, aff, d)
