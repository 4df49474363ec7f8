"""Pure-NumPy implementations of the hot kernels.

Used when the compiled extension is unavailable or when the ``python``
backend is selected explicitly. Function signatures mirror ``_core``.
Walk sampling draws from numpy's PCG64 generator, so streams are
reproducible per seed but differ from the compiled backend's.
"""

from __future__ import annotations

import numpy as np


def csr_matvec(indptr, indices, data, x, out):
    """CSR matrix-vector product into ``out``."""
    n = indptr.shape[0] - 1
    if n == 0:
        return out
    prod = data * x[indices]
    if prod.size and np.all(indptr[1:] > indptr[:-1]):
        out[:] = np.add.reduceat(prod, indptr[:-1])
    else:
        # reduceat mishandles empty rows; fall back to cumsum differences
        c = np.concatenate(([0.0], np.cumsum(prod)))
        out[:] = c[indptr[1:]] - c[indptr[:-1]]
    return out


def _grouped_step(indptr, indices, cdf, cur, u):
    """One categorical transition per walker; -1 where a row is empty."""
    nxt = np.empty(cur.size, dtype=np.int64)
    order = np.argsort(cur, kind="stable")
    sorted_cur = cur[order]
    starts = np.flatnonzero(np.r_[True, sorted_cur[1:] != sorted_cur[:-1]])
    bounds = np.r_[starts, sorted_cur.size]
    for g in range(starts.size):
        node = sorted_cur[bounds[g]]
        idx = order[bounds[g]:bounds[g + 1]]
        a, b = indptr[node], indptr[node + 1]
        if a == b:
            nxt[idx] = -1
            continue
        row_cdf = cdf[a:b]
        p = np.searchsorted(row_cdf, u[idx] * row_cdf[-1], side="right")
        np.minimum(p, b - a - 1, out=p)
        nxt[idx] = indices[a + p]
    return nxt


def walk_hits(indptr, indices, cdf, start, target, runs, max_steps, seed):
    """Per-run step counts until ``target`` is first reached; -1 if censored."""
    rng = np.random.default_rng(np.uint64(seed))
    out = np.full(runs, -1, dtype=np.int64)
    pos = np.full(runs, start, dtype=np.int64)
    alive = np.arange(runs)
    for step in range(1, max_steps + 1):
        if alive.size == 0:
            break
        u = rng.random(alive.size)
        nxt = _grouped_step(indptr, indices, cdf, pos[alive], u)
        hit = nxt == target
        out[alive[hit]] = step
        keep = ~hit & (nxt >= 0)
        pos[alive[keep]] = nxt[keep]
        alive = alive[keep]
    return out


def walk_paths(indptr, indices, cdf, starts, steps, seed):
    """One sampled path of ``steps`` transitions per start node."""
    rng = np.random.default_rng(np.uint64(seed))
    starts = np.asarray(starts, dtype=np.int64)
    n = starts.size
    paths = np.empty((n, steps + 1), dtype=np.int64)
    paths[:, 0] = starts
    cur = starts.copy()
    for s in range(1, steps + 1):
        nxt = _grouped_step(indptr, indices, cdf, cur, rng.random(n))
        stuck = nxt < 0
        nxt[stuck] = cur[stuck]
        paths[:, s] = nxt
        cur = nxt
    return paths
