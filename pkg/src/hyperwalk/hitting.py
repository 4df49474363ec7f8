"""Expected hitting times to a target node, as distances.

For a chosen target the transition matrix is restricted to the remaining
nodes (dropping the target's column and the adherent nodes, whose hitting
times have closed forms). The restriction is substochastic, so the system
(I - B) x = 1 has a unique solution: the expected number of steps from
each kept node to the target. The frustrated restriction is symmetric
positive definite and solved with conjugate gradient; the simple one is
nonsymmetric and solved with BiCGSTAB. A dense generating-function
evaluation of the same quantities serves as a small-instance oracle.
"""

from __future__ import annotations

import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .errors import (
    DenseLimitExceeded,
    Disconnected,
    NodeOutOfRange,
    NormalizationError,
    TargetIsWholeGraph,
)
from .kernels import TransitionKernel
from .sparse import SolveReport, SparseMatrix, solve_general, solve_spd

_NORMALIZATION_TOL = 1e-8


class _IdentityMinus:
    """Implicit ``I - B`` operator exposing the solver-facing interface."""

    __slots__ = ("b", "n")

    def __init__(self, b):
        self.b = b
        self.n = b.n

    def matvec(self, v, out=None):
        out = self.b.matvec(v, out=out)
        np.subtract(v, out, out=out)
        return out

    def diagonal(self):
        return 1.0 - self.b.diagonal()


@dataclass(frozen=True)
class TargetSystem:
    """Substochastic restriction of a kernel for one target node.

    ``kept_nodes[i]`` is the hypergraph node behind row i of ``b_matrix``;
    ``x1[i]`` is that node's one-step probability of hitting the target.
    """

    target: int
    scenario: str
    kept_nodes: np.ndarray
    adherents: list[tuple[int, float]]
    b_matrix: SparseMatrix
    x1: np.ndarray


@dataclass(frozen=True)
class HittingTimeResult:
    """Expected hitting times to ``target`` from every other node.

    ``times[s]`` is the expected step count from s (NaN at the target
    itself). ``report`` is None when produced by the dense oracle.
    """

    target: int
    scenario: str
    times: np.ndarray
    adherents: list[tuple[int, float]]
    report: SolveReport | None = field(default=None)

    def distance(self, s: int) -> float:
        return float(self.times[s])

    def as_dict(self) -> dict[int, float]:
        return {s: float(self.times[s]) for s in range(self.times.size) if s != self.target}


def find_adherents(kernel: TransitionKernel, target: int) -> list[tuple[int, float]]:
    """Nodes whose only neighbor is the target, with acceptance probability.

    For a frustrated walk the hitting time from such a node is geometric
    with success probability p = its one-step transition to the target;
    for a simple walk p = 1.
    """
    v = kernel.node_count
    if not 0 <= target < v:
        raise NodeOutOfRange(f"node {target} outside 0..{v - 1}")
    aff = kernel.affinity
    counts = np.diff(aff.indptr)
    single = np.flatnonzero(counts == 1)
    out = []
    for s in single:
        if s == target:
            continue
        if aff.indices[aff.indptr[s]] == target:
            p = kernel.matrix.get(int(s), target) if kernel.scenario == "frustrated" else 1.0
            out.append((int(s), float(p)))
    return out


def build_target_system(kernel: TransitionKernel, target: int,
                        adherents=None) -> TargetSystem:
    """Restrict the kernel to non-target, non-adherent nodes."""
    v = kernel.node_count
    if not 0 <= target < v:
        raise NodeOutOfRange(f"node {target} outside 0..{v - 1}")
    if adherents is None:
        adherents = find_adherents(kernel, target)
    keep = np.ones(v, dtype=bool)
    keep[target] = False
    for s, _p in adherents:
        keep[s] = False
    kept = np.flatnonzero(keep)
    if kept.size == 0:
        raise TargetIsWholeGraph(
            f"all nodes besides {target} adhere to it; hitting times are closed-form")
    new_of = np.full(v, -1, dtype=np.int64)
    new_of[kept] = np.arange(kept.size)

    t = kernel.matrix
    row_of = np.repeat(np.arange(v, dtype=np.int64), np.diff(t.indptr))
    inside = keep[row_of] & keep[t.indices]
    rows_b = new_of[row_of[inside]]
    nb = kept.size
    indptr_b = np.zeros(nb + 1, dtype=np.int64)
    np.cumsum(np.bincount(rows_b, minlength=nb), out=indptr_b[1:])
    # filtering preserves (row, column)-sorted order, so this is valid CSR
    b = SparseMatrix(nb, indptr_b, new_of[t.indices[inside]], t.data[inside])

    to_target = keep[row_of] & (t.indices == target)
    x1 = np.zeros(nb)
    x1[new_of[row_of[to_target]]] = t.data[to_target]
    return TargetSystem(int(target), kernel.scenario, kept, list(adherents), b, x1)


def _reachable_mask(kernel: TransitionKernel, target: int) -> np.ndarray:
    """Nodes connected to ``target`` in the kernel's adjacency."""
    t = kernel.matrix
    seen = np.zeros(kernel.node_count, dtype=bool)
    seen[target] = True
    frontier = np.asarray([target], dtype=np.int64)
    while frontier.size:
        chunks = [t.indices[t.indptr[u]:t.indptr[u + 1]] for u in frontier]
        neighbors = np.unique(np.concatenate(chunks)) if chunks else frontier[:0]
        frontier = neighbors[~seen[neighbors]]
        seen[frontier] = True
    return seen


def _merge_adherents(times, adherents, scenario):
    for s, p in adherents:
        times[s] = 1.0 / p if scenario == "frustrated" else 1.0


def expected_hitting_times(kernel: TransitionKernel, target: int, *,
                           tol: float = 1e-10, max_iter: int | None = None,
                           check_connected: bool = True,
                           jacobi: bool = False) -> HittingTimeResult:
    """Solve (I - B) x = 1 for the expected hitting times to ``target``.

    Adherent nodes get their closed-form values. ``check_connected`` runs a
    reachability sweep first and raises :class:`Disconnected` when some
    node cannot reach the target; skip it when connectivity was already
    verified. Raises :class:`NotConverged` (with the report attached) if
    the solver stalls.
    """
    v = kernel.node_count
    if check_connected:
        seen = _reachable_mask(kernel, target)
        if not seen.all():
            raise Disconnected(
                f"{int(v - seen.sum())} nodes cannot reach node {target}")
    adherents = find_adherents(kernel, target)
    times = np.full(v, np.nan)
    report = None
    try:
        system = build_target_system(kernel, target, adherents=adherents)
    except TargetIsWholeGraph:
        system = None
    if system is not None:
        operator = _IdentityMinus(system.b_matrix)
        ones = np.ones(system.b_matrix.n)
        if kernel.scenario == "frustrated":
            x, report = solve_spd(operator, ones, tol=tol, max_iter=max_iter, jacobi=jacobi)
        else:
            x, report = solve_general(operator, ones, tol=tol, max_iter=max_iter, jacobi=jacobi)
        times[system.kept_nodes] = x
    _merge_adherents(times, adherents, kernel.scenario)
    return HittingTimeResult(int(target), kernel.scenario, times, adherents, report)


def hitting_times_for_targets(kernel: TransitionKernel, targets, *,
                              workers: int = 1, tol: float = 1e-10,
                              max_iter: int | None = None,
                              check_connected: bool = True,
                              jacobi: bool = False) -> list[HittingTimeResult]:
    """Independent per-target solves over a shared kernel, optionally threaded."""
    targets = [int(t) for t in targets]
    if check_connected and targets:
        seen = _reachable_mask(kernel, targets[0])
        if not seen.all():
            raise Disconnected(
                f"{int(kernel.node_count - seen.sum())} nodes cannot reach node {targets[0]}")

    def solve_one(t):
        return expected_hitting_times(kernel, t, tol=tol, max_iter=max_iter,
                                      check_connected=False, jacobi=jacobi)

    if workers <= 1 or len(targets) <= 1:
        return [solve_one(t) for t in targets]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(solve_one, targets))


def generating_function_oracle(kernel: TransitionKernel, target: int, *,
                               dense_limit: int = 2000,
                               strict: bool = True) -> HittingTimeResult:
    """Dense evaluation of the hitting-time generating function.

    Solves the restricted system directly: first for the total hitting
    probabilities (which must all be 1; deviations beyond 1e-8 raise or
    warn depending on ``strict``), then for their first moments. Intended
    as an independent small-instance check of the sparse path.
    """
    v = kernel.node_count
    adherents = find_adherents(kernel, target)
    times = np.full(v, np.nan)
    try:
        system = build_target_system(kernel, target, adherents=adherents)
    except TargetIsWholeGraph:
        system = None
    if system is not None:
        nb = system.b_matrix.n
        if nb > dense_limit:
            raise DenseLimitExceeded(f"dimension {nb} above dense limit {dense_limit}")
        a = np.eye(nb) - system.b_matrix.to_dense()
        try:
            total_prob = np.linalg.solve(a, system.x1)
        except np.linalg.LinAlgError:
            raise Disconnected(
                f"restricted system for target {target} is singular; "
                "the target is unreachable from part of the graph") from None
        deviation = float(np.max(np.abs(total_prob - 1.0))) if nb else 0.0
        if deviation > _NORMALIZATION_TOL:
            message = (f"total hitting probability off by {deviation:.3e}; "
                       "target may be effectively unreachable")
            if strict:
                raise NormalizationError(message)
            warnings.warn(message)
        times[system.kept_nodes] = np.linalg.solve(a, total_prob)
    _merge_adherents(times, adherents, kernel.scenario)
    return HittingTimeResult(int(target), kernel.scenario, times, adherents, None)


@dataclass(frozen=True)
class HittingTimeDistribution:
    """P(hitting time = n) for n = 1..n_max, per starting node.

    ``table[s, n-1]`` is the probability of first reaching the target from
    node s in exactly n steps; the target's own row is all zeros.
    """

    target: int
    scenario: str
    n_max: int
    table: np.ndarray

    def prob(self, s: int, n: int) -> float:
        return float(self.table[s, n - 1])

    def partial_sum(self, s: int) -> float:
        return float(self.table[s].sum())

    def truncated_mean(self, s: int) -> float:
        return float(self.table[s] @ np.arange(1, self.n_max + 1))


def hitting_time_distribution(kernel: TransitionKernel, target: int,
                              n_max: int) -> HittingTimeDistribution:
    """Iterate the restricted kernel to tabulate hitting-time probabilities."""
    if n_max < 1:
        raise ValueError(f"n_max must be >= 1, got {n_max}")
    v = kernel.node_count
    adherents = find_adherents(kernel, target)
    table = np.zeros((v, n_max))
    try:
        system = build_target_system(kernel, target, adherents=adherents)
    except TargetIsWholeGraph:
        system = None
    if system is not None:
        x = system.x1.copy()
        table[system.kept_nodes, 0] = x
        for n in range(1, n_max):
            x = system.b_matrix.matvec(x)
            table[system.kept_nodes, n] = x
    steps = np.arange(n_max)
    for s, p in adherents:
        if kernel.scenario == "frustrated":
            table[s] = (1.0 - p) ** steps * p
        else:
            table[s, 0] = 1.0
    return HittingTimeDistribution(int(target), kernel.scenario, int(n_max), table)
