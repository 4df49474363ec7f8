"""Stochastic walk simulation: hitting-time validation and path corpora.

Transitions are sampled from the kernel rows themselves, so a frustrated
walk's declined proposals show up as self-loops and each one counts as an
elapsed step — matching the convention under which an adherent's expected
hitting time is 1/p. Runs can be partitioned across worker threads; each
chunk gets its own stream derived from (seed, chunk index), and merging is
order-independent.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from . import _backend
from .errors import AllCensored, InvalidParams, NodeOutOfRange
from .kernels import TransitionKernel


@dataclass(frozen=True)
class WalkConfig:
    """Simulation settings; ``scenario`` (when set) must match the kernel."""

    runs: int
    seed: int = 0
    max_steps: int = 10_000_000
    scenario: str | None = None

    def __post_init__(self):
        if self.runs < 1:
            raise InvalidParams(f"runs must be >= 1, got {self.runs}")
        if self.max_steps < 1:
            raise InvalidParams(f"max_steps must be >= 1, got {self.max_steps}")


class SimulationResult(NamedTuple):
    mean: float
    stderr: float | None
    censored: int


def _check_kernel_scenario(kernel, config):
    if config.scenario is not None and config.scenario != kernel.scenario:
        raise InvalidParams(
            f"config scenario {config.scenario!r} does not match kernel "
            f"scenario {kernel.scenario!r}")


def _chunk_seeds(seed, chunks: int):
    return np.random.SeedSequence(seed).generate_state(chunks, dtype=np.uint64)


def simulate_hitting_time(kernel: TransitionKernel, source: int, target: int,
                          config: WalkConfig, *, workers: int = 1) -> SimulationResult:
    """Sample walks from ``source`` until they first reach ``target``.

    Returns the mean step count over runs that hit within ``max_steps``,
    its standard error (None for a single sample), and the number of
    censored runs. Raises :class:`AllCensored` when nothing hit.
    """
    _check_kernel_scenario(kernel, config)
    v = kernel.node_count
    if not 0 <= source < v or not 0 <= target < v:
        raise NodeOutOfRange(f"source {source} / target {target} outside 0..{v - 1}")
    if source == target:
        raise InvalidParams("source must differ from target")

    m = kernel.matrix
    cdf = kernel.row_cdf()
    ops = _backend.get_ops()
    workers = max(1, int(workers))
    chunks = min(workers, config.runs)
    sizes = np.full(chunks, config.runs // chunks, dtype=np.int64)
    sizes[:config.runs % chunks] += 1
    seeds = _chunk_seeds(config.seed, chunks)

    def run_chunk(i):
        return ops.walk_hits(m.indptr, m.indices, cdf, source, target,
                             int(sizes[i]), config.max_steps, int(seeds[i]))

    if chunks == 1:
        parts = [run_chunk(0)]
    else:
        with ThreadPoolExecutor(max_workers=chunks) as pool:
            parts = list(pool.map(run_chunk, range(chunks)))
    steps = np.concatenate(parts)
    hits = steps[steps > 0]
    censored = int(config.runs - hits.size)
    if hits.size == 0:
        raise AllCensored(f"no run reached node {target} within {config.max_steps} steps")
    mean = float(hits.mean())
    stderr = float(hits.std(ddof=1) / np.sqrt(hits.size)) if hits.size >= 2 else None
    return SimulationResult(mean, stderr, censored)


def sample_paths(kernel: TransitionKernel, steps_per_node: int, seed: int) -> np.ndarray:
    """One sampled path per node, each with ``steps_per_node`` transitions.

    Returns an int64 array of shape (node count, steps_per_node + 1) whose
    row i is the path started at node i. Deterministic for a fixed seed.
    """
    if steps_per_node < 1:
        raise InvalidParams(f"steps_per_node must be >= 1, got {steps_per_node}")
    m = kernel.matrix
    cdf = kernel.row_cdf()
    starts = np.arange(kernel.node_count, dtype=np.int64)
    seed64 = int(_chunk_seeds(seed, 1)[0])
    return _backend.get_ops().walk_paths(m.indptr, m.indices, cdf, starts,
                                         int(steps_per_node), seed64)
