"""Command-line interface.

Subcommands: ``distances``, ``neighbors``, ``simulate``, ``stats``,
``paths``. Exit codes: 0 success; 1 I/O or configuration errors; 2 solver
non-convergence or fully-censored simulations; 3 disconnected input
without ``--per-component``. Option precedence is command line over
``--config`` JSON file over built-in defaults.
"""

from __future__ import annotations

import argparse
import json
import os
import re
import sys
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import io as hio
from .errors import AllCensored, HyperwalkError, NotConverged
from .hypergraph import connected_components, subhypergraph
from .hitting import hitting_times_for_targets
from .kernels import affinity_matrix, frustrated_kernel, simple_kernel
from .ranking import degree_histogram, rank_neighbors
from .simulate import WalkConfig, sample_paths, simulate_hitting_time

_DEFAULTS = {
    "scenario": "frustrated",
    "output_dir": ".",
    "seed": 0,
    "workers": None,  # resolved from HYPERWALK_WORKERS, then 1
    "tol": 1e-10,
    "max_iter": None,
    "top_n": 10,
    "runs": 100_000,
    "max_steps": 10_000_000,
    "steps": 3200,
    "which": "all",
    "per_component": False,
    "jacobi": False,
    "dump_kernel": False,
    "labels": None,
    "source": None,
}


class CliError(Exception):
    def __init__(self, code: int, message: str):
        self.code = code
        super().__init__(message)


@dataclass
class RunConfig:
    """Validated settings for one command invocation."""

    command: str
    input: str
    scenario: str = "frustrated"
    targets: list[str] | None = None
    top_n: int = 10
    tol: float = 1e-10
    max_iter: int | None = None
    workers: int = 1
    seed: int = 0
    output_dir: str = "."
    per_component: bool = False
    jacobi: bool = False
    dump_kernel: bool = False
    runs: int = 100_000
    max_steps: int = 10_000_000
    steps: int = 3200
    which: str = "all"
    labels: str | None = None
    source: list[str] | None = None
    extras: dict = field(default_factory=dict)

    def scenarios(self) -> list[str]:
        return ["simple", "frustrated"] if self.scenario == "both" else [self.scenario]


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hyperwalk",
        description="Hypergraph node distances from random-walk hitting times.")
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("input", help="hyperedge-list file")
    common.add_argument("--config", help="JSON file with option defaults")
    common.add_argument("--output-dir", dest="output_dir",
                        help="directory for result files (default: .)")
    common.add_argument("--scenario", choices=["simple", "frustrated", "both"],
                        help="walk scenario (default: frustrated)")
    common.add_argument("--seed", type=int, help="RNG seed (default: 0)")
    common.add_argument("--workers", type=int,
                        help="worker threads (default: $HYPERWALK_WORKERS or 1)")
    common.add_argument("--tol", type=float,
                        help="solver relative-residual tolerance (default: 1e-10)")
    common.add_argument("--max-iter", dest="max_iter", type=int,
                        help="solver iteration cap (default: max(1000, 2n))")
    common.add_argument("--per-component", dest="per_component",
                        action=argparse.BooleanOptionalAction,
                        help="process each connected component separately")
    common.add_argument("--jacobi", action=argparse.BooleanOptionalAction,
                        help="enable the Jacobi preconditioner")
    common.add_argument("--dump-kernel", dest="dump_kernel",
                        action=argparse.BooleanOptionalAction,
                        help="write the transition matrix as a triplet file")

    p = sub.add_parser("distances", parents=[common],
                       help="expected hitting times to each target")
    p.add_argument("--target", nargs="+", required=True,
                   help="target node names, or 'all'")

    p = sub.add_parser("neighbors", parents=[common],
                       help="nearest neighbors of each target")
    p.add_argument("--target", nargs="+", required=True)
    p.add_argument("--top-n", dest="top_n", type=int,
                   help="ranking length (default: 10)")
    p.add_argument("--labels", help="optional name<TAB>label file")

    p = sub.add_parser("simulate", parents=[common],
                       help="Monte Carlo hitting-time estimates")
    p.add_argument("--target", nargs="+", required=True)
    p.add_argument("--source", nargs="+",
                   help="source names (default: all nodes in the target's component)")
    p.add_argument("--runs", type=int, help="walks per pair (default: 100000)")
    p.add_argument("--max-steps", dest="max_steps", type=int,
                   help="censoring cap per walk (default: 10^7)")

    p = sub.add_parser("stats", parents=[common],
                       help="degree and edge-weight histograms")
    p.add_argument("--which",
                   choices=["node", "hyperedge", "expanded_edge_weight", "all"],
                   help="which histogram to emit (default: all)")

    p = sub.add_parser("paths", parents=[common],
                       help="sample a random-walk path corpus")
    p.add_argument("--steps", type=int, help="steps per start node (default: 3200)")

    return parser


def _merge_config(args: argparse.Namespace) -> RunConfig:
    file_values = {}
    if getattr(args, "config", None):
        try:
            with open(args.config, encoding="utf-8") as fh:
                file_values = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise CliError(1, f"cannot read config file: {exc}")
        if not isinstance(file_values, dict):
            raise CliError(1, "config file must hold a JSON object")

    def pick(name):
        value = getattr(args, name, None)
        if value is not None:
            return value
        if name in file_values:
            return file_values[name]
        return _DEFAULTS.get(name)

    workers = pick("workers")
    if workers is None:
        workers = int(os.environ.get("HYPERWALK_WORKERS", "1") or 1)

    cfg = RunConfig(
        command=args.command,
        input=args.input,
        scenario=pick("scenario"),
        targets=list(getattr(args, "target", []) or []) or None,
        top_n=int(pick("top_n")),
        tol=float(pick("tol")),
        max_iter=pick("max_iter"),
        workers=int(workers),
        seed=int(pick("seed")),
        output_dir=str(pick("output_dir")),
        per_component=bool(pick("per_component")),
        jacobi=bool(pick("jacobi")),
        dump_kernel=bool(pick("dump_kernel")),
        runs=int(pick("runs")),
        max_steps=int(pick("max_steps")),
        steps=int(pick("steps")),
        which=str(pick("which")),
        labels=pick("labels"),
        source=list(getattr(args, "source", []) or []) or None,
    )
    if cfg.max_iter is not None:
        cfg.max_iter = int(cfg.max_iter)

    if not Path(cfg.input).exists():
        raise CliError(1, f"input path does not exist: {cfg.input}")
    if cfg.labels and not Path(cfg.labels).exists():
        raise CliError(1, f"labels path does not exist: {cfg.labels}")
    if cfg.tol <= 0:
        raise CliError(1, f"tol must be positive, got {cfg.tol}")
    if cfg.workers < 1:
        raise CliError(1, f"workers must be >= 1, got {cfg.workers}")
    if cfg.command == "paths" and cfg.steps < 1:
        raise CliError(1, f"steps must be >= 1, got {cfg.steps}")
    if cfg.command == "simulate" and (cfg.runs < 1 or cfg.max_steps < 1):
        raise CliError(1, "runs and max-steps must be >= 1")
    if cfg.command == "neighbors" and cfg.top_n < 1:
        raise CliError(1, f"top-n must be >= 1, got {cfg.top_n}")
    return cfg


def _safe(name: str) -> str:
    return re.sub(r"[^\w.-]+", "_", name)


def _load_dataset(cfg: RunConfig):
    try:
        return hio.load_hyperedge_list(cfg.input)
    except (OSError, UnicodeDecodeError, HyperwalkError) as exc:
        raise CliError(1, f"cannot load {cfg.input}: {exc}")


def _pieces(cfg: RunConfig, h, names):
    """Connected pieces as (hypergraph, local names, local id by name)."""
    components = connected_components(h)
    if len(components) <= 1:
        return [(h, names, {n: i for i, n in enumerate(names)})]
    if not cfg.per_component:
        raise CliError(3, f"input has {len(components)} connected components; "
                          "rerun with --per-component to process them separately")
    pieces = []
    for members in components:
        if len(members) < 2:
            print(f"warning: skipping single-node component {names[members[0]]!r}",
                  file=sys.stderr)
            continue
        sub, old_ids = subhypergraph(h, members)
        sub_names = [names[i] for i in old_ids]
        pieces.append((sub, sub_names, {n: i for i, n in enumerate(sub_names)}))
    if not pieces:
        raise CliError(1, "no component has at least 2 nodes")
    return pieces


def _kernels_for(cfg: RunConfig, h):
    shared = affinity_matrix(h)
    built = {}
    for scenario in cfg.scenarios():
        maker = frustrated_kernel if scenario == "frustrated" else simple_kernel
        built[scenario] = maker(h, affinity=shared)
    return built


def _resolve_targets(cfg: RunConfig, pieces):
    """Map requested names to (piece index, local id) pairs."""
    if cfg.targets == ["all"]:
        return [(pi, t) for pi, (sub, _names, _ids) in enumerate(pieces)
                for t in range(sub.node_count)]
    out = []
    for name in cfg.targets:
        hit = None
        for pi, (_sub, _names, local) in enumerate(pieces):
            if name in local:
                hit = (pi, local[name])
                break
        if hit is None:
            raise CliError(1, f"target {name!r} is not a usable node "
                              "(unknown, or in a skipped single-node component)")
        out.append(hit)
    return out


def _maybe_dump_kernels(cfg, kernels, outdir, suffix=""):
    if not cfg.dump_kernel:
        return
    for scenario, kernel in kernels.items():
        hio.write_kernel_triplets(outdir / f"kernel_{scenario}{suffix}.txt", kernel)


def _cmd_distances(cfg: RunConfig, rank_output: bool) -> int:
    h, names = _load_dataset(cfg)
    pieces = _pieces(cfg, h, names)
    wanted = _resolve_targets(cfg, pieces)
    outdir = Path(cfg.output_dir)
    outdir.mkdir(parents=True, exist_ok=True)
    label_of_name = None
    if rank_output and cfg.labels:
        by_id = hio.load_labels(cfg.labels, names)
        label_of_name = {names[i]: lab for i, lab in by_id.items()}
    for pi, (sub, sub_names, _local) in enumerate(pieces):
        local_targets = sorted(t for p, t in wanted if p == pi)
        if not local_targets:
            continue
        kernels = _kernels_for(cfg, sub)
        _maybe_dump_kernels(cfg, kernels, outdir, f"_comp{pi}" if len(pieces) > 1 else "")
        for scenario, kernel in kernels.items():
            try:
                results = hitting_times_for_targets(
                    kernel, local_targets, workers=cfg.workers, tol=cfg.tol,
                    max_iter=cfg.max_iter, check_connected=False, jacobi=cfg.jacobi)
            except NotConverged as exc:
                raise CliError(2, str(exc))
            for result in results:
                tname = sub_names[result.target]
                if result.report is not None:
                    print(f"{scenario} target={tname}: "
                          f"{result.report.iterations} iterations, "
                          f"residual {result.report.relative_residual:.3e}",
                          file=sys.stderr)
                else:
                    print(f"{scenario} target={tname}: closed form (adherents only)",
                          file=sys.stderr)
                if rank_output:
                    ranked = rank_neighbors(result, top_n=cfg.top_n)
                    piece_labels = None
                    if label_of_name is not None:
                        piece_labels = {i: label_of_name[nm]
                                        for i, nm in enumerate(sub_names)
                                        if nm in label_of_name}
                    hio.write_ranking_csv(
                        outdir / f"neighbors_{scenario}_{_safe(tname)}.csv",
                        ranked, sub_names, piece_labels)
                else:
                    hio.write_hitting_times(
                        outdir / f"distances_{scenario}_{_safe(tname)}.tsv",
                        result, sub_names)
    return 0


def _cmd_simulate(cfg: RunConfig) -> int:
    h, names = _load_dataset(cfg)
    pieces = _pieces(cfg, h, names)
    wanted = _resolve_targets(cfg, pieces)
    outdir = Path(cfg.output_dir)
    outdir.mkdir(parents=True, exist_ok=True)
    rows_by_scenario = {s: [] for s in cfg.scenarios()}
    for pi, (sub, sub_names, local) in enumerate(pieces):
        local_targets = [t for p, t in wanted if p == pi]
        if not local_targets:
            continue
        kernels = _kernels_for(cfg, sub)
        _maybe_dump_kernels(cfg, kernels, outdir, f"_comp{pi}" if len(pieces) > 1 else "")
        for scenario, kernel in kernels.items():
            for t in local_targets:
                if cfg.source is None:
                    sources = [s for s in range(sub.node_count) if s != t]
                else:
                    sources = []
                    for name in cfg.source:
                        if name not in local:
                            raise CliError(1, f"source {name!r} is not in the same "
                                              f"component as target {sub_names[t]!r}")
                        if local[name] != t:
                            sources.append(local[name])
                config = WalkConfig(runs=cfg.runs, seed=cfg.seed,
                                    max_steps=cfg.max_steps, scenario=scenario)
                for s in sources:
                    try:
                        sim = simulate_hitting_time(kernel, s, t, config,
                                                    workers=cfg.workers)
                    except AllCensored as exc:
                        raise CliError(2, str(exc))
                    rows_by_scenario[scenario].append(
                        (sub_names[s], sub_names[t], scenario, cfg.runs,
                         sim.mean, sim.stderr, sim.censored))
                    se = "n/a" if sim.stderr is None else f"{sim.stderr:.4g}"
                    print(f"{scenario} {sub_names[s]}->{sub_names[t]}: "
                          f"mean {sim.mean:.6g} +- {se}, censored {sim.censored}",
                          file=sys.stderr)
    for scenario, rows in rows_by_scenario.items():
        hio.write_simulation_csv(outdir / f"simulate_{scenario}.csv", rows)
    return 0


def _cmd_stats(cfg: RunConfig) -> int:
    h, _names = _load_dataset(cfg)
    outdir = Path(cfg.output_dir)
    outdir.mkdir(parents=True, exist_ok=True)
    kinds = (["node", "hyperedge", "expanded_edge_weight"]
             if cfg.which == "all" else [cfg.which])
    for kind in kinds:
        hio.write_histogram_csv(outdir / f"stats_{kind}_degree.csv"
                                if kind != "expanded_edge_weight"
                                else outdir / "stats_expanded_edge_weight.csv",
                                degree_histogram(h, kind))
    return 0


def _cmd_paths(cfg: RunConfig) -> int:
    h, names = _load_dataset(cfg)
    pieces = _pieces(cfg, h, names)
    outdir = Path(cfg.output_dir)
    outdir.mkdir(parents=True, exist_ok=True)
    for scenario in cfg.scenarios():
        lines = []
        for pi, (sub, sub_names, _local) in enumerate(pieces):
            kernels = _kernels_for(cfg, sub)
            _maybe_dump_kernels(cfg, {scenario: kernels[scenario]}, outdir,
                                f"_comp{pi}" if len(pieces) > 1 else "")
            paths = sample_paths(kernels[scenario], cfg.steps, cfg.seed)
            for row in paths:
                lines.append(" ".join(sub_names[n] for n in row))
        with open(outdir / f"paths_{scenario}.txt", "w", encoding="utf-8") as fh:
            fh.write("\n".join(lines) + ("\n" if lines else ""))
    return 0


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 1 if exc.code not in (0, None) else 0
    try:
        cfg = _merge_config(args)
        if cfg.command == "distances":
            return _cmd_distances(cfg, rank_output=False)
        if cfg.command == "neighbors":
            return _cmd_distances(cfg, rank_output=True)
        if cfg.command == "simulate":
            return _cmd_simulate(cfg)
        if cfg.command == "stats":
            return _cmd_stats(cfg)
        if cfg.command == "paths":
            return _cmd_paths(cfg)
        raise CliError(1, f"unknown command {cfg.command!r}")
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except NotConverged as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except HyperwalkError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def main_entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    main_entry()
