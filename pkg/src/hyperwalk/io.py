"""Dataset loading and result persistence.

Hyperedge-list format: one hyperedge per line of whitespace-separated
``name[:weight]`` tokens (weight defaults to 1); ``#`` starts a comment;
names are UTF-8. Label files carry ``name<TAB>label`` lines. Node names
are mapped to dense 0-based ids in order of first appearance.
"""

from __future__ import annotations

import numpy as np

from .errors import InvalidParams
from .hypergraph import Hypergraph, build_hypergraph


def _parse_member(token: str) -> tuple[str, float]:
    name, sep, tail = token.rpartition(":")
    if sep:
        try:
            return name, float(tail)
        except ValueError:
            pass
    return token, 1.0


def load_hyperedge_list(path) -> tuple[Hypergraph, list[str]]:
    """Read a hyperedge-list file; returns the hypergraph and node names."""
    ids: dict[str, int] = {}
    edges = []
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            members = []
            for token in line.split():
                name, weight = _parse_member(token)
                nid = ids.setdefault(name, len(ids))
                members.append((nid, weight))
            if not members:
                continue
            seen = {n for n, _ in members}
            if len(seen) != len(members):
                raise InvalidParams(f"{path}:{lineno}: repeated node in hyperedge")
            edges.append(members)
    names = list(ids)
    return build_hypergraph(edges, num_nodes=len(names)), names


def save_hyperedge_list(h: Hypergraph, names, path) -> None:
    """Write a hypergraph back in hyperedge-list format (unit weights omitted)."""
    with open(path, "w", encoding="utf-8") as fh:
        for edge in h.hyperedges():
            tokens = [names[n] if w == 1.0 else f"{names[n]}:{w:.12g}"
                      for n, w in edge]
            fh.write(" ".join(tokens) + "\n")


def load_labels(path, names) -> dict[int, str]:
    """Read ``name<TAB>label`` lines; names absent from the graph are skipped."""
    of_name = {name: i for i, name in enumerate(names)}
    labels: dict[int, str] = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.rstrip("\n")
            if not line.strip() or line.lstrip().startswith("#"):
                continue
            name, sep, label = line.partition("\t")
            if not sep:
                raise InvalidParams(f"{path}:{lineno}: expected name<TAB>label")
            nid = of_name.get(name)
            if nid is not None:
                labels[nid] = label
    return labels


def write_hitting_times(path, result, names) -> None:
    """Hitting-time table: header comments plus ``source<TAB>time`` rows."""
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(f"# target\t{names[result.target]}\n")
        fh.write(f"# scenario\t{result.scenario}\n")
        if result.report is not None:
            fh.write(f"# solver_iterations\t{result.report.iterations}\n")
            fh.write(f"# solver_residual\t{result.report.relative_residual:.6e}\n")
        for s in range(result.times.size):
            if s != result.target:
                fh.write(f"{names[s]}\t{result.times[s]:.12g}\n")


def write_ranking_csv(path, ranked, names, labels=None) -> None:
    """Ranking rows ``rank,node,distance`` (plus a label column if given)."""
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("rank,node,distance,label\n" if labels is not None
                 else "rank,node,distance\n")
        for rank, (node, dist) in enumerate(ranked.entries, 1):
            row = f"{rank},{names[node]},{dist:.12g}"
            if labels is not None:
                row += f",{labels.get(node, '')}"
            fh.write(row + "\n")


def write_histogram_csv(path, histogram) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("value,count\n")
        for value, count in histogram:
            fh.write(f"{value:.12g},{count}\n")


def write_simulation_csv(path, rows) -> None:
    """Rows of (source, target, scenario, runs, mean, stderr, censored)."""
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("source,target,scenario,runs,mean,stderr,censored\n")
        for source, target, scenario, runs, mean, stderr, censored in rows:
            se = "" if stderr is None else f"{stderr:.12g}"
            fh.write(f"{source},{target},{scenario},{runs},{mean:.12g},{se},{censored}\n")


def write_paths(path, paths: np.ndarray, names) -> None:
    """Path corpus: one whitespace-separated node-name sequence per line."""
    with open(path, "w", encoding="utf-8") as fh:
        for row in paths:
            fh.write(" ".join(names[n] for n in row) + "\n")


def write_kernel_triplets(path, kernel) -> None:
    """Sparse triplet dump of a kernel's transition matrix (1-based, text)."""
    m = kernel.matrix
    rows, cols, vals = m.triplets()
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(f"% transition matrix, scenario={kernel.scenario}\n")
        fh.write(f"{m.n} {m.n} {m.nnz}\n")
        for i, j, v in zip(rows, cols, vals):
            fh.write(f"{i + 1} {j + 1} {v:.17g}\n")
