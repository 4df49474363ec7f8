"""Node distances on weighted hypergraphs via random-walk hitting times.

Build a :class:`Hypergraph`, derive a transition kernel for the simple or
frustrated walk scenario, and solve for expected hitting times to any
target; rankings, Monte Carlo validation, and path sampling sit on top.
"""

from ._backend import available_backends, backend_name, set_backend
from .errors import (
    AllCensored,
    DenseLimitExceeded,
    DimensionMismatch,
    Disconnected,
    DuplicateMembership,
    HyperwalkError,
    InternalConsistencyError,
    InvalidParams,
    IsolatedNode,
    MismatchedNodeSets,
    MissingLabel,
    MissingTags,
    NodeOutOfRange,
    NonPositiveWeight,
    NormalizationError,
    NotConverged,
    TargetIsWholeGraph,
)
from .hypergraph import (
    Hypergraph,
    build_hypergraph,
    connected_components,
    expand_to_graph,
    subhypergraph,
)
from .generators import planted_communities, preferential_attachment, random_connected
from .kernels import (
    TransitionKernel,
    affinity_matrix,
    frustrated_kernel,
    node_affinities,
    simple_kernel,
)
from .sparse import (
    SolveReport,
    SparseMatrix,
    matvec,
    solve_general,
    solve_spd,
    spectral_radius_estimate,
)
from .hitting import (
    HittingTimeDistribution,
    HittingTimeResult,
    TargetSystem,
    build_target_system,
    expected_hitting_times,
    find_adherents,
    generating_function_oracle,
    hitting_time_distribution,
    hitting_times_for_targets,
)
from .simulate import SimulationResult, WalkConfig, sample_paths, simulate_hitting_time
from .ranking import (
    RankedNeighbors,
    degree_histogram,
    jaccard_topk,
    label_agreement,
    rank_neighbors,
    spearman,
)

__version__ = "0.1.0"

__all__ = [
    "AllCensored", "DenseLimitExceeded", "DimensionMismatch", "Disconnected",
    "DuplicateMembership", "HyperwalkError", "Hypergraph",
    "HittingTimeDistribution", "HittingTimeResult", "InternalConsistencyError",
    "InvalidParams", "IsolatedNode", "MismatchedNodeSets", "MissingLabel",
    "MissingTags", "NodeOutOfRange", "NonPositiveWeight", "NormalizationError",
    "NotConverged", "RankedNeighbors", "SimulationResult", "SolveReport",
    "SparseMatrix", "TargetIsWholeGraph", "TargetSystem", "TransitionKernel",
    "WalkConfig", "affinity_matrix", "available_backends", "backend_name",
    "build_hypergraph", "build_target_system", "connected_components",
    "degree_histogram", "expand_to_graph", "expected_hitting_times",
    "find_adherents", "frustrated_kernel", "generating_function_oracle",
    "hitting_time_distribution", "hitting_times_for_targets", "jaccard_topk",
    "label_agreement", "matvec", "node_affinities", "planted_communities",
    "preferential_attachment", "random_connected", "rank_neighbors",
    "sample_paths", "set_backend", "simple_kernel", "simulate_hitting_time",
    "solve_general", "solve_spd", "spearman", "spectral_radius_estimate",
    "subhypergraph",
]
