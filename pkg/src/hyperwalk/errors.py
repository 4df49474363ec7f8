"""Exception types raised across the package."""


class HyperwalkError(Exception):
    """Base class for all package-specific errors."""


class NonPositiveWeight(HyperwalkError, ValueError):
    """An incidence weight is zero or negative."""


class DuplicateMembership(HyperwalkError, ValueError):
    """A node appears more than once in the same hyperedge."""


class InvalidParams(HyperwalkError, ValueError):
    """Configuration or generator parameters are out of range."""


class NodeOutOfRange(HyperwalkError, IndexError):
    """A node index is negative or >= the node count."""


class IsolatedNode(HyperwalkError, ValueError):
    """A node has no neighbors, so no transition row can be normalized."""

    def __init__(self, node):
        self.node = node
        super().__init__(f"node {node} has no neighbors (out-strength 0)")


class DimensionMismatch(HyperwalkError, ValueError):
    """Vector or matrix dimensions are incompatible."""


class NotConverged(HyperwalkError, RuntimeError):
    """Iterative solver failed to reach the requested tolerance.

    Carries the final ``report`` and the best ``solution`` found.
    """

    def __init__(self, report, solution=None):
        self.report = report
        self.solution = solution
        super().__init__(
            f"{report.method} did not converge: relative residual "
            f"{report.relative_residual:.3e} after {report.iterations} iterations"
        )


class TargetIsWholeGraph(HyperwalkError, ValueError):
    """Removing the target and its adherents leaves no nodes to solve for."""


class Disconnected(HyperwalkError, ValueError):
    """The target cannot be reached from every node."""


class DenseLimitExceeded(HyperwalkError, ValueError):
    """System too large for the dense generating-function evaluation."""


class NormalizationError(HyperwalkError, ValueError):
    """Total hitting probability deviates from one beyond tolerance."""


class AllCensored(HyperwalkError, RuntimeError):
    """No simulated walk reached the target within the step cap."""


class MismatchedNodeSets(HyperwalkError, ValueError):
    """Two rankings cover different node sets and cannot be correlated."""


class MissingLabel(HyperwalkError, KeyError):
    """The target node has no label."""


class MissingTags(HyperwalkError, KeyError):
    """A node has no tag set."""


class InternalConsistencyError(HyperwalkError, RuntimeError):
    """A quantity violated a bound that should hold mathematically."""
