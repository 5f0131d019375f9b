"""Exception types shared across the package."""


class RigidkitError(Exception):
    """Base class for every error raised by this package."""


class GraphError(RigidkitError):
    """Invalid graph input."""


class SelfLoopError(GraphError):
    pass


class DuplicateEdgeError(GraphError):
    pass


class DisconnectedError(GraphError):
    pass


class VertexOutOfRangeError(GraphError):
    pass


class EdgeNotInGraphError(GraphError):
    pass


class TooLargeError(GraphError):
    """Input exceeds the size limit of an exhaustive procedure."""


class InvalidMoveError(RigidkitError):
    """A graph move whose preconditions fail on the given graph."""


class NotTightError(RigidkitError):
    """The graph is not (k,l)-tight, so no construction sequence exists."""


class ReductionNotFoundError(RigidkitError):
    """No inverse-move sequence reaches a single vertex under the allowed
    move set (only possible when the move set has been restricted)."""


class UnsupportedNormError(RigidkitError):
    """Norm outside the supported family (e.g. the Euclidean q = 2)."""


class CoincidentEndpointsError(RigidkitError):
    """Two endpoints of an edge are placed at the same point."""


class DimensionMismatchError(RigidkitError):
    pass


class NotSignedPermutationError(RigidkitError):
    """The matrix is not a signed permutation of the coordinates."""


class NotWellPositionedError(RigidkitError):
    """Some edge vector has no unique maximizing facet."""

    def __init__(self, offending_edges, message=None):
        self.offending_edges = tuple(offending_edges)
        super().__init__(
            message or f"framework is not well-positioned; tied edges: {self.offending_edges}"
        )


class ColourSpansError(RigidkitError):
    """The requested colour class spans the vertex set, so no partition flex exists."""


class WitnessUnavailableError(RigidkitError):
    """The remaining facet directions span the whole space; the block
    construction cannot produce a kernel vector."""


class ParameterUnderflowError(RigidkitError):
    """Placement parameters were halved down to machine precision without
    satisfying the colour constraints."""

    def __init__(self, move_index, message=None):
        self.move_index = move_index
        super().__init__(message or f"parameter underflow while placing move {move_index}")


class ConstructionError(RigidkitError):
    """The placement constructor produced a framework violating its own
    postconditions (indicates an internal inconsistency)."""


class VerdictCrossCheckError(RigidkitError):
    """Numerical rank verdict disagrees with the combinatorial criteria."""
