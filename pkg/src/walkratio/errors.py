"""Exception hierarchy shared across the toolkit."""


class WalkratioError(Exception):
    """Base class for all toolkit errors."""


class GraphConstructionError(WalkratioError, ValueError):
    """Invalid graph construction input."""


class LoopEdgeError(GraphConstructionError):
    """An edge (v, v) was supplied; loops are not representable."""


class DuplicateEdgeError(GraphConstructionError):
    """The same directed edge was supplied twice."""


class VertexRangeError(GraphConstructionError):
    """A vertex index lies outside [0, n)."""


class EdgeListFormatError(WalkratioError, ValueError):
    """Malformed edge list text (bad line or inconsistent header)."""


class NotStronglyConnectedError(WalkratioError):
    """Operation requires a strongly connected graph."""


class SinkVertexError(WalkratioError):
    """A vertex has no out-edges, so the walk is undefined there."""


class PeriodicGraphError(WalkratioError):
    """Operation requires an aperiodic graph."""


class ConvergenceError(WalkratioError):
    """Iterative solver failed to reach the requested tolerance.

    Carries the last residual seen so callers can report it.
    """

    def __init__(self, message: str, residual: float):
        super().__init__(message)
        self.residual = residual


class StationarityError(WalkratioError):
    """A vector claimed to be stationary does not satisfy phi P = phi."""


class CirculationDomainError(WalkratioError, ValueError):
    """A flow is not defined on exactly the edge set of the graph."""


class DistributionError(WalkratioError, ValueError):
    """A distribution violates positivity or normalization."""


class NoLabeledPathError(WalkratioError):
    """No Hamiltonian shortest path of length n-1 exists in the graph."""


class NotInFamilyError(WalkratioError):
    """Graph does not admit the requested edge transformation."""


class CertificateParamError(WalkratioError, ValueError):
    """Certificate parameters violate their constraints (e.g. a <= 5*eps)."""


class EnumerationGuardError(WalkratioError, ValueError):
    """Requested enumeration size exceeds the desk-scale guard."""
