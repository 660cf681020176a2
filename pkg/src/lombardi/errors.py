"""Exception hierarchy shared by all modules.

Two families matter to callers: ``DocumentError`` (bad input, CLI exit 1)
and ``RejectionError`` (well-formed input that provably has no drawing of
the requested kind, CLI exit 2). Everything else is a programming or
numerical failure.
"""


class LombardiError(Exception):
    """Base class for all package errors."""


# --- geometry kernel ---------------------------------------------------------

class GeometryError(LombardiError):
    pass


class CoincidentPoints(GeometryError):
    pass


class DegenerateArc(GeometryError):
    """The requested arc is a pair of collinear rays (not representable)."""


class DegenerateLocus(GeometryError):
    """The meeting locus collapses to the line through the two base points."""


class IdenticalCircles(GeometryError):
    pass


class InfiniteImage(GeometryError):
    """A Mobius image passes through the point at infinity."""


class PointOutsideWedge(GeometryError):
    pass


class BisectionFailed(GeometryError):
    """Root bracket invalid; indicates an upstream invariant breach."""


# --- documents ---------------------------------------------------------------

class DocumentError(LombardiError):
    pass


class ParseError(DocumentError):
    pass


class InvalidRotation(DocumentError):
    pass


class MultiEdge(DocumentError):
    pass


class MultiEdgeOnExpansion(DocumentError):
    pass


class TooManyInwardNeighbors(DocumentError):
    pass


# --- decomposition and layout ------------------------------------------------

class DecompositionError(LombardiError):
    pass


class OddDegree(DecompositionError):
    pass


class NotEvenRegular(DecompositionError):
    pass


class NotRegularBipartite(DecompositionError):
    pass


class RejectionError(LombardiError):
    """The input provably has no drawing of the requested kind."""

    @property
    def reason(self) -> str:
        return type(self).__name__


class NoPerfectMatching(RejectionError):
    pass


class NoHamiltonianOrEvenFactor(RejectionError):
    pass


class SearchBudgetExceeded(RejectionError):
    """Exact search hit its node budget before deciding either way."""


class CoincidentPlacement(RejectionError):
    """Both candidate positions of a degree-3 insertion collide.

    Carries the offending vertex and the two rejected candidate points.
    """

    def __init__(self, vertex, candidates, message=None):
        super().__init__(message or f"no collision-free position for vertex {vertex}")
        self.vertex = vertex
        self.candidates = candidates


class LayoutError(LombardiError):
    pass


class InfeasibleCase(LayoutError):
    pass


class InvalidPlan(LayoutError):
    pass


class PerturbationExhausted(LayoutError):
    pass


class NoClearPoint(LayoutError):
    pass


class NotTwoDegenerate(LayoutError):
    pass


class NotThreeDegenerate(LayoutError):
    pass


class RootFindingFailed(LayoutError):
    pass


class InconsistentThirdConstraint(LayoutError):
    pass
