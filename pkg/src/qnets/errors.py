"""Exception hierarchy shared by all modules."""

from __future__ import annotations


class QnetsError(Exception):
    """Base class for all package errors."""


class DimensionMismatchError(QnetsError):
    """Operands live in projective spaces of different ambient dimension."""


class GeometryError(QnetsError):
    """A geometric precondition failed (non-collinear points, meet not a
    point, non-supplementary pair, ...)."""


class ProjectionUndefinedError(GeometryError):
    """Central projection applied to a point of the center."""


class UndefinedCrossRatioError(QnetsError):
    """Cross- or multi-ratio of the form 0/0."""


class InvariantError(QnetsError):
    """A Laplace invariant could not be computed (degenerate configuration
    or infinite value); carries the offending edge."""

    def __init__(self, message: str, edge=None):
        super().__init__(message)
        self.edge = edge


class RecurrenceSingularError(QnetsError):
    """The invariant recurrence hit a forbidden value (0 or 1); carries the
    offending site. This is the algebraic shadow of sequence termination."""

    def __init__(self, message: str, site=None):
        super().__init__(message)
        self.site = site


class ExistenceError(QnetsError):
    """A required iterated Laplace transform does not exist."""


class DegenerateIntersectionError(QnetsError):
    """The explicit transform intersection is not a single point; carries
    the intersection subspace and its projective dimension."""

    def __init__(self, message: str, subspace, dimension: int):
        super().__init__(message)
        self.subspace = subspace
        self.dimension = dimension


class GeneralPositionError(QnetsError):
    """Seeded rejection sampling exceeded its retry budget."""


class NotBSKoenigsError(QnetsError):
    """An alternating hyperplane pair does not exist for the given net."""


class ConstructionError(QnetsError):
    """A boundary-data construction step failed; carries the site."""

    def __init__(self, message: str, site=None):
        super().__init__(message)
        self.site = site


class NetFileError(QnetsError):
    """Malformed net file."""
