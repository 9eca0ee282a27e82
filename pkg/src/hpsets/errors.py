"""Exception hierarchy shared by every module of :mod:`hpsets`."""

from __future__ import annotations


class HPSetsError(Exception):
    """Base class for domain errors (CLI maps these to exit code 1)."""


class EmptyInput(HPSetsError):
    pass


class MixedDimension(HPSetsError):
    pass


class DegenerateFacet(HPSetsError):
    pass


class DuplicateFacet(HPSetsError):
    pass


class DimensionOutOfRange(HPSetsError):
    pass


class DimensionMismatch(HPSetsError):
    pass


class NotPseudomanifold(HPSetsError):
    pass


class NotOrientable(HPSetsError):
    """Raised when no coherent orientation exists.

    ``witness`` is a closed walk of facet indices along which sign
    propagation is inconsistent (first and last entries coincide).
    """

    def __init__(self, message: str, witness: tuple[int, ...] = ()):
        super().__init__(message)
        self.witness = witness


class NotClosed(HPSetsError):
    pass


class CellNotFound(HPSetsError):
    pass


class AnchorMissing(HPSetsError):
    pass


class InvalidRange(HPSetsError):
    pass


class SignedRequiresOrientation(HPSetsError):
    pass


class UnknownGenerator(HPSetsError):
    pass


class FileUnreadable(HPSetsError):
    pass


class ValidationFailed(HPSetsError):
    pass


class EmptyCorpus(HPSetsError):
    pass


class MalformedFile(HPSetsError):
    pass
