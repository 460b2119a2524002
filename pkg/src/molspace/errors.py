"""Exception types shared across the package."""


class MolspaceError(Exception):
    """Base class for all library errors."""


class VertexNotFound(MolspaceError, KeyError):
    pass


class EdgeNotFound(MolspaceError, KeyError):
    pass


class InvalidArgument(MolspaceError, ValueError):
    pass


class BudgetExceeded(MolspaceError):
    """A configurable search/enumeration budget was exhausted."""


class IllegalMove(MolspaceError):
    """A transformation whose license subspace failed verification."""

    def __init__(self, message, license_members=None):
        super().__init__(message)
        self.license_members = license_members


class InvalidChain(MolspaceError, ValueError):
    pass


class DuplicateKirpich(MolspaceError, ValueError):
    pass


class InvalidGluing(MolspaceError, ValueError):
    pass


class InvalidBase(MolspaceError, ValueError):
    pass


class InvalidStencil(MolspaceError, ValueError):
    pass


class NeedsTwoLayers(MolspaceError, ValueError):
    pass


class NoConvergence(MolspaceError):
    def __init__(self, message, residual=None):
        super().__init__(message)
        self.residual = residual


class EmptyDigitization(MolspaceError):
    pass


class InternalInvariantViolation(MolspaceError):
    """A theorem-backed internal step failed; indicates a bug or bad input."""


class UnknownCatalogName(MolspaceError, KeyError):
    pass


class ParseError(MolspaceError, ValueError):
    pass
