"""Exception hierarchy shared by all quiverstab modules.

Every error raised for a violated contract derives from :class:`DomainError`,
so callers (and the CLI) can distinguish domain problems from bugs.
"""


class DomainError(Exception):
    """Base class for all contract violations raised by this package."""


class InvalidRank(DomainError):
    pass


class MismatchedRootSystem(DomainError):
    pass


class RoundingFailure(DomainError):
    pass


class NoIsomorphism(DomainError):
    pass


class ShapeMismatch(DomainError):
    pass


class NonFreeOrbit(DomainError):
    pass


class DuplicateOrbit(DomainError):
    pass


class UnsupportedType(DomainError):
    pass


class UnsupportedField(DomainError):
    pass


class MultipleFramings(DomainError):
    pass


class EmptyInput(DomainError):
    pass


class IndexMismatch(DomainError):
    pass


class ContextMismatch(DomainError):
    pass


class BadSubset(DomainError):
    pass


class DegeneratePlane(DomainError):
    pass


class LatticeTooLarge(DomainError):
    pass


class NoFraming(DomainError):
    pass


class NotAModule(DomainError):
    pass
