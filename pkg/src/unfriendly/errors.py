"""Exception hierarchy shared by every module of the package."""


class UnfriendlyError(Exception):
    """Base class for all package errors."""


class InputError(UnfriendlyError, ValueError):
    """Malformed or out-of-range input (bad vertex ids, bad files, bad blocks)."""


class FormatError(InputError):
    """A JSON document could not be parsed into the expected structure."""

    def __init__(self, message, location=None):
        self.location = location
        if location:
            message = f"{location}: {message}"
        super().__init__(message)


class ContractError(UnfriendlyError):
    """A documented precondition of an operation was violated by the caller."""


class CapacityError(UnfriendlyError):
    """An exact search would exceed its configured size cap."""


class UndeterminedError(UnfriendlyError):
    """A predicate cannot be decided because part of its input is uncolored."""


class EngineInvariantError(UnfriendlyError):
    """The stable-coloring engine broke one of its loop invariants."""


class EngineStall(UnfriendlyError):
    """The stable-coloring engine halted before covering every vertex."""

    def __init__(self, message, chain=None):
        self.chain = chain or []
        super().__init__(message)


class PresentationError(UnfriendlyError):
    """Unknown builtin family or an inconsistent presentation."""
