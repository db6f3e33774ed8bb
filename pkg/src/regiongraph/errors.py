"""Exception hierarchy shared by every module."""


class RegionGraphError(Exception):
    """Base class for all library errors."""


class InputError(RegionGraphError, ValueError):
    """Malformed digraph, arrangement, path, code or parameter."""


class NotApplicable(RegionGraphError):
    """The operation's structural precondition does not hold for this arrangement."""


class NotMAcyclic(RegionGraphError):
    """The operation needs an m-acyclic digraph and got one with an m-ascending cycle."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class SizeLimitError(RegionGraphError):
    """Exact computation refused above its size guard."""


class BudgetExceeded(RegionGraphError):
    """Enumeration visited more candidate nodes than its budget allows."""


class InternalVerificationError(RegionGraphError, AssertionError):
    """A self-check that must never fail did fail; always a bug."""


class MalformedCode(InputError):
    """A colored Pruefer code references an unavailable parent."""
