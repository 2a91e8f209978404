"""Exception types shared across the package."""


class TopologyError(Exception):
    """Base class for all celltopo errors."""


class InputError(TopologyError):
    """An argument is malformed: unknown id, non-simple chain, bad dimension."""


class PreconditionError(TopologyError):
    """The operation's documented precondition does not hold for this input."""


class UnsupportedConfiguration(TopologyError):
    """A configuration the algorithms deliberately do not handle.

    Carries the offending cell id (when there is one) so callers can report it.
    """

    def __init__(self, message, cell=None):
        super().__init__(message)
        self.cell = cell


class BudgetExhausted(TopologyError):
    """An iteration or search budget ran out before reaching a result."""

    def __init__(self, message, state=None):
        super().__init__(message)
        self.state = state
