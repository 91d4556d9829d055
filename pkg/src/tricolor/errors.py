"""Exception hierarchy shared by all modules."""


class TricolorError(Exception):
    """Base class for all errors raised by this package."""


class MalformedInputError(TricolorError):
    """Input data violates the documented format (bad ids, self-loops, ...)."""


class ContractViolationError(TricolorError):
    """A documented precondition of an operation was violated by the caller."""


class BudgetExceededError(TricolorError):
    """An exact search was asked to exceed its configured budget."""


class GenerationError(TricolorError):
    """A generator exhausted its retry budget without producing a valid graph."""


class PipelineError(TricolorError):
    """The coloring pipeline hit a structural dead end (typically a non-member input).

    Carries a JSON-serializable payload describing the offending subgraph so
    failures can be triaged offline.
    """

    def __init__(self, message, payload=None):
        super().__init__(message)
        self.payload = payload or {}
