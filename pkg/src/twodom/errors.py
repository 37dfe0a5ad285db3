"""Exception hierarchy shared by every module."""


class GraphError(ValueError):
    """Base class for all errors raised by this package."""


class InvalidSelectionError(GraphError):
    """A vertex or edge selection refers to something not in the graph."""


class PreconditionError(GraphError):
    """An operation was called on an input that violates its preconditions."""


class RuleNotApplicable(PreconditionError):
    """A reduction rule does not apply to the given graph/anchors."""

    def __init__(self, message, *, route=None):
        super().__init__(message)
        # name of the rule the caller should use instead, if any
        self.route = route


class StructureError(GraphError):
    """The graph does not have the required structure (e.g. not a cactus)."""


class ParseError(GraphError):
    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class CapacityError(GraphError):
    """Instance exceeds a hard size cap of a solver backend."""


class BudgetError(RuntimeError):
    """A solver exceeded its node budget.

    Deliberately not a GraphError: the input is fine, the search was cut off.
    """


class GenerationError(RuntimeError):
    """Random generation gave up (rejection limit reached)."""

    def __init__(self, message, acceptance_rate=None):
        self.acceptance_rate = acceptance_rate
        super().__init__(message)
