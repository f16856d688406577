"""Exception types shared across the package."""


class IntegrabilityError(Exception):
    """Base class for every error raised by this package."""


class ParseError(IntegrabilityError, ValueError):
    """Malformed textual input. Carries a 1-based line/column position."""

    def __init__(self, message, text="", offset=0):
        self.offset = offset
        self.line = text.count("\n", 0, offset) + 1
        self.column = offset - (text.rfind("\n", 0, offset) + 1) + 1
        self.message = message
        super().__init__(f"line {self.line}, column {self.column}: {message}")


class GaussSyntaxError(ParseError):
    pass


class ExpressionSyntaxError(ParseError):
    pass


class ConsistencyError(IntegrabilityError, ValueError):
    """A diagram violates the crossing/passage bookkeeping invariants."""


class InvalidLocation(IntegrabilityError, ValueError):
    """A move location does not match the pattern the move needs."""


class NonCompact(IntegrabilityError, ValueError):
    pass


class DimensionMismatch(IntegrabilityError, ValueError):
    pass


class EvenDimension(IntegrabilityError, ValueError):
    pass


class EmptyListError(IntegrabilityError, ValueError):
    pass


class ContextInvalid(IntegrabilityError, ValueError):
    """The embedding question is ill-posed or its supplied facts contradict a rule."""


class MissingDiagram(ContextInvalid):
    pass


class OutOfTableRange(ContextInvalid):
    pass


class SelfLoop(IntegrabilityError, ValueError):
    pass


class OddCycleError(IntegrabilityError):
    """No alternating orientation exists; ``cycle`` is an odd cycle of vertices."""

    def __init__(self, cycle):
        self.cycle = tuple(cycle)
        super().__init__(f"odd cycle {list(self.cycle)} blocks an alternating orientation")


class InternalInconsistency(IntegrabilityError, RuntimeError):
    """Two rules fired with opposite answers on theorem-derived facts alone."""
