class FinslerError(Exception):
    """
    Base class for every error raised by the engine.
    Each subclass also derives from the closest builtin so callers can catch by builtin.
    """


class DomainError(FinslerError, ValueError):
    """
    A value left the domain where the computation is defined: a non-finite result, a point
    inside the slit-bundle guard, or a point outside a structure's chart.

    :ivar position: Where it happened, a sub-expression byte offset or an operation name.
    """

    def __init__(self, message, position=None):
        super(DomainError, self).__init__(message)
        self.message = message
        self.position = position

    def __str__(self):
        if self.position is None:
            return self.message
        return "{0} (at {1})".format(self.message, self.position)


class EvaluationError(DomainError):
    """
    Raised when evaluating an expression tree fails, `position` is the byte offset of the failing node.
    """


class ParseDiagnostic(FinslerError, ValueError):
    """
    A parse failure with enough context to point at the input.

    :ivar offset: Byte offset into the parsed text.
    :ivar expected: A frozenset with the names of the tokens that would have been accepted.
    :ivar message: Human readable description.
    """

    def __init__(self, offset, expected, message):
        super(ParseDiagnostic, self).__init__(message)
        self.offset = offset
        self.expected = frozenset(expected)
        self.message = message

    def __str__(self):
        if self.expected:
            return "{0} at byte {1}, expected one of: {2}".format(
                self.message, self.offset, ", ".join(sorted(self.expected)))
        return "{0} at byte {1}".format(self.message, self.offset)


class ContractError(FinslerError, ValueError):
    """
    A precondition on orders, slots, ranks or sizes was violated by the caller.
    """


class StepUnderflowError(ContractError):
    """
    A finite-difference step is too small to move the coordinate it perturbs.
    """


class DegeneracyError(FinslerError, ArithmeticError):
    """
    A matrix that has to be inverted is (numerically) singular.
    """


class ConditioningError(DegeneracyError):
    """
    A matrix is invertible but too badly conditioned for the requested tolerances.
    """


class UnsupportedKindError(FinslerError, TypeError):
    """
    The operation is only defined for positive-definite structures.
    """


class WrongOperationError(FinslerError, TypeError):
    """
    The input needs a different operation, e.g. a y-dependent potential on the Riemannian path.
    """


class ConfigError(FinslerError, ValueError):
    """
    A run configuration could not be understood.
    """
