"""
Exceptions raised by vassinc.

Every error the library raises on purpose derives from VassError, so the CLI can catch one type and map it to
exit code 3. Coordinates in messages are 1-based.
"""


class VassError(Exception):
    """Root of the vassinc exception hierarchy."""


class ParseError(VassError):
    def __init__(self, message, line=1, column=1, path=None):
        self.line = line
        self.column = column
        self.path = path
        where = f"{path}:" if path else ""
        super().__init__(f"{where}{line}:{column}: {message}")


class ModelError(VassError):
    """A model violates one of its structural invariants."""


class DimensionMismatch(VassError):
    pass


class StateUniverseMismatch(VassError):
    pass


class AlphabetMismatch(VassError):
    pass


class UnsupportedAcceptance(VassError):
    """The operation is not defined for this acceptance variant."""


class StepError(VassError):
    """A transition cannot be fired in a configuration."""


class WrongState(StepError):
    pass


class Underflow(StepError):
    def __init__(self, coordinate, message=None):
        self.coordinate = coordinate
        super().__init__(message or f"counter {coordinate} would drop below zero")


class HoleViolation(StepError):
    pass


class NotDeterministic(VassError):
    pass


class NotKDeterministic(VassError):
    def __init__(self, k, found, length):
        self.k = k
        self.found = found
        self.length = length
        super().__init__(f"control automaton has {found} maximal runs on a word of length <= {length}, more than k={k}")


class BudgetExhausted(VassError):
    """An explicit-state exploration hit its cap. The report says which cap and how far it got."""

    def __init__(self, message, report=None):
        self.report = dict(report or {})
        super().__init__(message)


class Undetermined(VassError):
    """A construction could not finish within its caps. Deciders turn this into an Unknown verdict."""

    def __init__(self, message, report=None):
        self.report = dict(report or {})
        super().__init__(message)
