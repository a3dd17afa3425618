"""Exception hierarchy.

Every error raised on bad *input* derives from :class:`InputError` (CLI exit
code 2). :class:`SearchBudgetExceeded` means a search was cut off, not that an
answer was wrong (exit code 3). :class:`ConsistencyError` signals a broken
internal invariant and should never surface on valid input.
"""


class LiftOracleError(Exception):
    """Base class for all library errors."""


class InputError(LiftOracleError, ValueError):
    def __init__(self, message, field=None):
        super().__init__(message)
        self.field = field


class DigitRangeError(InputError):
    pass


class NoTypeError(InputError):
    pass


class DomainError(InputError):
    pass


class InvalidGroupError(InputError):
    pass


class InvalidJumpsError(InputError):
    pass


class GenusInconsistencyError(InputError):
    pass


class WrongCriterionError(InputError):
    pass


class BruteForceCapError(InputError):
    pass


class ConsistencyError(LiftOracleError):
    pass


class TheoremViolation(ConsistencyError):
    pass


class SearchBudgetExceeded(LiftOracleError):
    def __init__(self, message, nodes=None):
        super().__init__(message)
        self.nodes = nodes
