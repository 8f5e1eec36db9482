"""Exception hierarchy shared by every module."""


class LevelMatError(Exception):
    """Base class for all errors raised by :mod:`levelmat`."""


class ContractViolation(LevelMatError, ValueError):
    """An argument violates the documented precondition of an operation."""


class DimensionError(ContractViolation):
    """Matrix or vector shapes are incompatible."""


class SingularMatrixError(LevelMatError, ArithmeticError):
    """A square system has no unique solution."""


class RankDeficiencyError(ContractViolation):
    """The matrix does not have full column rank."""


class InfeasibleError(ContractViolation):
    """A point does not lie in the feasible polytope."""


class SearchBudgetExceeded(LevelMatError, RuntimeError):
    """An exhaustive search hit its node budget before finishing.

    ``lower_bound`` holds the best value certified before the search stopped.
    """

    def __init__(self, message, lower_bound=None):
        super().__init__(message)
        self.lower_bound = lower_bound


class ParseError(LevelMatError, ValueError):
    """Input text does not follow the expected file format."""
