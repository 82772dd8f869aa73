"""Exception hierarchy shared by all modules.

Each class carries an exit code used by the command line front-end:
2 for usage problems, 3 for domain violations, 4 for numerical failures.
"""


class RobustDRMError(Exception):
    exit_code = 3
    kind = "error"


class UsageError(RobustDRMError, ValueError):
    exit_code = 2
    kind = "usage"


class DomainError(RobustDRMError, ValueError):
    exit_code = 3
    kind = "domain"


class NumericError(RobustDRMError, ArithmeticError):
    exit_code = 4
    kind = "numeric"


class GridMismatchError(UsageError):
    kind = "grid-mismatch"


class DegenerateDistributionError(DomainError):
    kind = "degenerate"


class InfeasibleBallError(DomainError):
    kind = "infeasible"


class AssumptionViolation(DomainError):
    kind = "assumption"


class UnsupportedMeasureError(DomainError):
    kind = "unsupported"


class SquareIntegrabilityError(DomainError):
    kind = "not-square-integrable"


class InfeasibleFitError(DomainError):
    kind = "infeasible-fit"
