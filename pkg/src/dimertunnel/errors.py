"""Exception hierarchy shared by all modules."""


class DimerError(Exception):
    """Base class for every error raised by dimertunnel."""


class InvalidInputError(DimerError, ValueError):
    """Malformed or non-finite input."""


class DomainError(DimerError, ValueError):
    """Argument outside the mathematical domain of a function."""


class PoleError(DomainError):
    """Evaluation at a pole (e.g. |z| = 1, alpha^2 = 1)."""


class DivergenceError(DimerError, ArithmeticError):
    """A quantity diverges (K(1), NaN in an ODE state, ...).

    ``time`` is set when the divergence happened during time stepping.
    """

    def __init__(self, message, time=None):
        super().__init__(message)
        self.time = time


class ConvergenceError(DimerError, ArithmeticError):
    """Iterative method failed to converge; ``index`` names the offender."""

    def __init__(self, message, index=None):
        super().__init__(message)
        self.index = index


class BracketError(DimerError, ValueError):
    """Root-finding interval does not bracket a sign change."""


class EvaluationError(DimerError, ArithmeticError):
    """A callback returned NaN."""


class AccuracyError(DimerError, ArithmeticError):
    """Requested accuracy not reached; ``estimate`` is the best value found."""

    def __init__(self, message, estimate=None):
        super().__init__(message)
        self.estimate = estimate


class NoPeakError(DimerError, ValueError):
    """Power spectrum has no nonzero-frequency peak."""


class ValidityError(DimerError, ValueError):
    """Semiclassical quantization is outside its range of validity."""


class ShapeError(DimerError, ValueError):
    """Array dimensions do not match."""


class IntegratorToleranceError(DimerError, ArithmeticError):
    """Integrated density matrix violates trace / positivity bounds."""
