"""Exception types shared across the library."""


class PoleError(ValueError):
    """A gamma-function pole or a vanishing denominator Pochhammer was hit."""


class ConvergenceError(ArithmeticError):
    """A series failed to satisfy its tail tolerance within the term budget."""


class AccuracyError(ArithmeticError):
    """Quadrature refinement stopped before reaching the requested accuracy."""


class BudgetError(RuntimeError):
    """A combinatorial enumeration exceeded its configured size budget."""


class SingularMatrixError(ValueError):
    """A coefficient matrix that must be invertible is (numerically) singular."""
