"""Exception types shared across the package."""


class PoleEvaluationError(ValueError):
    """An evaluation point sits on (or within tolerance of) a pole."""


class ConsistencyError(ArithmeticError):
    """A closed-form result violated a structural guarantee (realness, sign)."""


class ConvergenceError(RuntimeError):
    """Adaptive quadrature exhausted its panel budget before meeting tolerance."""


class IllConditionedError(RuntimeError):
    """A linear solve is too ill-conditioned to trust."""
