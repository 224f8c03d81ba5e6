class DomainError(ValueError):
    """An argument lies outside the model's domain (e.g. a policy outside [0, 1])."""


class NumericalError(ArithmeticError):
    """A quantity became too ill-conditioned to evaluate reliably."""


class NonConvergence(RuntimeError):
    """Monotone iteration hit its iteration cap before reaching the fixed-point tolerance."""

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


def check_unit(name, value):
    v = float(value)
    if not (0.0 <= v <= 1.0):
        raise DomainError(f"{name}={value!r} is outside [0, 1]")
    return v
