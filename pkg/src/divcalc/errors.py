"""Exception hierarchy shared by all divcalc modules."""


class DivcalcError(Exception):
    """Base class for every error raised by this package."""


class ParseError(DivcalcError):
    """Malformed expression text. Carries the byte offset of the failure."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (at offset {offset})")
        self.offset = offset


class UnknownIdentifierError(ParseError):
    """Identifier outside the expression grammar (not z/x/i or a known function)."""


class SingularityError(DivcalcError):
    """Evaluation requested at (or through) a singular point of the integrand."""


class DomainError(DivcalcError):
    """Inputs violate a documented precondition (bad interval, radius, order...)."""


class SeriesDivergenceError(DomainError):
    """Expansion parameter lies at or beyond the series' radius of convergence."""

    def __init__(self, omega: float, radius: float):
        super().__init__(
            f"|omega| = {abs(omega)} is not inside the radius of convergence {radius}"
        )
        self.omega = omega
        self.radius = radius


class ConvergenceError(DivcalcError):
    """A quadrature or extrapolation failed to stabilise within its budget."""
