"""Result carriers shared by the numeric kernel backends."""

from dataclasses import dataclass


@dataclass(frozen=True)
class QuadratureResult:
    """Adaptive quadrature output.

    value          -- integral estimate
    error_estimate -- absolute error estimate (>= 0)
    evaluations    -- number of integrand evaluations (>= 1)
    converged      -- False when the subdivision limit was hit
    """

    value: float
    error_estimate: float
    evaluations: int
    converged: bool = True


@dataclass(frozen=True)
class Jet:
    """Value and first three derivatives of a scalar function at a point."""

    value: float
    d1: float
    d2: float
    d3: float

    def as_tuple(self):
        return (self.value, self.d1, self.d2, self.d3)
