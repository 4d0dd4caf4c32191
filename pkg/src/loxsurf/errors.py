"""Exception hierarchy for loxsurf.

Numerical kernels, surface construction and curve evaluation raise
subclasses of LoxsurfError so callers can catch the whole family or
individual failure modes.
"""


class LoxsurfError(Exception):
    """Base class for all loxsurf errors."""


# --- numerics ---------------------------------------------------------------

class NonFiniteIntegrand(LoxsurfError):
    """Integrand returned NaN/inf inside the integration interval."""

    def __init__(self, x, value):
        super().__init__(f"integrand returned {value!r} at x={x!r}")
        self.x = x
        self.value = value


class ToleranceNotMet(LoxsurfError):
    """Subdivision limit reached before the tolerance; best estimate attached."""

    def __init__(self, result):
        super().__init__(
            f"quadrature tolerance not met: error estimate {result.error_estimate:.3e} "
            f"after {result.evaluations} evaluations"
        )
        self.result = result


class StiffOrSingular(LoxsurfError):
    """ODE step size underflowed or the right-hand side became non-finite."""

    def __init__(self, s, message="step size underflow"):
        super().__init__(f"{message} at s={s!r}")
        self.s = s


class DomainExit(LoxsurfError):
    """ODE state left the admissible region; carries the last valid s."""

    def __init__(self, s_last, solution=None):
        super().__init__(f"state left admissible region at s={s_last!r}")
        self.s_last = s_last
        self.solution = solution


class NonFiniteSample(LoxsurfError):
    """A sampled function value was NaN/inf."""


# --- surfaces ---------------------------------------------------------------

class InvalidParams(LoxsurfError):
    """Profile parameters are outside the admissible set."""


class EmptyDomain(LoxsurfError):
    """No s-interval satisfies f > 0 and |f'| < 1."""


class OutOfDomain(LoxsurfError):
    """Evaluation point outside the model's domain."""


class UmbilicPoleSingularity(LoxsurfError):
    """1 - f'^2 fell below the pole threshold; principal curvatures blow up."""


# --- loxodromes -------------------------------------------------------------

class EmptyTDomain(LoxsurfError):
    """The curve parameter interval is empty."""


class ClosedFormCaseGap(LoxsurfError):
    """Parameters match no closed-form case and numeric mode was disabled."""


class LogSingularity(LoxsurfError):
    """Argument of ln/artanh hit a singular value."""


class PoleSingularity(LoxsurfError):
    """Curvature/torsion evaluation too close to |f'| = 1."""


class KindMismatch(LoxsurfError):
    """Specialized curvature formula applied to a surface of the wrong family."""


# --- oracle / characterizations --------------------------------------------

class DegenerateVelocity(LoxsurfError):
    """Numerically vanishing velocity; Frenet frame undefined."""


class NotApplicable(LoxsurfError):
    """Characterization check preconditions not met."""


class UndefinedTorsion(LoxsurfError):
    """Torsion undefined (kappa ~ 0) at a requested sample."""


# --- cli --------------------------------------------------------------------

class UnknownFigure(LoxsurfError):
    """Unrecognized figure bundle name."""
