"""Numeric kernels: adaptive quadrature, RK45 with dense output, FD jets.

The hot loops live in the compiled extension ``_kernels`` (Cython) with a
pure-Python twin in ``_kernels_py``.  The backend is picked at import time:
set ``LOXSURF_PURE_PYTHON=1`` to force the fallback.
"""

import math
import os

from ..errors import (
    DomainExit,
    NonFiniteIntegrand,
    NonFiniteSample,
    StiffOrSingular,
    ToleranceNotMet,
)
from ._types import Jet, QuadratureResult
from .dense import DenseSolution, refine_stop_boundary

if os.environ.get("LOXSURF_PURE_PYTHON"):
    from . import _kernels_py as _impl
else:
    try:
        from . import _kernels as _impl  # type: ignore[attr-defined]
    except ImportError:
        from . import _kernels_py as _impl

BACKEND = _impl.BACKEND

_EPS = 2.220446049250313e-16
_H1_FACTOR = _EPS ** (1.0 / 3.0)   # ~6.06e-6
_H2_FLOOR = _EPS ** (1.0 / 4.0)    # ~1.22e-4
_H3_FLOOR = _EPS ** (1.0 / 5.0)    # ~7.40e-4

__all__ = [
    "BACKEND",
    "CumulativeIntegral",
    "DenseSolution",
    "Jet",
    "QuadratureResult",
    "finite_diff_jet",
    "integrate_adaptive",
    "solve_ivp",
]


def integrate_adaptive(integrand, a, b, tol=1e-10, *, limit=2000):
    """Integrate ``integrand`` over [a, b] to absolute tolerance ``tol``.

    Adaptive bisection with an embedded 15/7 Gauss-Kronrod pair.  The value
    is antisymmetric under swapping a and b.  Raises NonFiniteIntegrand when
    the integrand returns NaN/inf, ToleranceNotMet (carrying the flagged best
    estimate) when the subdivision limit is reached.
    """
    if not tol > 0.0:
        raise ValueError("tol must be positive")
    a = float(a)
    b = float(b)
    if a == b:
        v = integrand(a)
        if not math.isfinite(v):
            raise NonFiniteIntegrand(a, v)
        return QuadratureResult(0.0, 0.0, 1, True)
    if a > b:
        r = _impl.adaptive_quadrature(integrand, b, a, tol, limit)
        return QuadratureResult(-r.value, r.error_estimate, r.evaluations, r.converged)
    return _impl.adaptive_quadrature(integrand, a, b, tol, limit)


def solve_ivp(rhs, s0, state0, s_end, tol=1e-10, *, max_step=None, stop=None,
              on_stop="truncate", max_steps=200000):
    """Solve y' = rhs(s, y) from s0 to s_end with dense output.

    Explicit Dormand-Prince 5(4) with FSAL and cubic Hermite dense output.
    ``stop(s, y)`` marks the admissible region boundary: when it fires the
    step interval is bisected to machine precision and the solution is
    truncated there (``on_stop='truncate'``) or DomainExit is raised
    (``on_stop='raise'``).  Raises StiffOrSingular on step underflow.
    """
    if not tol > 0.0:
        raise ValueError("tol must be positive")
    state0 = tuple(float(v) for v in state0)
    if stop is not None and stop(s0, state0):
        raise DomainExit(s0)
    ss, ys, fs, stopped = _impl.rk45_solve(
        rhs, float(s0), state0, float(s_end), tol, max_step, stop, max_steps)
    stop_s = None
    if stopped:
        ss, ys, fs, stop_s = refine_stop_boundary(ss, ys, fs, stop, rhs)
    sol = DenseSolution(ss, ys, fs, tol, stopped=stopped, stop_s=stop_s)
    if stopped and on_stop == "raise":
        raise DomainExit(stop_s, sol)
    return sol


def finite_diff_jet(func, t, h=None):
    """Central-difference jet (value, d1, d2, d3) of ``func`` at ``t``.

    O(h^2) stencils throughout.  The d2/d3 stencils are widened to at least
    eps^(1/4) and eps^(1/5) times the local scale: below those floors the
    estimates are cancellation-dominated regardless of the requested h.
    """
    t = float(t)
    scale = max(1.0, abs(t))
    if h is None:
        h = _H1_FACTOR * scale
    if not h > 0.0:
        raise ValueError("h must be positive")
    h1 = h
    h2 = max(h, _H2_FLOOR * scale)
    h3 = max(h, _H3_FLOOR * scale)
    v, d1, d2, d3 = _impl.fd_jet(func, t, h1, h2, h3)
    return Jet(v, d1, d2, d3)


class CumulativeIntegral:
    """Cumulative integral with smooth dependence on the upper limit.

    Fixed Gauss-Kronrod panels anchored on a uniform grid plus one partial
    panel up to the query point, so the result is machine-accurate and C-inf
    in s inside each panel (no adaptive subdivision noise).  Used for profile
    heights g(s) = integral of g'(s) when no closed form exists.
    """

    def __init__(self, integrand, lo, hi, base=None, max_panel=0.05):
        if hi < lo:
            raise ValueError("hi must be >= lo")
        self._integrand = integrand
        self.lo = float(lo)
        self.hi = float(hi)
        width = self.hi - self.lo
        n = max(1, int(math.ceil(width / max_panel)))
        self._n = n
        self._w = width / n
        prefix = [0.0]
        acc = 0.0
        for i in range(n):
            a = self.lo + i * self._w
            b = self.lo + (i + 1) * self._w
            v, _ = _impl.gk15(integrand, a, b)
            acc += v
            prefix.append(acc)
        self._prefix = prefix
        self._base_value = 0.0
        if base is not None:
            self._base_value = self._raw(float(base))

    def _raw(self, s):
        if not (self.lo - 1e-12 <= s <= self.hi + 1e-12):
            raise ValueError(f"s={s!r} outside [{self.lo!r}, {self.hi!r}]")
        s = min(max(s, self.lo), self.hi)
        j = int((s - self.lo) / self._w)
        if j >= self._n:
            j = self._n - 1
        a = self.lo + j * self._w
        if s == a:
            part = 0.0
        else:
            part, _ = _impl.gk15(self._integrand, a, s)
        return self._prefix[j] + part

    def __call__(self, s):
        return self._raw(float(s)) - self._base_value
