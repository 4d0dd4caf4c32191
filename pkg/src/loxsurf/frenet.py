"""Numerical Frenet apparatus: the independent oracle for closed-form kappa/tau.

Everything here sees the curve only as a black-box callable t -> point3.
Derivatives come from central-difference stencils extrapolated over a
shrinking step ladder (Ridders/Neville in h^2), which self-selects the step
size near the truncation/cancellation optimum for each derivative order and
component.  Plain one-step stencils (refine=False) are kept for convergence
-order measurements.
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateVelocity

_CONTRACT = 1.8
_CONTRACT2 = _CONTRACT * _CONTRACT
_CROSS_FLOOR = 1e-10
_SPEED_FLOOR = 1e-10


@dataclass(frozen=True)
class FrenetApparatus:
    """Frenet frame with curvature and torsion at one parameter value.

    valid_tau is False where ||a1 x a2|| ~ 0 (kappa ~ 0): the binormal,
    normal and torsion are then undefined and reported as NaN.
    """

    T: np.ndarray
    N: np.ndarray
    B: np.ndarray
    kappa: float
    tau: float
    valid_tau: bool


def _stencil_levels(curve, t, h0, levels):
    """Raw stencil estimates D1, D2, D3 per ladder level (arrays of vectors)."""
    f0 = np.asarray(curve(t), dtype=float)
    d1 = []
    d2 = []
    d3 = []
    h = h0
    for _ in range(levels):
        fp = np.asarray(curve(t + h), dtype=float)
        fm = np.asarray(curve(t - h), dtype=float)
        fpp = np.asarray(curve(t + 2.0 * h), dtype=float)
        fmm = np.asarray(curve(t - 2.0 * h), dtype=float)
        d1.append((fp - fm) / (2.0 * h))
        d2.append((fp - 2.0 * f0 + fm) / (h * h))
        d3.append((fpp - 2.0 * fp + 2.0 * fm - fmm) / (2.0 * h ** 3))
        h /= _CONTRACT
    return f0, d1, d2, d3


def _extrapolate(column):
    """Neville tableau in h^2 over one component; returns the best estimate.

    Tracks the pairwise-difference error estimate and stops a diagonal when
    it degrades (cancellation regime reached), as in Ridders' method.
    """
    n = len(column)
    tab = [list(column)]
    best = column[0]
    err_best = math.inf
    for j in range(1, n):
        # order-j elimination of the h^(2j) error term: factor (con^j)^2
        fac = _CONTRACT2 ** j
        row_prev = tab[j - 1]
        row = [0.0] * n
        tab.append(row)
        for i in range(j, n):
            row[i] = (row_prev[i] * fac - row_prev[i - 1]) / (fac - 1.0)
            errt = max(abs(row[i] - row_prev[i]), abs(row[i] - row_prev[i - 1]))
            if errt <= err_best:
                err_best = errt
                best = row[i]
    return best


def curve_jet_numeric(curve, t, h=None, *, refine=True, levels=10):
    """First three derivative vectors of ``curve`` at t by central differences.

    refine=True extrapolates over a shrinking step ladder starting at h
    (default 0.1*max(1,|t|)); refine=False evaluates the plain O(h^2)
    stencils at exactly h.  The curve must be evaluable on [t-2h, t+2h].
    """
    t = float(t)
    if h is None:
        h = 0.1 * max(1.0, abs(t))
    if not h > 0.0:
        raise ValueError("h must be positive")
    if not refine:
        levels = 1
    f0, d1, d2, d3 = _stencil_levels(curve, t, h, levels)
    if levels == 1:
        return f0, d1[0], d2[0], d3[0]
    dim = len(f0)
    out = []
    for stack in (d1, d2, d3):
        cols = [[lvl[i] for lvl in stack] for i in range(dim)]
        out.append(np.array([_extrapolate(col) for col in cols]))
    return f0, out[0], out[1], out[2]


def frenet_numeric(curve, t, h=None, *, refine=True, levels=10):
    """Frenet frame, curvature and torsion of a black-box curve at t.

    kappa = ||a1 x a2|| / ||a1||^3,
    tau   = det(a1, a2, a3) / ||a1 x a2||^2,
    B = (a1 x a2)/||a1 x a2||, N = B x T.
    """
    _, a1, a2, a3 = curve_jet_numeric(curve, t, h, refine=refine, levels=levels)
    speed = float(np.linalg.norm(a1))
    if speed < _SPEED_FLOOR:
        raise DegenerateVelocity(f"||a1|| = {speed!r} at t={t!r}")
    T = a1 / speed
    cross = np.cross(a1, a2)
    ncross = float(np.linalg.norm(cross))
    kappa = ncross / speed ** 3
    if ncross < _CROSS_FLOOR:
        nanv = np.full(3, math.nan)
        return FrenetApparatus(T, nanv, nanv, kappa, math.nan, False)
    B = cross / ncross
    N = np.cross(B, T)
    tau = float(np.dot(cross, a3)) / (ncross * ncross)
    return FrenetApparatus(T, N, B, kappa, tau, True)


def unit_speed_residual(curve, t_samples, h=None):
    """max |  ||d alpha/dt||  - 1 | over the samples (arc-length check)."""
    worst = 0.0
    for t in t_samples:
        _, a1, _, _ = curve_jet_numeric(curve, float(t), h)
        speed = float(np.linalg.norm(a1))
        if speed < _SPEED_FLOOR:
            raise DegenerateVelocity(f"||a1|| = {speed!r} at t={t!r}")
        worst = max(worst, abs(speed - 1.0))
    return worst
