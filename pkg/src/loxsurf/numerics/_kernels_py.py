"""Pure-Python numeric kernels.

Fallback implementation of the hot loops; the compiled module
``loxsurf.numerics._kernels`` mirrors these functions one-to-one.  Keep the
arithmetic order identical between the two so results stay comparable to
rounding level.
"""

import math

from ..errors import NonFiniteIntegrand, NonFiniteSample, StiffOrSingular, ToleranceNotMet
from ._tables import DP_A, DP_B, DP_C, DP_E, GK_NODES, GK_WEIGHTS_GAUSS, GK_WEIGHTS_KRONROD
from ._types import QuadratureResult

BACKEND = "python"


def gk15(func, a, b):
    """15-point Kronrod / 7-point Gauss rule on [a, b].

    Returns (kronrod_value, error_estimate).
    """
    half = 0.5 * (b - a)
    mid = 0.5 * (a + b)
    resk = 0.0
    resg = 0.0
    for i in range(8):
        x = GK_NODES[i]
        wk = GK_WEIGHTS_KRONROD[i]
        wg = GK_WEIGHTS_GAUSS[i]
        if x == 0.0:
            fv = func(mid)
            if not math.isfinite(fv):
                raise NonFiniteIntegrand(mid, fv)
            resk += wk * fv
            resg += wg * fv
        else:
            xp = mid + half * x
            xm = mid - half * x
            fp = func(xp)
            if not math.isfinite(fp):
                raise NonFiniteIntegrand(xp, fp)
            fm = func(xm)
            if not math.isfinite(fm):
                raise NonFiniteIntegrand(xm, fm)
            s = fp + fm
            resk += wk * s
            resg += wg * s
    delta = abs(resk - resg) * abs(half)
    return resk * half, delta


def adaptive_quadrature(func, a, b, tol, limit):
    """Adaptive bisection with the embedded 15/7 rule pair; requires a < b."""
    val, err = gk15(func, a, b)
    intervals = [(err, a, b, val)]
    ncalls = 1
    while True:
        total = 0.0
        errtot = 0.0
        worst = 0
        worst_err = -1.0
        for i, (e, _, _, v) in enumerate(intervals):
            total += v
            errtot += e
            if e > worst_err:
                worst_err = e
                worst = i
        if errtot <= tol:
            return QuadratureResult(total, errtot, 15 * ncalls, True)
        if ncalls >= limit:
            raise ToleranceNotMet(QuadratureResult(total, errtot, 15 * ncalls, False))
        e, lo, hi, v = intervals[worst]
        mid = lo + 0.5 * (hi - lo)
        vl, el = gk15(func, lo, mid)
        vr, er = gk15(func, mid, hi)
        ncalls += 2
        intervals[worst] = (el, lo, mid, vl)
        intervals.append((er, mid, hi, vr))


def _rhs_eval(rhs, s, y, n):
    f = rhs(s, y)
    out = tuple(float(v) for v in f)
    if len(out) != n:
        raise ValueError(f"rhs returned {len(out)} components, expected {n}")
    for v in out:
        if not math.isfinite(v):
            raise StiffOrSingular(s, "non-finite right-hand side")
    return out


def _error_norm(err, y0, y1, tol, n):
    acc = 0.0
    for i in range(n):
        sc = tol + tol * max(abs(y0[i]), abs(y1[i]))
        r = err[i] / sc
        acc += r * r
    return math.sqrt(acc / n)


def _initial_step(rhs, s0, y0, f0, direction, tol, span, n):
    # Hairer-style starting step selection.
    d0 = 0.0
    d1 = 0.0
    for i in range(n):
        sc = tol + tol * abs(y0[i])
        r0 = y0[i] / sc
        r1 = f0[i] / sc
        d0 += r0 * r0
        d1 += r1 * r1
    d0 = math.sqrt(d0 / n)
    d1 = math.sqrt(d1 / n)
    if d0 < 1e-5 or d1 < 1e-5:
        h0 = 1e-6
    else:
        h0 = 0.01 * d0 / d1
    h0 = min(h0, span)
    y1 = tuple(y0[i] + direction * h0 * f0[i] for i in range(n))
    f1 = _rhs_eval(rhs, s0 + direction * h0, y1, n)
    d2 = 0.0
    for i in range(n):
        sc = tol + tol * abs(y0[i])
        r = (f1[i] - f0[i]) / sc
        d2 += r * r
    d2 = math.sqrt(d2 / n) / h0
    dm = max(d1, d2)
    if dm <= 1e-15:
        h1 = max(1e-6, h0 * 1e-3)
    else:
        h1 = (0.01 / dm) ** 0.2
    return min(100.0 * h0, h1, span)


def rk45_solve(rhs, s0, y0, s_end, tol, max_step, stop, max_steps):
    """Dormand-Prince 5(4) stepper with FSAL.

    Returns (ss, ys, fs, stopped): node locations, states, derivatives and
    whether the stop predicate fired (the final node is then the first state
    past the admissible region; the caller refines the boundary).
    """
    n = len(y0)
    y = tuple(float(v) for v in y0)
    s = float(s0)
    span = abs(s_end - s0)
    direction = 1.0 if s_end >= s0 else -1.0
    f = _rhs_eval(rhs, s, y, n)
    ss = [s]
    ys = [y]
    fs = [f]
    if span == 0.0:
        return ss, ys, fs, False
    h = _initial_step(rhs, s, y, f, direction, tol, span, n)
    if max_step is not None:
        h = min(h, max_step)
    hmin = 1e-14 * max(1.0, abs(s0), abs(s_end))
    k = [None] * 7
    steps = 0
    while (s_end - s) * direction > 0.0:
        if steps >= max_steps:
            raise StiffOrSingular(s, "step budget exhausted")
        steps += 1
        h = min(h, (s_end - s) * direction)
        if h < hmin:
            raise StiffOrSingular(s)
        hd = direction * h
        k[0] = f
        for stage in range(1, 7):
            arow = DP_A[stage - 1]
            yt = list(y)
            for j in range(stage):
                aj = arow[j]
                if aj != 0.0:
                    kj = k[j]
                    for i in range(n):
                        yt[i] += hd * aj * kj[i]
            k[stage] = _rhs_eval(rhs, s + DP_C[stage] * hd, tuple(yt), n)
        # k[6] was evaluated at the 5th-order solution point (FSAL)
        y_new = list(y)
        for j in range(7):
            bj = DP_B[j]
            if bj != 0.0:
                kj = k[j]
                for i in range(n):
                    y_new[i] += hd * bj * kj[i]
        y_new = tuple(y_new)
        err = [0.0] * n
        for j in range(7):
            ej = DP_E[j]
            if ej != 0.0:
                kj = k[j]
                for i in range(n):
                    err[i] += hd * ej * kj[i]
        enorm = _error_norm(err, y, y_new, tol, n)
        if enorm <= 1.0:
            s = s + hd
            f_new = k[6]
            y = y_new
            f = f_new
            ss.append(s)
            ys.append(y)
            fs.append(f)
            if stop is not None and stop(s, y):
                return ss, ys, fs, True
            if enorm == 0.0:
                fac = 5.0
            else:
                fac = min(5.0, max(0.2, 0.9 * enorm ** -0.2))
            h = h * fac
            if max_step is not None:
                h = min(h, max_step)
        else:
            h = h * min(1.0, max(0.2, 0.9 * enorm ** -0.2))
    return ss, ys, fs, False


def fd_jet(func, t, h1, h2, h3):
    """Central-difference value and first three derivatives.

    Plain O(h^2) stencils: 2-point for d1, 3-point for d2, 4-point for d3.
    """
    def sample(x):
        v = func(x)
        if not math.isfinite(v):
            raise NonFiniteSample(f"func({x!r}) = {v!r}")
        return v

    v0 = sample(t)
    fp1 = sample(t + h1)
    fm1 = sample(t - h1)
    d1 = (fp1 - fm1) / (2.0 * h1)
    fp2 = sample(t + h2)
    fm2 = sample(t - h2)
    d2 = (fp2 - 2.0 * v0 + fm2) / (h2 * h2)
    fp3 = sample(t + h3)
    fm3 = sample(t - h3)
    fp33 = sample(t + 2.0 * h3)
    fm33 = sample(t - 2.0 * h3)
    d3 = (fp33 - 2.0 * fp3 + 2.0 * fm3 - fm33) / (2.0 * h3 * h3 * h3)
    return v0, d1, d2, d3
