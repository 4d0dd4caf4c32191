"""Dense ODE solutions: cubic Hermite interpolation over accepted RK nodes."""

import bisect

import numpy as np

from ..errors import OutOfDomain


class DenseSolution:
    """Continuously evaluable solution of an initial value problem.

    Interpolates with a cubic Hermite on each accepted step using the stored
    states and derivatives, so the interpolant is C^1 across nodes.  Queries
    outside ``span`` raise OutOfDomain.
    """

    def __init__(self, ss, ys, fs, tolerance, stopped=False, stop_s=None):
        s = np.asarray(ss, dtype=float)
        y = np.asarray(ys, dtype=float)
        f = np.asarray(fs, dtype=float)
        if s[0] > s[-1]:
            s = s[::-1].copy()
            y = y[::-1].copy()
            f = f[::-1].copy()
        self._s = s
        self._y = y
        self._f = f
        self.tolerance = tolerance
        self.stopped = stopped
        self.stop_s = stop_s
        self._slack = 1e-12 * max(1.0, abs(s[0]), abs(s[-1]))

    @property
    def span(self):
        return (float(self._s[0]), float(self._s[-1]))

    @property
    def dim(self):
        return self._y.shape[1]

    def __contains__(self, s):
        lo, hi = self.span
        return lo - self._slack <= s <= hi + self._slack

    def eval(self, s):
        """State vector at s (cubic Hermite)."""
        lo, hi = self.span
        if not (lo - self._slack <= s <= hi + self._slack):
            raise OutOfDomain(f"s={s!r} outside dense span [{lo!r}, {hi!r}]")
        s = min(max(s, lo), hi)
        i = bisect.bisect_right(self._s, s) - 1
        if i >= len(self._s) - 1:
            i = len(self._s) - 2
        if i < 0:
            i = 0
        s0 = self._s[i]
        s1 = self._s[i + 1]
        h = s1 - s0
        if h == 0.0:
            return self._y[i].copy()
        u = (s - s0) / h
        u2 = u * u
        u3 = u2 * u
        h00 = 2.0 * u3 - 3.0 * u2 + 1.0
        h10 = u3 - 2.0 * u2 + u
        h01 = -2.0 * u3 + 3.0 * u2
        h11 = u3 - u2
        return (h00 * self._y[i] + h10 * h * self._f[i]
                + h01 * self._y[i + 1] + h11 * h * self._f[i + 1])

    def eval1(self, s):
        """First state component at s."""
        return float(self.eval(s)[0])


def refine_stop_boundary(ss, ys, fs, stop, rhs):
    """Locate the admissible-region boundary inside the last accepted step.

    The solver hands over nodes whose final entry is the first state where
    ``stop`` fired.  Bisects the stop predicate on the Hermite interpolant of
    that step and replaces the final node with the boundary state.
    """
    if len(ss) < 2:
        return ss, ys, fs, ss[-1]
    sol = DenseSolution(ss[-2:], ys[-2:], fs[-2:], 0.0)
    lo, hi = ss[-2], ss[-1]
    # invariant: stop is False at lo, True at hi (in integration order)
    for _ in range(80):
        mid = 0.5 * (lo + hi)
        if mid == lo or mid == hi:
            break
        if stop(mid, tuple(sol.eval(mid))):
            hi = mid
        else:
            lo = mid
    s_star = lo
    y_star = tuple(sol.eval(s_star))
    f_star = tuple(float(v) for v in rhs(s_star, y_star))
    ss = ss[:-1] + [s_star]
    ys = ys[:-1] + [y_star]
    fs = fs[:-1] + [f_star]
    return ss, ys, fs, s_star
