"""Rotational-surface profile curves and surface quantities.

A rotational surface is Phi(s, theta) = (f(s) cos theta, f(s) sin theta,
g(s)) with an arc-length profile: f'^2 + g'^2 = 1, f > 0.  Each profile
family exposes the jet (f, f', f'', f''', g, g') at any s of its domain.
The domain is the maximal interval around a kind-specific seed on which
f >= RADIUS_FLOOR and 1 - f'^2 >= PHI_FLOOR; endpoints are located by
geometric marching plus bisection (closed-form families) or by ODE stop
events (principal-ratio family).
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import EmptyDomain, InvalidParams, OutOfDomain, UmbilicPoleSingularity
from .numerics import CumulativeIntegral, solve_ivp

# admissibility floors: away from |f'| = 1 (surface poles/rims) and f = 0
PHI_FLOOR = 1e-12
RADIUS_FLOOR = 1e-9
SPAN_CAP = 1e6


@dataclass(frozen=True)
class ProfileJet:
    """Profile value and derivatives at one s: f, f', f'', f''', g, g'."""

    f: float
    f1: float
    f2: float
    f3: float
    g: float
    g1: float


@dataclass(frozen=True)
class SurfaceCurvatures:
    """Principal, Gaussian and mean curvatures at one s."""

    kappa1: float
    kappa2: float
    gauss_k: float
    mean_h: float


def _bisect_boundary(feasible, s_ok, s_bad):
    """Refine a feasible/infeasible bracket; returns the feasible endpoint."""
    for _ in range(200):
        mid = 0.5 * (s_ok + s_bad)
        if mid == s_ok or mid == s_bad:
            break
        if feasible(mid):
            s_ok = mid
        else:
            s_bad = mid
    return s_ok


def _march_boundary(feasible, seed, direction, cap, step0):
    """March geometrically from a feasible seed until infeasible, then bisect."""
    x = seed
    step = step0
    while abs(x - seed) + step <= cap:
        probe = x + direction * step
        if not feasible(probe):
            return _bisect_boundary(feasible, x, probe)
        x = probe
        step *= 1.6
    probe = seed + direction * cap
    if not feasible(probe):
        return _bisect_boundary(feasible, x, probe)
    return probe


class Profile:
    """Base profile: subclasses fill in _raw_jet, _height and the domain."""

    kind = "generic"

    def __init__(self, z_sign=1):
        if z_sign not in (1, -1):
            raise InvalidParams("z_sign must be +1 or -1")
        self.z_sign = z_sign
        self.domain = None  # (s_min, s_max), set by subclass

    # subclass API -----------------------------------------------------------
    def _raw_jet(self, s):
        """(f, f1, f2, f3) without domain checking."""
        raise NotImplementedError

    def _height(self, s):
        """g(s) with g anchored at the in-domain point nearest 0."""
        raise NotImplementedError

    # shared helpers ---------------------------------------------------------
    def _feasible(self, s):
        try:
            f, f1, f2, f3 = self._raw_jet(s)
        except (OverflowError, ValueError):
            return False
        if not all(map(math.isfinite, (f, f1, f2, f3))):
            return False
        return f >= RADIUS_FLOOR and 1.0 - f1 * f1 >= PHI_FLOOR

    def _check_domain(self, s):
        lo, hi = self.domain
        slack = 1e-12 * max(1.0, abs(lo), abs(hi))
        if not (lo - slack <= s <= hi + slack):
            raise OutOfDomain(f"s={s!r} outside profile domain [{lo!r}, {hi!r}]")
        return min(max(s, lo), hi)

    def _g_base(self):
        """Anchor point for g: the in-domain s closest to 0."""
        lo, hi = self.domain
        return min(max(0.0, lo), hi)

    # public surface ----------------------------------------------------------
    def jet(self, s):
        s = self._check_domain(float(s))
        f, f1, f2, f3 = self._raw_jet(s)
        g1 = self.z_sign * math.sqrt(max(0.0, 1.0 - f1 * f1))
        return ProfileJet(f, f1, f2, f3, self._height(s), g1)

    def radius(self, s):
        s = self._check_domain(float(s))
        return self._raw_jet(s)[0]

    def height(self, s):
        s = self._check_domain(float(s))
        return self._height(s)

    def contains(self, s):
        lo, hi = self.domain
        slack = 1e-12 * max(1.0, abs(lo), abs(hi))
        return lo - slack <= s <= hi + slack


class FlatProfile(Profile):
    """Linear profile f(s) = slope*s + intercept (zero Gaussian curvature).

    slope = 0 gives a cylinder of radius `intercept`, 0 < |slope| < 1 a
    circular cone.  |slope| = 1 (a plane orthogonal to the axis) has no
    admissible domain under the |f'| < 1 policy.
    """

    kind = "flat"

    def __init__(self, slope, intercept, z_sign=1):
        super().__init__(z_sign)
        slope = float(slope)
        intercept = float(intercept)
        if abs(slope) > 1.0:
            raise InvalidParams(f"flat profile needs |slope| <= 1, got {slope!r}")
        if 1.0 - slope * slope < PHI_FLOOR:
            raise EmptyDomain("|slope| = 1: profile orthogonal to the axis")
        self.slope = slope
        self.intercept = intercept
        if slope == 0.0:
            if intercept < RADIUS_FLOOR:
                raise EmptyDomain("cylinder radius below the admissible floor")
            self.domain = (-SPAN_CAP, SPAN_CAP)
        elif slope > 0.0:
            lo = (RADIUS_FLOOR - intercept) / slope
            self.domain = (lo, lo + 2.0 * SPAN_CAP)
        else:
            hi = (RADIUS_FLOOR - intercept) / slope
            self.domain = (hi - 2.0 * SPAN_CAP, hi)

    def _raw_jet(self, s):
        return (self.slope * s + self.intercept, self.slope, 0.0, 0.0)

    def _height(self, s):
        return self.z_sign * math.sqrt(1.0 - self.slope ** 2) * (s - self._g_base())


class ConstantCurvatureProfile(Profile):
    """Profile of constant nonzero Gaussian curvature K.

    f(s) = even_coeff*cos(sqrt(K) s) + odd_coeff*sin(sqrt(K) s)  for K > 0,
    f(s) = even_coeff*cosh(w s) + odd_coeff*sinh(w s), w = sqrt(-K), K < 0.
    Either way f'' = -K f.  The height g(s) has no elementary closed form in
    general and is evaluated by panel quadrature of sqrt(1 - f'^2).
    """

    def __init__(self, gauss_k, even_coeff, odd_coeff, z_sign=1):
        super().__init__(z_sign)
        gauss_k = float(gauss_k)
        even_coeff = float(even_coeff)
        odd_coeff = float(odd_coeff)
        if gauss_k == 0.0:
            raise InvalidParams("gauss_k must be nonzero; use FlatProfile for K=0")
        if even_coeff == 0.0 and odd_coeff == 0.0:
            raise InvalidParams("even_coeff and odd_coeff cannot both vanish")
        self.gauss_k = gauss_k
        self.even_coeff = even_coeff
        self.odd_coeff = odd_coeff
        self._om = math.sqrt(abs(gauss_k))
        self._g = None
        self.domain = self._find_domain()

    @property
    def kind(self):
        return "spherical_k" if self.gauss_k > 0.0 else "hyperbolic_k"

    def _raw_jet(self, s):
        om = self._om
        e = self.even_coeff
        o = self.odd_coeff
        u = om * s
        if self.gauss_k > 0.0:
            f = e * math.cos(u) + o * math.sin(u)
            f1 = om * (-e * math.sin(u) + o * math.cos(u))
        else:
            # exponential split of e*cosh(u) + o*sinh(u); the cosh/sinh form
            # cancels catastrophically when |e| ~ |o| and |u| is large
            if abs(u) > 700.0:
                raise OverflowError
            p = 0.5 * (e + o) * math.exp(u)
            q = 0.5 * (e - o) * math.exp(-u)
            f = p + q
            f1 = om * (p - q)
        return (f, f1, -self.gauss_k * f, -self.gauss_k * f1)

    def _find_domain(self):
        om = self._om
        e = self.even_coeff
        o = self.odd_coeff
        if self.gauss_k > 0.0:
            seed = math.atan2(o, e) / om
            if not self._feasible(seed):
                raise EmptyDomain("peak radius below the admissible floor")
            cap = math.pi / om
            step0 = cap / 512.0
        else:
            tol = 1e-14 * max(1.0, abs(e), abs(o))
            if abs(abs(e) - abs(o)) <= tol:
                if e <= 0.0:
                    raise EmptyDomain("exponential profile with non-positive scale")
                # f = e*exp(+-u); seed where |f'| = 1/2
                sign = 1.0 if o >= 0.0 else -1.0
                seed = sign * math.log(0.5 / (om * e)) / om
            elif abs(e) > abs(o):
                if e <= 0.0:
                    raise EmptyDomain("profile negative everywhere")
                seed = math.atanh(-o / e) / om
            else:
                u0 = math.atanh(-e / o)
                direction = 1.0 if o > 0.0 else -1.0
                seed = None
                off = 1e-12
                while off <= 60.0:
                    probe = (u0 + direction * off) / om
                    if self._feasible(probe):
                        seed = probe
                        break
                    off *= 2.0
                if seed is None:
                    raise EmptyDomain("no admissible region next to the profile zero")
            if not self._feasible(seed):
                raise EmptyDomain("no admissible s interval")
            cap = 60.0 / om
            step0 = cap / 16384.0
        lo = _march_boundary(self._feasible, seed, -1.0, cap, step0)
        hi = _march_boundary(self._feasible, seed, +1.0, cap, step0)
        return (lo, hi)

    def _height(self, s):
        if self._g is None:
            lo, hi = self.domain
            def dg(x):
                f1 = self._raw_jet(x)[1]
                return self.z_sign * math.sqrt(max(0.0, 1.0 - f1 * f1))
            panel = min(0.05, (hi - lo) / 16.0)
            self._g = CumulativeIntegral(dg, lo, hi, base=self._g_base(),
                                         max_panel=panel)
        return self._g(s)


class MinimalProfile(Profile):
    """Catenoid profile: the only non-planar minimal rotational surface.

    f(s) = sqrt(1 + n^2 (s + s_shift)^2) / n,
    g(s) = z_sign * asinh(n (s + s_shift)) / n + z_shift,
    so f = cosh(n (g - z_shift)) / n and the mean curvature vanishes.
    The waist (radius 1/n) sits at s = -s_shift.
    """

    kind = "minimal"

    def __init__(self, n, s_shift=0.0, z_shift=0.0, z_sign=1):
        super().__init__(z_sign)
        n = float(n)
        if n <= 0.0:
            raise InvalidParams(f"waist curvature n must be positive, got {n!r}")
        if 1.0 / n < RADIUS_FLOOR:
            raise EmptyDomain("waist radius below the admissible floor")
        self.n = n
        self.s_shift = float(s_shift)
        self.z_shift = float(z_shift)
        half = min(math.sqrt(1.0 / PHI_FLOOR - 1.0) / n, SPAN_CAP)
        self.domain = (-self.s_shift - half, -self.s_shift + half)

    def _raw_jet(self, s):
        n = self.n
        w = s + self.s_shift
        q2 = 1.0 + n * n * w * w
        q = math.sqrt(q2)
        return (q / n, n * w / q, n / (q2 * q), -3.0 * n ** 3 * w / (q2 * q2 * q))

    def _height(self, s):
        n = self.n
        base = self._g_base()
        return (self.z_sign * (math.asinh(n * (s + self.s_shift))
                               - math.asinh(n * (base + self.s_shift))) / n
                + self.z_shift)


class PrincipalRatioProfile(Profile):
    """Profile with a constant ratio of principal curvatures kappa1 = ratio * kappa2.

    The defining relation f f'' = ratio (f'^2 - 1) has the first integral
    f'^2 + d^2 f^(2 ratio) = 1 with a positive constant d.  Rather than the
    square-root form f' = +-sqrt(1 - d^2 f^(2 ratio)) (non-Lipschitz at
    f' = 0, where a spurious constant solution traps explicit steppers) the
    profile integrates the differentiated system

        f'' = -ratio d^2 f^(2 ratio - 1),   g' = z_sign d f^ratio,

    which is smooth for f > 0 and passes through f' = 0 folds.  The third
    derivative follows from differentiating the defining relation:
    f' f'' + f f''' = 2 ratio f' f''  =>  f''' = (2 ratio - 1) f' f'' / f.

    ratio = 1 realizes the unit-radius sphere family, ratio = -1 the catenoid
    (d = waist radius), ratio = 2 the inflated-membrane ("mylar balloon")
    shape, ratio = -1/2 the Flamm paraboloid.
    """

    kind = "crpc"

    def __init__(self, ratio, d, radius0, slope_sign=1, z_sign=1,
                 span=12.0, ode_tol=1e-11, max_step=None):
        super().__init__(z_sign)
        ratio = float(ratio)
        d = float(d)
        radius0 = float(radius0)
        if ratio == 0.0:
            raise InvalidParams("ratio must be nonzero; use FlatProfile for flat surfaces")
        if d <= 0.0:
            raise InvalidParams(f"first-integral constant d must be positive, got {d!r}")
        if radius0 < RADIUS_FLOOR:
            raise InvalidParams("radius0 below the admissible floor")
        if slope_sign not in (1, -1):
            raise InvalidParams("slope_sign must be +1 or -1")
        c0 = d * d * radius0 ** (2.0 * ratio)
        if c0 > 1.0:
            raise InvalidParams(
                f"d^2 radius0^(2 ratio) = {c0!r} > 1 violates f'^2 + d^2 f^(2k) = 1")
        self.ratio = ratio
        self.d = d
        self.radius0 = radius0
        self.slope_sign = slope_sign
        self.ode_tol = float(ode_tol)

        k = ratio
        dd = d * d

        def rhs(s, y):
            f, fp, _ = y
            return (fp, -k * dd * f ** (2.0 * k - 1.0), self.z_sign * d * f ** k)

        def stop(s, y):
            f = y[0]
            if not (f > RADIUS_FLOOR):
                return True
            return dd * f ** (2.0 * k) <= PHI_FLOOR

        fp0 = slope_sign * math.sqrt(max(0.0, 1.0 - c0))
        y0 = (radius0, fp0, 0.0)
        self._fwd = solve_ivp(rhs, 0.0, y0, span, self.ode_tol,
                              max_step=max_step, stop=stop)
        self._bwd = solve_ivp(rhs, 0.0, y0, -span, self.ode_tol,
                              max_step=max_step, stop=stop)
        self.domain = (self._bwd.span[0], self._fwd.span[1])

    def _state(self, s):
        if s >= 0.0:
            return self._fwd.eval(s)
        return self._bwd.eval(s)

    def _raw_jet(self, s):
        # f' from the first integral (sign from the integrated slope) keeps
        # the jet an exact function of f: curvature identities then hold to
        # rounding instead of to the ODE drift
        f, fp, _ = self._state(s)
        k = self.ratio
        f1 = math.copysign(
            math.sqrt(max(0.0, 1.0 - self.d * self.d * f ** (2.0 * k))), fp)
        f2 = -k * self.d * self.d * f ** (2.0 * k - 1.0)
        f3 = (2.0 * k - 1.0) * f1 * f2 / f
        return (f, f1, f2, f3)

    def _height(self, s):
        return float(self._state(s)[2])


class GenericProfile(Profile):
    """Profile from a user-supplied jet callable s -> (f, f1, f2, f3).

    The arc-length constraint is enforced by construction (g' is derived
    from f'); at build time the jet is probed on a 64-point grid for
    admissibility and for internal consistency of f1 against a finite
    difference of f.
    """

    kind = "generic"

    def __init__(self, jet_fn, domain, z_sign=1):
        super().__init__(z_sign)
        lo, hi = float(domain[0]), float(domain[1])
        if not lo < hi:
            raise InvalidParams("domain must be a nonempty interval")
        self._jet_fn = jet_fn
        self.domain = (lo, hi)
        self._g = None
        self._validate()

    def _raw_jet(self, s):
        f, f1, f2, f3 = self._jet_fn(s)
        return (float(f), float(f1), float(f2), float(f3))

    def _validate(self):
        lo, hi = self.domain
        grid = np.linspace(lo, hi, 64)
        h = (hi - lo) / 4096.0
        for s in grid:
            if not self._feasible(s):
                raise InvalidParams(f"generic jet inadmissible at s={s!r}")
            f, f1, _, _ = self._raw_jet(s)
            sl = min(max(s, lo + h), hi - h)
            fd = (self._raw_jet(sl + h)[0] - self._raw_jet(sl - h)[0]) / (2.0 * h)
            f1l = self._raw_jet(sl)[1]
            if abs(fd - f1l) > 1e-4 * (1.0 + abs(f1l)):
                raise InvalidParams(
                    f"generic jet inconsistent: f1={f1l!r} but d f/ds ~ {fd!r} near s={sl!r}")

    def _height(self, s):
        if self._g is None:
            lo, hi = self.domain
            def dg(x):
                f1 = self._raw_jet(x)[1]
                return self.z_sign * math.sqrt(max(0.0, 1.0 - f1 * f1))
            panel = min(0.05, (hi - lo) / 16.0)
            self._g = CumulativeIntegral(dg, lo, hi, base=self._g_base(),
                                         max_panel=panel)
        return self._g(s)


_KIND_BUILDERS = {
    "flat": FlatProfile,
    "spherical_k": ConstantCurvatureProfile,
    "hyperbolic_k": ConstantCurvatureProfile,
    "minimal": MinimalProfile,
    "crpc": PrincipalRatioProfile,
    "generic": GenericProfile,
}


def build_profile(kind, params):
    """Construct a profile by kind name and parameter dict."""
    key = str(kind).lower()
    builder = _KIND_BUILDERS.get(key)
    if builder is None:
        raise InvalidParams(f"unknown profile kind {kind!r}")
    model = builder(**params)
    if key == "spherical_k" and model.gauss_k <= 0.0:
        raise InvalidParams("spherical_k requires gauss_k > 0")
    if key == "hyperbolic_k" and model.gauss_k >= 0.0:
        raise InvalidParams("hyperbolic_k requires gauss_k < 0")
    return model


def profile_jet(model, s):
    """Jet (f, f', f'', f''', g, g') of the profile at s."""
    return model.jet(s)


def surface_point(model, s, theta):
    """Point Phi(s, theta) = (f cos theta, f sin theta, g) on the surface."""
    s = model._check_domain(float(s))
    f = model._raw_jet(s)[0]
    g = model._height(s)
    return np.array([f * math.cos(theta), f * math.sin(theta), g])


def unit_normal(model, s, theta):
    """Outward-oriented unit normal (-g' cos theta, -g' sin theta, f')."""
    j = model.jet(s)
    return np.array([-j.g1 * math.cos(theta), -j.g1 * math.sin(theta), j.f1])


def surface_curvatures(model, s):
    """Principal, Gaussian and mean curvatures at s.

    kappa1 = -f''/sqrt(1-f'^2) (meridian), kappa2 = sqrt(1-f'^2)/f (parallel),
    K = -f''/f, H = (1 - f'^2 - f f'')/(2 f sqrt(1-f'^2)); the z_sign branch
    flips the normal, hence kappa1, kappa2 and H, while K is branch-free.
    """
    j = model.jet(s)
    w2 = 1.0 - j.f1 * j.f1
    if w2 < PHI_FLOOR:
        raise UmbilicPoleSingularity(f"1-f'^2 = {w2!r} below threshold at s={s!r}")
    w = math.sqrt(w2)
    sg = model.z_sign
    kappa1 = -sg * j.f2 / w
    kappa2 = sg * w / j.f
    return SurfaceCurvatures(kappa1, kappa2, kappa1 * kappa2,
                             0.5 * (kappa1 + kappa2))
