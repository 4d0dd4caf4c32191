"""Loxodromes (constant-angle curves) on rotational surfaces.

A loxodrome crossing every meridian at angle psi is, in arc-length
parametrization,

    alpha(t) = (f(s(t)) cos theta(t), f(s(t)) sin theta(t), g(s(t))),
    s(t) = cos(psi) t + c,
    theta(t) = theta0 + eps sin(psi) * integral_{t0}^{t} dxi / f(s(xi)).

The longitude theta has an elementary closed form on every constant-curvature
and minimal surface family; other profiles fall back to adaptive quadrature.
Curvature and torsion come from the closed expressions in terms of the
profile jet (independent of theta), with the sign conventions: kappa >= 0,
torsion follows the det(a1, a2, a3)/kappa^2 convention and flips with the
z-branch of the profile (mirror symmetry).
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import (
    ClosedFormCaseGap,
    EmptyTDomain,
    KindMismatch,
    LogSingularity,
    OutOfDomain,
    PoleSingularity,
    ToleranceNotMet,
)
from .numerics import integrate_adaptive
from .profiles import (
    PHI_FLOOR,
    ConstantCurvatureProfile,
    FlatProfile,
    MinimalProfile,
    PrincipalRatioProfile,
    surface_curvatures,
    surface_point,
    unit_normal,
)

KAPPA_FLOOR = 1e-12
_CASE_TOL = 1e-14


@dataclass(frozen=True)
class LoxodromeSpec:
    """Constants of a loxodrome: angle, winding sign and integration offsets.

    psi     -- angle with the meridians, in [0, pi]
    epsilon -- winding direction, +1 or -1
    c       -- s(t) = cos(psi) t + c
    t0      -- longitude anchor: theta(t0) = theta0
    theta0  -- longitude at t0
    """

    psi: float
    epsilon: int = 1
    c: float = 0.0
    t0: float = 0.0
    theta0: float = 0.0

    def __post_init__(self):
        if not 0.0 <= self.psi <= math.pi:
            raise ValueError(f"psi must lie in [0, pi], got {self.psi!r}")
        if self.epsilon not in (1, -1):
            raise ValueError(f"epsilon must be +1 or -1, got {self.epsilon!r}")

    @property
    def a(self):
        """cos(psi): rate of s per unit arc length."""
        return math.cos(self.psi)

    @property
    def b(self):
        """epsilon sin(psi): signed transverse speed."""
        return self.epsilon * math.sin(self.psi)


@dataclass(frozen=True)
class CurveJet:
    """Position and first three t-derivatives of a space curve."""

    p0: np.ndarray
    p1: np.ndarray
    p2: np.ndarray
    p3: np.ndarray


def s_of_t(spec, t):
    """Profile parameter along the loxodrome: s(t) = cos(psi) t + c."""
    return spec.a * t + spec.c


def _atanh_ext(x):
    """Real antiderivative branch for 1/(1-x^2): atanh inside (-1,1), acoth outside.

    Within one connected admissible domain (f > 0 throughout) the argument
    never crosses |x| = 1 (that happens exactly where f = 0), so the two
    branches never mix along a single curve; acoth is continuous through
    x = +-inf, which the argument does pass when tan/tanh half-angle poles
    fall inside the domain.
    """
    ax = abs(x)
    if ax < 1.0:
        return math.atanh(x)
    if ax == 1.0:
        raise LogSingularity(f"artanh argument hit +-1 (x={x!r})")
    return math.atanh(1.0 / x)


class Loxodrome:
    """A constant-angle curve bound to a profile model.

    Built by make_loxodrome; carries the closed-form longitude case in
    theta_mode ('closed:<case>' or 'numeric') and the admissible curve
    parameter interval t_domain.
    """

    def __init__(self, surface, spec, theta_mode, t_domain, theta_fn, quad_tol):
        self.surface = surface
        self.spec = spec
        self.theta_mode = theta_mode
        self.t_domain = t_domain
        self._theta_fn = theta_fn
        self._quad_tol = quad_tol

    # --- parameter bookkeeping ------------------------------------------------

    def _check_t(self, t):
        lo, hi = self.t_domain
        if math.isinf(lo) and math.isinf(hi):
            return float(t)
        slack = 1e-12 * max(1.0, abs(lo), abs(hi))
        if not (lo - slack <= t <= hi + slack):
            raise OutOfDomain(f"t={t!r} outside curve domain [{lo!r}, {hi!r}]")
        return min(max(float(t), lo), hi)

    def s(self, t):
        return s_of_t(self.spec, t)

    def theta(self, t):
        t = self._check_t(t)
        if self._theta_fn is not None:
            return self._theta_fn(t)
        sp = self.spec
        try:
            r = integrate_adaptive(
                lambda xi: 1.0 / self.surface.radius(s_of_t(sp, xi)),
                sp.t0, t, self._quad_tol)
        except ToleranceNotMet as exc:
            # near rims the longitude winds by huge angles and an absolute
            # tolerance is unreachable; accept a relatively converged estimate
            r = exc.result
            if r.error_estimate > 1e-8 * max(1.0, abs(r.value)):
                raise
        return sp.theta0 + sp.b * r.value

    def point(self, t):
        """alpha(t); lies on the surface exactly by construction."""
        t = self._check_t(t)
        return surface_point(self.surface, self.s(t), self.theta(t))

    # --- derivatives and curvature --------------------------------------------

    def jet(self, t):
        """CurveJet: alpha and its first three t-derivatives.

        z-components use g' = sgn*sqrt(1-f'^2), g'' = -sgn*f'f''/sqrt(1-f'^2),
        g''' = -sgn*(f'f'''(1-f'^2) + f''^2)/(1-f'^2)^(3/2).
        """
        t = self._check_t(t)
        sp = self.spec
        a = sp.a
        b = sp.b
        s = self.s(t)
        j = self.surface.jet(s)
        th = self.theta(t)
        ct = math.cos(th)
        st = math.sin(th)
        f, f1, f2, f3 = j.f, j.f1, j.f2, j.f3
        w2 = 1.0 - f1 * f1
        w = math.sqrt(max(0.0, w2))
        sg = self.surface.z_sign
        g1 = sg * w
        g2 = 0.0 if w == 0.0 else -sg * f1 * f2 / w
        g3 = 0.0 if w == 0.0 else -sg * (f1 * f3 * w2 + f2 * f2) / (w2 * w)
        p0 = np.array([f * ct, f * st, j.g])
        p1 = np.array([a * f1 * ct - b * st, a * f1 * st + b * ct, a * g1])
        q = a * a * f2 - b * b / f
        r = a * b * f1 / f
        p2 = np.array([q * ct - r * st, q * st + r * ct, a * a * g2])
        # sin-coefficient of the third derivative; note the a^2 on the f f''
        # term (chain rule through theta' = b/f applied to both p2 terms)
        S = (b / (f * f)) * (b * b + a * a * f1 * f1 - 2.0 * a * a * f * f2)
        c3 = a ** 3 * f3
        p3 = np.array([S * st + c3 * ct, -S * ct + c3 * st, a ** 3 * g3])
        return CurveJet(p0, p1, p2, p3)

    def kappa_tau(self, t):
        """Frenet curvature (>= 0) and torsion from the profile jet.

        kappa^2 = a^4 f''^2/(1-f'^2) + (b^4 + a^2 b^2 f'^2)/f^2
                  - 2 a^2 b^2 f''/f,
        tau follows from det(a1, a2, a3)/kappa^2 expanded in the jet; it
        carries the z-branch sign (mirrored curve has mirrored torsion).
        Returns tau = nan (undefined) where kappa < 1e-12.
        """
        t = self._check_t(t)
        j = self.surface.jet(self.s(t))
        sp = self.spec
        return _kappa_tau_from_jet(sp.a, sp.b, j, self.surface.z_sign)

    def normal_curvature(self, t):
        """Euler: kappa_n = a^2 kappa1 + b^2 kappa2 at s(t)."""
        t = self._check_t(t)
        sc = surface_curvatures(self.surface, self.s(t))
        sp = self.spec
        return sp.a * sp.a * sc.kappa1 + sp.b * sp.b * sc.kappa2


def _kappa_tau_from_jet(a, b, j, z_sign):
    f, f1, f2, f3 = j.f, j.f1, j.f2, j.f3
    w2 = 1.0 - f1 * f1
    if w2 < PHI_FLOOR:
        raise PoleSingularity(f"1-f'^2 = {w2!r} below threshold")
    k2 = (a ** 4 * f2 * f2 / w2
          + (b ** 4 + a * a * b * b * f1 * f1) / (f * f)
          - 2.0 * a * a * b * b * f2 / f)
    kappa = math.sqrt(max(0.0, k2))
    if kappa < KAPPA_FLOOR:
        return kappa, math.nan
    inner = (-(b * b) * w2 * w2 * (b * b + a * a * f1 * f1)
             + a * a * f * f2 * w2 * (3.0 * b * b + (a * a - 2.0 * b * b) * f1 * f1)
             + a * a * f * f * f2 * f2 * (-2.0 * a * a + b * b + 3.0 * a * a * f1 * f1)
             - a ** 4 * f ** 3 * f2 ** 3
             + a * a * f * f * f1 * f3 * w2)
    tau = -(a * b) / (k2 * f ** 3 * w2 ** 1.5) * inner
    return kappa, z_sign * tau


# --- closed-form longitude cases ---------------------------------------------

def _near(x, y, scale=1.0):
    return abs(x - y) <= _CASE_TOL * max(1.0, abs(scale))


def _theta_cases(surface, spec):
    """Yield (case_name, F) where theta(t) = F(t) - F(t0) + theta0."""
    a = spec.a
    b = spec.b
    c = spec.c

    if _near(b, 0.0):
        return "meridian", lambda t: 0.0
    if _near(a, 0.0):
        fc = surface.radius(c)
        return "parallel", lambda t: b / fc * t

    if isinstance(surface, FlatProfile):
        slope = surface.slope
        radius_c = slope * c + surface.intercept
        if _near(slope, 0.0):
            return "flat_linear", lambda t: b / radius_c * t

        def flat_log(t):
            arg = a * slope * t + radius_c
            if arg == 0.0:
                raise LogSingularity("radius vanished inside the log")
            return (b / (a * slope)) * math.log(abs(arg))
        return "flat_log", flat_log

    if isinstance(surface, ConstantCurvatureProfile):
        om = surface._om
        e = surface.even_coeff
        o = surface.odd_coeff
        scale = max(abs(e), abs(o))
        if surface.gauss_k > 0.0:
            if _near(e, 0.0, scale):
                def posk_log_tan(t):
                    half = 0.5 * om * (a * t + c)
                    arg = math.tan(half)
                    if arg == 0.0:
                        raise LogSingularity("tan argument vanished")
                    return (b / (a * om * o)) * math.log(abs(arg))
                return "posk_log_tan", posk_log_tan

            hyp = math.hypot(e, o)

            def posk_atanh(t):
                half = 0.5 * om * (a * t + c)
                arg = (e * math.tan(half) - o) / hyp
                return (2.0 * b / (a * om * hyp)) * _atanh_ext(arg)
            return "posk_atanh", posk_atanh

        # K < 0
        if _near(abs(e), abs(o), scale):
            if _near(e, o, scale):
                def negk_exp(t):
                    return -(b / (a * om * e)) * math.exp(-om * (a * t + c))
                return "negk_exp", negk_exp

            def negk_exp_neg(t):
                # f = e*exp(-u): mirrored exponential case (absent from the
                # textbook case list but integrates the same way)
                return (b / (a * om * e)) * math.exp(om * (a * t + c))
            return "negk_exp_neg", negk_exp_neg
        if _near(e, 0.0, scale):
            def negk_log_tanh(t):
                arg = math.tanh(0.5 * om * (a * t + c))
                if arg == 0.0:
                    raise LogSingularity("tanh argument vanished")
                return (b / (a * om * o)) * math.log(abs(arg))
            return "negk_log_tanh", negk_log_tanh
        if abs(e) > abs(o):
            root = math.sqrt(e * e - o * o)

            def negk_atan(t):
                arg = (e * math.tanh(0.5 * om * (a * t + c)) + o) / root
                return (2.0 * b / (a * om * root)) * math.atan(arg)
            return "negk_atan", negk_atan

        root = math.sqrt(o * o - e * e)

        def negk_acoth(t):
            # sign differs from the usual tabulated form; fixed against the
            # quadrature oracle (d theta/dt = b/f)
            arg = (e * math.tanh(0.5 * om * (a * t + c)) + o) / root
            return -(2.0 * b / (a * om * root)) * _atanh_ext(arg)
        return "negk_acoth", negk_acoth

    if isinstance(surface, MinimalProfile):
        n = surface.n
        p = c + surface.s_shift

        def minimal_asinh(t):
            return (b / a) * math.asinh(n * (a * t + p))
        return "minimal_asinh", minimal_asinh

    return None, None


def make_loxodrome(surface, spec, *, allow_numeric=True, force_numeric=False,
                   quad_tol=1e-12):
    """Bind a loxodrome spec to a profile model.

    Picks the closed-form longitude matching the surface family (or numeric
    quadrature as fallback / when forced).  Raises EmptyTDomain when the
    parallel case sits outside the profile domain, OutOfDomain when t0 is
    not an admissible anchor, ClosedFormCaseGap when no closed form applies
    and allow_numeric is False.
    """
    a = spec.a
    b = spec.b
    lo, hi = surface.domain
    if _near(a, 0.0) and not _near(b, 0.0):
        if not surface.contains(spec.c):
            raise EmptyTDomain(f"parallel at c={spec.c!r} is off the surface")
        t_domain = (-math.inf, math.inf)
    elif a > 0.0:
        t_domain = ((lo - spec.c) / a, (hi - spec.c) / a)
    else:
        t_domain = ((hi - spec.c) / a, (lo - spec.c) / a)

    case, F = _theta_cases(surface, spec)
    if case is None and force_numeric is False and not allow_numeric:
        raise ClosedFormCaseGap(
            f"no closed longitude form for {surface.kind!r} with psi={spec.psi!r}")

    needs_anchor = case not in ("meridian", "parallel")
    if needs_anchor:
        tlo, thi = t_domain
        slack = 1e-12 * max(1.0, abs(tlo), abs(thi))
        if not (tlo - slack <= spec.t0 <= thi + slack):
            raise OutOfDomain(
                f"t0={spec.t0!r} outside curve domain [{tlo!r}, {thi!r}]")

    if force_numeric or case is None:
        return Loxodrome(surface, spec, "numeric", t_domain, None, quad_tol)

    Ft0 = F(spec.t0) if needs_anchor else F(0.0) * 0.0
    if case == "meridian":
        theta_fn = lambda t: spec.theta0
    elif case == "parallel":
        theta_fn = lambda t: spec.theta0 + F(t) - F(spec.t0)
    else:
        theta_fn = lambda t: spec.theta0 + F(t) - Ft0
    return Loxodrome(surface, spec, f"closed:{case}", t_domain, theta_fn, quad_tol)


# --- module-level operation surface ------------------------------------------

def theta_of_t(lox, t):
    """Longitude theta(t); d theta/dt = eps sin(psi)/f(s(t))."""
    return lox.theta(t)


def loxodrome_point(lox, t):
    return lox.point(t)


def curve_jet(lox, t):
    return lox.jet(t)


def kappa_tau_general(lox, t):
    """Curvature and torsion from the general jet formulas."""
    return lox.kappa_tau(t)


def kappa_tau_const_k(lox, gauss_k, t):
    """Curvature/torsion specialized to constant Gaussian curvature K.

    Substitutes f'' = -K f (and f''' = -K f') into the general expressions:

      kappa = sqrt(2 a^2 b^2 K + a^4 K^2 f^2/(1-f'^2) + (b^4+a^2 b^2 f'^2)/f^2)
      tau   = -(a b / (kappa^2 f^3 (1-f'^2)^{3/2})) * (a^4 K^3 f^6
              - b^2 (1-f'^2)^2 (b^2 + a^2 f'^2)
              + a^2 K^2 f^4 (-2 a^2 + b^2 + 3 a^2 f'^2)
              - a^2 K f^2 (1-f'^2) (3 b^2 + (1 + a^2 - 2 b^2) f'^2))
    """
    surf = lox.surface
    if isinstance(surf, FlatProfile):
        if not _near(gauss_k, 0.0):
            raise KindMismatch(f"flat surface realizes K=0, not {gauss_k!r}")
    elif isinstance(surf, ConstantCurvatureProfile):
        if abs(surf.gauss_k - gauss_k) > 1e-12 * max(1.0, abs(surf.gauss_k)):
            raise KindMismatch(
                f"surface has K={surf.gauss_k!r}, requested {gauss_k!r}")
    else:
        raise KindMismatch(f"{surf.kind!r} does not realize constant curvature")
    t = lox._check_t(t)
    j = surf.jet(lox.s(t))
    sp = lox.spec
    a = sp.a
    b = sp.b
    f = j.f
    f1 = j.f1
    w2 = 1.0 - f1 * f1
    if w2 < PHI_FLOOR:
        raise PoleSingularity(f"1-f'^2 = {w2!r} below threshold")
    K = gauss_k
    k2 = (2.0 * a * a * b * b * K
          + a ** 4 * K * K * f * f / w2
          + (b ** 4 + a * a * b * b * f1 * f1) / (f * f))
    kappa = math.sqrt(max(0.0, k2))
    if kappa < KAPPA_FLOOR:
        return kappa, math.nan
    inner = (a ** 4 * K ** 3 * f ** 6
             - b * b * w2 * w2 * (b * b + a * a * f1 * f1)
             + a * a * K * K * f ** 4 * (-2.0 * a * a + b * b + 3.0 * a * a * f1 * f1)
             - a * a * K * f * f * w2
             * (3.0 * b * b + (1.0 + a * a - 2.0 * b * b) * f1 * f1))
    tau = -(a * b) / (k2 * f ** 3 * w2 ** 1.5) * inner
    return kappa, surf.z_sign * tau


def kappa_tau_crpc(lox, ratio, d, t):
    """Curvature/torsion on a constant principal-curvature-ratio surface.

    Uses the first integral f'^2 = 1 - d^2 f^(2k), k = ratio:

      kappa = sqrt(b^2 + d^2 a^2 (a^2 k^2 + 2 k b^2 - b^2) f^(2k)) / f
      tau   = (a b d / (kappa^2 f^(3-k))) * (b^2 + a^2 k^2
              - d^2 (a^2 b^2 + (a^4 - 2 a^2 b^2 - a^2) k
                     + (2 a^2 - 3 a^4) k^2 + a^4 k^3) f^(2k))

    Applies to crpc profiles and to the minimal family (k=-1, d=1/n).
    """
    surf = lox.surface
    if isinstance(surf, PrincipalRatioProfile):
        ok = (abs(surf.ratio - ratio) <= 1e-12 * max(1.0, abs(surf.ratio))
              and abs(surf.d - d) <= 1e-12 * max(1.0, abs(surf.d)))
    elif isinstance(surf, MinimalProfile):
        ok = _near(ratio, -1.0) and abs(d - 1.0 / surf.n) <= 1e-12 * max(1.0, d)
    else:
        ok = False
    if not ok:
        raise KindMismatch(
            f"{surf.kind!r} does not realize kappa1 = {ratio!r} * kappa2 with d={d!r}")
    t = lox._check_t(t)
    j = surf.jet(lox.s(t))
    sp = lox.spec
    a = sp.a
    b = sp.b
    k = ratio
    f = j.f
    f2k = f ** (2.0 * k)
    k2 = (b * b + d * d * a * a * (a * a * k * k + 2.0 * k * b * b - b * b) * f2k) / (f * f)
    kappa = math.sqrt(max(0.0, k2))
    if kappa < KAPPA_FLOOR:
        return kappa, math.nan
    poly = (a * a * b * b
            + (a ** 4 - 2.0 * a * a * b * b - a * a) * k
            + (2.0 * a * a - 3.0 * a ** 4) * k * k
            + a ** 4 * k ** 3)
    tau = (a * b * d) / (k2 * f ** (3.0 - k)) * (b * b + a * a * k * k - d * d * poly * f2k)
    return kappa, surf.z_sign * tau


def normal_curvature(lox, t):
    """Euler's formula along the curve: kappa_n = a^2 kappa1 + b^2 kappa2."""
    return lox.normal_curvature(t)


def shape_operator_normal_curvature(lox, t, h=None):
    """kappa_n = <S(T), T> with S(T) = -dN/dt computed by finite differences.

    Independent of the principal-curvature formulas: differentiates the unit
    normal along the curve numerically (central differences, one Richardson
    refinement) and projects on the analytic unit tangent.
    """
    t = lox._check_t(t)
    if h is None:
        h = 1e-3 * max(1.0, abs(t))
    lo, hi = lox.t_domain
    room = min(t - lo, hi - t)
    if math.isfinite(room):
        h = min(h, 0.4 * room)
    if h <= 0.0:
        raise OutOfDomain("no room for normal differentiation stencil")

    def N(x):
        return unit_normal(lox.surface, lox.s(x), lox.theta(x))

    def ddt(step):
        return (N(t + step) - N(t - step)) / (2.0 * step)

    dN = (4.0 * ddt(0.5 * h) - ddt(h)) / 3.0
    T = lox.jet(t).p1
    return float(np.dot(-dN, T))


def meridian_tangent(model, s, theta):
    """Unit tangent of the meridian through (s, theta)."""
    j = model.jet(s)
    return np.array([j.f1 * math.cos(theta), j.f1 * math.sin(theta), j.g1])
