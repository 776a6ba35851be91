"""Positive weights on intervals: distances, curvature, and closed-form families.

A weight is a strictly positive density ``w(t)`` on an open interval J.  It
induces a distance ``dist_w(a, b) = |integral_a^b w|`` and carries the
curvature quantity

    curv_w(t) = (w'(t)**2 - w(t) w''(t)) / w(t)**4,

which equals the Gauss curvature of the conformal strip metric w(Re z)|dz|.
The three closed-form families solving ``curv_w == -k**2`` (k >= 1) are

    sin:    w(t) = C1 / (k |sin(C1 t + C2)|)
    sinh:   w(t) = C1 / (k |sinh(C1 t + C2)|)
    linear: w(t) = 1 / (k |t + C|)

restricted to intervals on which the denominator keeps a single sign.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np
from scipy import integrate

# Central-difference steps.  First derivatives use the classic cbrt(eps) rule;
# second derivatives use eps**(1/4), which balances truncation against the
# eps/h**2 rounding term (cbrt(eps) leaves ~1e-4 noise for O(1) densities).
_FD_STEP_D1 = float(np.cbrt(np.finfo(float).eps))
_FD_STEP_D2 = float(np.finfo(float).eps ** 0.25)

FAMILY_KINDS = ("sin", "sinh", "linear")


class QuadratureError(RuntimeError):
    """Adaptive quadrature failed to converge; carries the achieved error estimate."""

    def __init__(self, message: str, estimate: float):
        super().__init__(f"{message} (achieved error estimate {estimate:.3e})")
        self.estimate = estimate


@dataclass(frozen=True)
class Interval:
    """Open interval (lo, hi); endpoints may be infinite but not both."""

    lo: float
    hi: float

    def __post_init__(self):
        if math.isnan(self.lo) or math.isnan(self.hi):
            raise ValueError("interval endpoint is NaN")
        if not self.lo < self.hi:
            raise ValueError(f"need lo < hi, got ({self.lo}, {self.hi})")
        if math.isinf(self.lo) and math.isinf(self.hi):
            raise ValueError("interval must not be the whole real line")

    def contains(self, t) -> bool:
        t = np.asarray(t, dtype=float)
        return bool(np.all(np.isfinite(t) & (t > self.lo) & (t < self.hi)))

    @property
    def finite(self) -> bool:
        return math.isfinite(self.lo) and math.isfinite(self.hi)

    def interior_point(self) -> float:
        """A representative interior point (midpoint through the atan chart)."""
        u0 = math.atan(self.lo) if math.isfinite(self.lo) else -math.pi / 2
        u1 = math.atan(self.hi) if math.isfinite(self.hi) else math.pi / 2
        return math.tan(0.5 * (u0 + u1))


@dataclass(frozen=True)
class GridSpec:
    """Uniform evaluation grid, shrunk away from the interval endpoints.

    Finite intervals shrink each end by ``shrink * span``.  Intervals with an
    infinite end are passed through the atan compactification, shrunk by
    ``shrink`` there, and mapped back through tan.
    """

    n: int = 1001
    shrink: float = 1e-6

    def points(self, interval: Interval) -> np.ndarray:
        if self.n < 1:
            raise ValueError("grid needs at least one point")
        if interval.finite:
            delta = self.shrink * (interval.hi - interval.lo)
            return np.linspace(interval.lo + delta, interval.hi - delta, self.n)
        u0 = math.atan(interval.lo) if math.isfinite(interval.lo) else -math.pi / 2
        u1 = math.atan(interval.hi) if math.isfinite(interval.hi) else math.pi / 2
        return np.tan(np.linspace(u0 + self.shrink, u1 - self.shrink, self.n))


@dataclass(frozen=True)
class Weight:
    """Positive density on an interval, with optional analytic derivatives.

    ``d1``/``d2`` and ``antiderivative``, when given, must be consistent with
    ``density``; all callables accept floats or ndarrays.
    """

    domain: Interval
    density: Callable
    d1: Callable | None = None
    d2: Callable | None = None
    antiderivative: Callable | None = None
    name: str = ""

    @property
    def has_analytic_derivatives(self) -> bool:
        return self.d1 is not None and self.d2 is not None


@dataclass(frozen=True)
class WeightFamily:
    """Parameters of one closed-form solution of curv_w == -k**2 on ``domain``."""

    kind: str
    k: float = 1.0
    C1: float = 1.0
    C2: float = 0.0
    C: float = 0.0
    domain: Interval = field(default_factory=lambda: Interval(-1.0, 1.0))

    def __post_init__(self):
        if self.kind not in FAMILY_KINDS:
            raise ValueError(f"unknown family kind {self.kind!r}")
        if self.k < 1.0:
            raise ValueError("family exponent k must be >= 1")
        if self.kind in ("sin", "sinh") and self.C1 <= 0.0:
            raise ValueError("C1 must be positive")


@dataclass(frozen=True)
class BoundReport:
    """Result of checking curv_w <= -1 on a grid."""

    max_curvature: float
    argmax: float
    passed: bool
    tol: float
    n_points: int


@dataclass(frozen=True)
class ComparisonReport:
    """Result of checking c * w2 <= w1 pointwise on a grid."""

    min_ratio: float
    argmin: float
    factor: float
    passed: bool
    n_points: int


def _check_endpoint(w: Weight, t: float, label: str) -> float:
    t = float(t)
    if not w.domain.contains(t):
        raise ValueError(
            f"{label}={t} outside the open weight domain "
            f"({w.domain.lo}, {w.domain.hi})"
        )
    return t


def omega_distance(w: Weight, a, b):
    """Weighted distance |integral_a^b w(t) dt|.

    Uses the closed-form antiderivative when the weight carries one (then a and
    b may be arrays), otherwise adaptive quadrature to abs tol 1e-12 / rel tol
    1e-10.  Endpoints must be finite interior points of the domain.
    """
    if w.antiderivative is not None:
        a_arr = np.asarray(a, dtype=float)
        b_arr = np.asarray(b, dtype=float)
        if not (w.domain.contains(a_arr) and w.domain.contains(b_arr)):
            raise ValueError("distance endpoint outside the open weight domain")
        out = np.abs(w.antiderivative(b_arr) - w.antiderivative(a_arr))
        return float(out) if out.ndim == 0 else out
    a = _check_endpoint(w, a, "a")
    b = _check_endpoint(w, b, "b")
    if a == b:
        return 0.0
    value, abserr, info, *message = integrate.quad(
        w.density, a, b, epsabs=1e-12, epsrel=1e-10, full_output=1
    )
    if message:
        raise QuadratureError(f"quadrature did not converge on [{a}, {b}]", abserr)
    return abs(value)


def _fd_first(f: Callable, t: float, h: float) -> float:
    return (f(t + h) - f(t - h)) / (2.0 * h)


def _fd_second(f: Callable, t: float, h: float) -> float:
    return (f(t + h) - 2.0 * f(t) + f(t - h)) / (h * h)


def curvature_k(w: Weight, t):
    """Curvature quantity (w'^2 - w w'')/w^4 at interior points.

    Analytic derivatives are used when the weight carries them; otherwise
    central differences, which need the stencil to stay inside the domain.
    """
    t_arr = np.asarray(t, dtype=float)
    if not w.domain.contains(t_arr):
        raise ValueError("curvature point outside the open weight domain")
    if w.has_analytic_derivatives:
        den = w.density(t_arr)
        out = (w.d1(t_arr) ** 2 - den * w.d2(t_arr)) / den**4
        return float(out) if np.ndim(out) == 0 else out

    def one(ti: float) -> float:
        scale = max(1.0, abs(ti))
        h1 = _FD_STEP_D1 * scale
        h2 = _FD_STEP_D2 * scale
        h = max(h1, h2)
        if not (w.domain.contains(ti - h) and w.domain.contains(ti + h)):
            raise ValueError(
                f"t={ti} too close to a domain endpoint for the FD stencil (h={h:.3e})"
            )
        den = float(w.density(ti))
        wd1 = _fd_first(w.density, ti, h1)
        wd2 = _fd_second(w.density, ti, h2)
        return (wd1 * wd1 - den * wd2) / den**4

    if t_arr.ndim == 0:
        return one(float(t_arr))
    return np.array([one(float(ti)) for ti in t_arr.ravel()]).reshape(t_arr.shape)


def _family_sign(fam: WeightFamily) -> float:
    """Sign of the family denominator on J; raises if it vanishes inside J."""
    lo, hi = fam.domain.lo, fam.domain.hi
    if fam.kind == "sin":
        if math.isinf(lo) or math.isinf(hi):
            raise ValueError("sin family cannot live on an unbounded interval")
        u_lo = fam.C1 * lo + fam.C2
        u_hi = fam.C1 * hi + fam.C2
        slack = 1e-12 * max(1.0, abs(u_lo), abs(u_hi))
        m = math.ceil(u_lo / math.pi)
        if abs(m * math.pi - u_lo) <= slack:
            m += 1  # lower endpoint sits on a zero; the next one must be outside
        if m * math.pi < u_hi - slack:
            raise ValueError("sin(C1 t + C2) vanishes inside the interval")
        mid = 0.5 * (u_lo + u_hi)
        return math.copysign(1.0, math.sin(mid))
    if fam.kind == "sinh":
        u_lo = fam.C1 * lo + fam.C2 if math.isfinite(lo) else -math.inf
        u_hi = fam.C1 * hi + fam.C2 if math.isfinite(hi) else math.inf
        if u_lo < 0.0 < u_hi:
            raise ValueError("sinh(C1 t + C2) vanishes inside the interval")
        return 1.0 if u_hi > 0.0 else -1.0
    # linear
    z = -fam.C
    if lo < z < hi:
        raise ValueError("t + C vanishes inside the interval")
    return 1.0 if z <= lo else -1.0


def family_weight(fam: WeightFamily) -> Weight:
    """Build the Weight of a closed-form family member.

    The returned weight has analytic first and second derivatives and an
    elementary antiderivative, all valid on the family interval.
    """
    s = _family_sign(fam)
    k = fam.k

    if fam.kind == "sin":
        C1, C2 = fam.C1, fam.C2

        def density(t):
            return C1 / (k * s * np.sin(C1 * t + C2))

        def d1(t):
            u = C1 * t + C2
            S = s * np.sin(u)
            return -(C1**2) * s * np.cos(u) / (k * S**2)

        def d2(t):
            u = C1 * t + C2
            S = s * np.sin(u)
            return (C1**3 / k) * (1.0 / S + 2.0 * np.cos(u) ** 2 / S**3)

        def antiderivative(t):
            u = C1 * t + C2
            return np.log(np.abs(np.tan(0.5 * u))) / (k * s)

        label = f"sin(k={k:g},C1={fam.C1:g},C2={fam.C2:g})"

    elif fam.kind == "sinh":
        C1, C2 = fam.C1, fam.C2

        def density(t):
            return C1 / (k * s * np.sinh(C1 * t + C2))

        def d1(t):
            u = C1 * t + C2
            S = s * np.sinh(u)
            return -(C1**2) * s * np.cosh(u) / (k * S**2)

        def d2(t):
            u = C1 * t + C2
            S = s * np.sinh(u)
            return (C1**3 / k) * (2.0 * np.cosh(u) ** 2 / S**3 - 1.0 / S)

        def antiderivative(t):
            u = C1 * t + C2
            return np.log(np.abs(np.tanh(0.5 * u))) / (k * s)

        label = f"sinh(k={k:g},C1={fam.C1:g},C2={fam.C2:g})"

    else:
        C = fam.C

        def density(t):
            return 1.0 / (k * s * (t + C))

        def d1(t):
            S = s * (t + C)
            return -s / (k * S**2)

        def d2(t):
            S = s * (t + C)
            return 2.0 / (k * S**3)

        def antiderivative(t):
            return np.log(np.abs(t + C)) / (k * s)

        label = f"linear(k={k:g},C={fam.C:g})"

    return Weight(
        domain=fam.domain,
        density=density,
        d1=d1,
        d2=d2,
        antiderivative=antiderivative,
        name=label,
    )


def strip_weight() -> Weight:
    """(pi/2) sec(pi t / 2) on (-1, 1): the hyperbolic density of the unit strip."""
    fam = WeightFamily(
        kind="sin", k=1.0, C1=math.pi / 2, C2=-math.pi / 2, domain=Interval(-1.0, 1.0)
    )
    w = family_weight(fam)
    return Weight(
        domain=w.domain,
        density=w.density,
        d1=w.d1,
        d2=w.d2,
        antiderivative=w.antiderivative,
        name="strip",
    )


def half_plane_weight() -> Weight:
    """1/t on (0, inf): the hyperbolic density of the right half-plane."""
    fam = WeightFamily(kind="linear", k=1.0, C=0.0, domain=Interval(0.0, math.inf))
    w = family_weight(fam)
    return Weight(
        domain=w.domain,
        density=w.density,
        d1=w.d1,
        d2=w.d2,
        antiderivative=w.antiderivative,
        name="half_plane",
    )


def disk_diameter_weight() -> Weight:
    """2/(1 - t^2) on (-1, 1): the density induced on the diameter of the disk.

    Its curvature quantity is -(1 + t^2)/2, which exceeds -1; it serves as the
    negative control for the curvature hypothesis and as the comparison weight
    in the pi/4 inequality.
    """

    def density(t):
        return 2.0 / (1.0 - np.square(t))

    def d1(t):
        return 4.0 * t / (1.0 - np.square(t)) ** 2

    def d2(t):
        t2 = np.square(t)
        return (4.0 + 12.0 * t2) / (1.0 - t2) ** 3

    def antiderivative(t):
        return 2.0 * np.arctanh(t)

    return Weight(
        domain=Interval(-1.0, 1.0),
        density=density,
        d1=d1,
        d2=d2,
        antiderivative=antiderivative,
        name="disk_diameter",
    )


def verify_curvature_bound(
    w: Weight, grid: GridSpec | None = None, tol: float = 1e-8
) -> BoundReport:
    """Report max curv_w over the grid and whether it stays <= -1 + tol."""
    grid = grid or GridSpec()
    ts = grid.points(w.domain)
    ks = np.asarray(curvature_k(w, ts), dtype=float)
    i = int(np.argmax(ks))
    kmax = float(ks[i])
    return BoundReport(
        max_curvature=kmax,
        argmax=float(ts[i]),
        passed=bool(kmax <= -1.0 + tol),
        tol=tol,
        n_points=len(ts),
    )


def compare_weights(
    w1: Weight, w2: Weight, c: float, grid: GridSpec | None = None
) -> ComparisonReport:
    """Check c * w2 <= w1 pointwise on a grid over the common domain."""
    grid = grid or GridSpec()
    lo = max(w1.domain.lo, w2.domain.lo)
    hi = min(w1.domain.hi, w2.domain.hi)
    ts = grid.points(Interval(lo, hi))
    ratio = np.asarray(w1.density(ts) / w2.density(ts), dtype=float)
    i = int(np.argmin(ratio))
    rmin = float(ratio[i])
    return ComparisonReport(
        min_ratio=rmin,
        argmin=float(ts[i]),
        factor=c,
        passed=bool(rmin >= c * (1.0 - 1e-12)),
        n_points=len(ts),
    )
