"""Numerical solution of lambda'' = exp(lambda) and its closed-form solutions.

The equation is the log-density form of the constant-curvature condition:
substituting lambda = log(2 k^2 w^2) into curv_w == -k^2 yields it.  Its
general solutions, as densities, are the three weight families; here they
appear as

    exp(lambda) sin^2(C1 t + C2)  = 2 C1^2
    exp(lambda) sinh^2(C1 t + C2) = 2 C1^2
    exp(lambda) (t + C)^2         = 2

The integrator is an embedded Cash-Karp 5(4) pair with adaptive steps (local
error <= tol per unit step) and cubic Hermite dense output between accepted
steps.  Solutions of the sin family blow up at the sine zeros, so a cap on
lambda turns runaway trajectories into flagged partial results.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .weights import Interval, Weight, WeightFamily

DEFAULT_LAMBDA_CAP = 50.0

_SQRT2 = math.sqrt(2.0)

# Cash-Karp tableau; the 5th-order solution is propagated.
_A = (
    (),
    (1 / 5,),
    (3 / 40, 9 / 40),
    (3 / 10, -9 / 10, 6 / 5),
    (-11 / 54, 5 / 2, -70 / 27, 35 / 27),
    (1631 / 55296, 175 / 512, 575 / 13824, 44275 / 110592, 253 / 4096),
)
_B5 = (37 / 378, 0.0, 250 / 621, 125 / 594, 0.0, 512 / 1771)
_B4 = (2825 / 27648, 0.0, 18575 / 48384, 13525 / 55296, 277 / 14336, 1 / 4)


@dataclass(frozen=True)
class LiouvilleState:
    """One sample (t, lambda, lambda') of a trajectory."""

    t: float
    lam: float
    dlam: float

    def __post_init__(self):
        if not (math.isfinite(self.t) and math.isfinite(self.lam) and math.isfinite(self.dlam)):
            raise ValueError("non-finite Liouville state")


def _rhs(y: np.ndarray) -> np.ndarray:
    return np.array([y[1], math.exp(min(y[0], 700.0))])


@dataclass(frozen=True)
class Trajectory:
    """Accepted integration steps (t ascending) plus step-control metadata.

    Dense output between steps is cubic Hermite, built from the stored values
    and derivatives; ``interpolate`` evaluates it.
    """

    ts: np.ndarray
    lams: np.ndarray
    dlams: np.ndarray
    tol: float
    accepted: int
    rejected: int
    blown_up: bool
    lam_cap: float

    @property
    def states(self) -> list[LiouvilleState]:
        return [
            LiouvilleState(float(t), float(l), float(d))
            for t, l, d in zip(self.ts, self.lams, self.dlams)
        ]

    @property
    def t_min(self) -> float:
        return float(self.ts[0])

    @property
    def t_max(self) -> float:
        return float(self.ts[-1])

    def energy(self) -> np.ndarray:
        """First integral dlam^2/2 - exp(lam) at the accepted steps."""
        return 0.5 * self.dlams**2 - np.exp(self.lams)

    def _locate(self, t: np.ndarray) -> np.ndarray:
        if np.any(t < self.ts[0] - 1e-12) or np.any(t > self.ts[-1] + 1e-12):
            raise ValueError("interpolation point outside the trajectory span")
        return np.clip(np.searchsorted(self.ts, t, side="right") - 1, 0, len(self.ts) - 2)

    def interpolate(self, t):
        """Dense-output lambda(t) by cubic Hermite interpolation."""
        t_arr = np.asarray(t, dtype=float)
        idx = self._locate(t_arr)
        t0, t1 = self.ts[idx], self.ts[idx + 1]
        h = t1 - t0
        x = np.clip((t_arr - t0) / h, 0.0, 1.0)
        x2, x3 = x * x, x * x * x
        out = (
            (2 * x3 - 3 * x2 + 1) * self.lams[idx]
            + (x3 - 2 * x2 + x) * h * self.dlams[idx]
            + (-2 * x3 + 3 * x2) * self.lams[idx + 1]
            + (x3 - x2) * h * self.dlams[idx + 1]
        )
        return float(out) if out.ndim == 0 else out

    def interpolate_dlam(self, t):
        """Dense-output lambda'(t); Hermite data is (lambda', exp(lambda))."""
        t_arr = np.asarray(t, dtype=float)
        idx = self._locate(t_arr)
        t0, t1 = self.ts[idx], self.ts[idx + 1]
        h = t1 - t0
        x = np.clip((t_arr - t0) / h, 0.0, 1.0)
        x2, x3 = x * x, x * x * x
        dd0 = np.exp(self.lams[idx])
        dd1 = np.exp(self.lams[idx + 1])
        out = (
            (2 * x3 - 3 * x2 + 1) * self.dlams[idx]
            + (x3 - 2 * x2 + x) * h * dd0
            + (-2 * x3 + 3 * x2) * self.dlams[idx + 1]
            + (x3 - x2) * h * dd1
        )
        return float(out) if out.ndim == 0 else out


def solve_liouville(
    initial: LiouvilleState,
    t_end: float,
    tol: float = 1e-10,
    lam_cap: float = DEFAULT_LAMBDA_CAP,
    max_steps: int = 200_000,
) -> Trajectory:
    """Integrate lambda'' = exp(lambda) from ``initial`` to ``t_end``.

    Adaptive Cash-Karp 5(4): a step of size h is accepted when the embedded
    error estimate is at most tol * |h|.  Integration runs forward or backward
    depending on the sign of ``t_end - initial.t``.  If lambda exceeds
    ``lam_cap`` the partial trajectory is returned with ``blown_up`` set.
    """
    if tol <= 0.0:
        raise ValueError("tol must be positive")
    span = t_end - initial.t
    if span == 0.0:
        raise ValueError("t_end coincides with the initial time")
    direction = math.copysign(1.0, span)

    t = initial.t
    y = np.array([initial.lam, initial.dlam], dtype=float)
    ts = [t]
    lams = [y[0]]
    dlams = [y[1]]
    accepted = 0
    rejected = 0
    blown_up = False

    h = direction * min(abs(span) / 50.0, 0.1 / (1.0 + abs(initial.dlam)))
    h_floor = 1e-14 * max(1.0, abs(span))
    k = np.empty((6, 2))

    while (t_end - t) * direction > 0.0:
        if abs(h) < h_floor:
            if direction * y[1] > 0.0:
                # Finite-time blow-up: every derivative of lambda explodes at
                # the singularity, so the error control squeezes h below the
                # floor long before lambda reaches the cap.  Step collapse
                # while lambda rises along the march is the detection signal.
                blown_up = True
                break
            raise RuntimeError("step size underflow in Liouville integration")
        if (t + h - t_end) * direction > 0.0:
            h = t_end - t

        k[0] = _rhs(y)
        bad = False
        for i in range(1, 6):
            yi = y + h * (np.asarray(_A[i]) @ k[:i])
            if not np.all(np.isfinite(yi)) or yi[0] > lam_cap + 5.0:
                bad = True
                break
            k[i] = _rhs(yi)
        if bad:
            rejected += 1
            h *= 0.5
            continue

        y5 = y + h * (np.asarray(_B5) @ k)
        y4 = y + h * (np.asarray(_B4) @ k)
        err = float(np.max(np.abs(y5 - y4)))
        target = tol * abs(h)

        if err <= target or abs(h) <= h_floor * 2.0:
            if y5[0] > lam_cap:
                blown_up = True
                break
            t += h
            y = y5
            ts.append(t)
            lams.append(y[0])
            dlams.append(y[1])
            accepted += 1
            factor = 5.0 if err == 0.0 else min(5.0, max(0.2, 0.9 * (target / err) ** 0.2))
            h *= factor
        else:
            rejected += 1
            h *= max(0.2, 0.9 * (target / err) ** 0.2)

        if accepted + rejected > max_steps:
            raise RuntimeError("maximum step count exceeded in Liouville integration")

    ts_arr = np.array(ts)
    lams_arr = np.array(lams)
    dlams_arr = np.array(dlams)
    if direction < 0:
        ts_arr, lams_arr, dlams_arr = ts_arr[::-1], lams_arr[::-1], dlams_arr[::-1]
    return Trajectory(
        ts=ts_arr,
        lams=lams_arr,
        dlams=dlams_arr,
        tol=tol,
        accepted=accepted,
        rejected=rejected,
        blown_up=blown_up,
        lam_cap=lam_cap,
    )


def lambda_to_weight(traj: Trajectory, k: float = 1.0) -> Weight:
    """Turn a trajectory into the weight w(t) = exp(lambda(t)/2) / (k sqrt(2)).

    The weight's derivatives are intentionally left numeric (no analytic d1/d2)
    so that curvature checks on it are independent of the ODE structure.
    """
    if k < 1.0:
        raise ValueError("k must be >= 1")
    if traj.accepted < 4:
        raise ValueError("trajectory too short for a usable dense output (< 4 accepted steps)")

    def density(t):
        return np.exp(0.5 * traj.interpolate(t)) / (k * _SQRT2)

    return Weight(
        domain=Interval(traj.t_min, traj.t_max),
        density=density,
        name=f"liouville(k={k:g})",
    )


def _family_u(fam: WeightFamily, t):
    return fam.C1 * np.asarray(t, dtype=float) + fam.C2


def closed_form_lambda(fam: WeightFamily, t):
    """lambda(t) = log(2 k^2 w(t)^2) for a family member; k drops out."""
    t_arr = np.asarray(t, dtype=float)
    if not fam.domain.contains(t_arr):
        raise ValueError("t outside the family interval")
    if fam.kind == "sin":
        denom = np.abs(np.sin(_family_u(fam, t_arr)))
        out = np.log(2.0 * fam.C1**2) - 2.0 * np.log(denom)
    elif fam.kind == "sinh":
        denom = np.abs(np.sinh(_family_u(fam, t_arr)))
        out = np.log(2.0 * fam.C1**2) - 2.0 * np.log(denom)
    else:
        denom = np.abs(t_arr + fam.C)
        out = np.log(2.0) - 2.0 * np.log(denom)
    if not np.all(np.isfinite(out)):
        raise ValueError("t at a singularity of the family")
    return float(out) if out.ndim == 0 else out


def closed_form_dlambda(fam: WeightFamily, t):
    """lambda'(t) for a family member."""
    t_arr = np.asarray(t, dtype=float)
    if not fam.domain.contains(t_arr):
        raise ValueError("t outside the family interval")
    if fam.kind == "sin":
        u = _family_u(fam, t_arr)
        out = -2.0 * fam.C1 * np.cos(u) / np.sin(u)
    elif fam.kind == "sinh":
        u = _family_u(fam, t_arr)
        out = -2.0 * fam.C1 * np.cosh(u) / np.sinh(u)
    else:
        out = -2.0 / (t_arr + fam.C)
    if not np.all(np.isfinite(out)):
        raise ValueError("t at a singularity of the family")
    return float(out) if out.ndim == 0 else out


def family_initial_state(fam: WeightFamily, t0: float) -> LiouvilleState:
    """Initial (t0, lambda, lambda') matching a closed-form family member."""
    return LiouvilleState(t0, closed_form_lambda(fam, t0), closed_form_dlambda(fam, t0))
