"""Deterministic sampled verification of the contraction inequalities.

Every checker draws sample pairs from seeded substreams (one PCG64 stream per
fixed-size chunk of 1024 samples, keyed by seed and chunk index), evaluates
both sides of its inequality with vectorized module operations, and reports
margin statistics (margin = rhs - lhs).  Chunk boundaries never depend on the
worker count, and per-chunk results are merged in chunk order, so a suite is
bitwise reproducible at any parallelism level.

A sampled pair with margin below -(tol_abs + tol_rel*|rhs|) is a violation;
the hypotheses are theorems, so violations indicate implementation bugs.  The
final sample of every stream is intentionally degenerate (w = z) to exercise
the equal-point conventions (margin 0; excluded from ratio suprema).

Checkers that rely on the curvature hypothesis (the distance-level and
gradient-level contraction and the proof-chain replay) first gate on
curv_w <= -1; a weight failing the gate yields status ``hypothesis-not-met``
rather than a violation verdict.
"""

from __future__ import annotations

import json
import math
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable

import numpy as np
from numpy.polynomial.legendre import leggauss

from . import ball
from .catalog import HoloFunction, catalog, get as catalog_get, validate_entry
from .disk import BOUNDARY_GUARD, mobius, sigma, sigma_real
from .domains import PoincareDisk
from .weights import (
    Weight,
    disk_diameter_weight,
    half_plane_weight,
    omega_distance,
    strip_weight,
    verify_curvature_bound,
)

KV_FACTOR = 4.0 / math.pi
DEFAULT_SEED = 101
CHUNK_SIZE = 1024

SCHEMES = ("uniform_disk", "boundary_biased")

WEIGHT_FACTORIES = {
    "strip": strip_weight,
    "half_plane": half_plane_weight,
    "disk_diameter": disk_diameter_weight,
}


class ConfigError(ValueError):
    """Invalid suite configuration; ``errors`` lists every problem found."""

    def __init__(self, errors: list):
        super().__init__("; ".join(errors))
        self.errors = list(errors)


@dataclass(frozen=True)
class SampleSpec:
    """How many pairs to draw, from which seed, and with which radial law."""

    count: int
    seed: int = DEFAULT_SEED
    radius_cap: float = 0.99
    scheme: str = "uniform_disk"

    def __post_init__(self):
        if self.count < 1:
            raise ValueError("sample count must be >= 1")
        if not 0.0 < self.radius_cap <= 1.0 - BOUNDARY_GUARD:
            raise ValueError("radius_cap must lie in (0, 1 - boundary_guard]")
        if self.scheme not in SCHEMES:
            raise ValueError(f"unknown sampling scheme {self.scheme!r}")


@dataclass(frozen=True)
class InequalityCase:
    """One inequality instance: a function, a target structure, a factor."""

    id: str
    function: HoloFunction | None = None
    target: object = "sigma"  # Weight | "sigma" | "beta"
    source: object = field(default_factory=PoincareDisk)
    factor: float = 1.0
    tol_abs: float = 1e-9
    tol_rel: float = 1e-9


@dataclass(frozen=True)
class VerificationReport:
    """Margin statistics of one verified case.

    ``margins`` keeps the raw per-sample values for CSV emission; ``to_dict``
    exposes only the summary (the JSON data payload must not depend on wall
    time or parallelism).
    """

    case_id: str
    status: str  # "pass" | "violated" | "hypothesis-not-met"
    samples_used: int
    min_margin: float | None
    mean_margin: float | None
    violations: tuple
    seed: int
    wall_time: float
    extras: dict = field(default_factory=dict)
    margins: np.ndarray | None = None

    def to_dict(self) -> dict:
        return {
            "case_id": self.case_id,
            "status": self.status,
            "samples_used": self.samples_used,
            "min_margin": self.min_margin,
            "mean_margin": self.mean_margin,
            "n_violations": len(self.violations),
            "violations": list(self.violations),
            "seed": self.seed,
            "extras": dict(self.extras),
        }


def _serialize_point(p) -> list:
    arr = np.asarray(p)
    if arr.ndim == 0:
        return [float(np.real(arr)), float(np.imag(arr))]
    return [[float(np.real(c)), float(np.imag(c))] for c in arr]


def _radius(spec: SampleSpec, u: np.ndarray, ball_dim: int = 1) -> np.ndarray:
    if spec.scheme == "uniform_disk":
        return spec.radius_cap * u ** (1.0 / (2.0 * ball_dim))
    return np.minimum(1.0 - 10.0 ** (-3.0 * u), spec.radius_cap)


def _chunk_layout(count: int) -> list:
    return [
        (ci, min(CHUNK_SIZE, count - ci * CHUNK_SIZE))
        for ci in range((count + CHUNK_SIZE - 1) // CHUNK_SIZE)
    ]


def disk_pair_chunk(spec: SampleSpec, ci: int, n: int, last: bool):
    """Chunk ``ci`` of the disk-pair stream; the very last pair is degenerate."""
    rng = np.random.default_rng([spec.seed, ci])
    u = rng.random((4, n))
    z = _radius(spec, u[0]) * np.exp(2j * np.pi * u[1])
    w = _radius(spec, u[2]) * np.exp(2j * np.pi * u[3])
    if last:
        w[-1] = z[-1]
    return z, w


def ball_pair_chunk(spec: SampleSpec, dim: int, ci: int, n: int, last: bool):
    """Chunk of pairs in the complex ball of dimension ``dim``."""
    rng = np.random.default_rng([spec.seed, dim, ci])
    g = rng.standard_normal((2, n, dim, 2))
    u = rng.random((2, n))
    vec = g[..., 0] + 1j * g[..., 1]
    norms = np.maximum(np.sqrt(np.sum(np.abs(vec) ** 2, axis=-1)), 1e-300)
    r = _radius(spec, u, ball_dim=dim)
    pts = vec / norms[..., np.newaxis] * r[..., np.newaxis]
    z, w = pts[0], pts[1]
    if last:
        w[-1] = z[-1]
    return z, w


def _map_chunks(spec: SampleSpec, chunk_fn: Callable, eval_fn: Callable, workers: int):
    """Evaluate ``eval_fn(z, w)`` over every chunk; merge fields in chunk order."""
    layout = _chunk_layout(spec.count)

    def one(item):
        ci, n = item
        z, w = chunk_fn(spec, ci, n, ci == len(layout) - 1)
        out = eval_fn(z, w)
        out.setdefault("z", z)
        out.setdefault("w", w)
        return out

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as ex:
            results = list(ex.map(one, layout))
    else:
        results = [one(item) for item in layout]
    return {k: np.concatenate([r[k] for r in results]) for k in results[0]}


def _finalize(
    case: InequalityCase,
    spec_seed: int,
    z,
    w,
    lhs: np.ndarray,
    rhs: np.ndarray,
    t0: float,
    extras: dict | None = None,
) -> VerificationReport:
    margins = np.asarray(rhs, dtype=float) - np.asarray(lhs, dtype=float)
    tol = case.tol_abs + case.tol_rel * np.abs(rhs)
    bad = np.nonzero(margins < -tol)[0]
    violations = tuple(
        {
            "index": int(i),
            "z": _serialize_point(z[i]),
            "w": _serialize_point(w[i]),
            "lhs": float(lhs[i]),
            "rhs": float(rhs[i]),
            "margin": float(margins[i]),
        }
        for i in bad
    )
    return VerificationReport(
        case_id=case.id,
        status="violated" if violations else "pass",
        samples_used=len(margins),
        min_margin=float(np.min(margins)),
        mean_margin=float(np.mean(margins)),
        violations=violations,
        seed=spec_seed,
        wall_time=time.perf_counter() - t0,
        extras=extras or {},
        margins=margins,
    )


def _hypothesis_not_met(case: InequalityCase, seed: int, t0: float, gate) -> VerificationReport:
    return VerificationReport(
        case_id=case.id,
        status="hypothesis-not-met",
        samples_used=0,
        min_margin=None,
        mean_margin=None,
        violations=(),
        seed=seed,
        wall_time=time.perf_counter() - t0,
        extras={
            "max_curvature": gate.max_curvature,
            "curvature_argmax": gate.argmax,
            "required": "curv_w <= -1",
        },
    )


def _curvature_gate(weight: Weight):
    return verify_curvature_bound(weight, tol=1e-8)


def _vector_omega_distance(weight: Weight, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    if weight.antiderivative is not None:
        return np.asarray(omega_distance(weight, a, b), dtype=float)
    return np.array([omega_distance(weight, ai, bi) for ai, bi in zip(a, b)])


def verify_re_contraction(
    case: InequalityCase, spec: SampleSpec, workers: int = 1
) -> VerificationReport:
    """d_w(Re f(z), Re f(w)) <= sigma(z, w), gated on curv_w <= -1."""
    t0 = time.perf_counter()
    weight, f = case.target, case.function
    gate = _curvature_gate(weight)
    if not gate.passed:
        return _hypothesis_not_met(case, spec.seed, t0, gate)

    def chunk(z, w):
        lhs = _vector_omega_distance(weight, np.real(f.eval(z)), np.real(f.eval(w)))
        return {"lhs": lhs, "rhs": np.asarray(sigma(z, w), dtype=float)}

    data = _map_chunks(spec, disk_pair_chunk, chunk, workers)
    return _finalize(case, spec.seed, data["z"], data["w"], data["lhs"], data["rhs"], t0)


def polar_grid(n_r: int = 101, n_theta: int = 101, radius_cap: float = 0.99) -> np.ndarray:
    """Polar evaluation grid including the origin, radii uniform up to the cap."""
    r = np.linspace(0.0, radius_cap, n_r)
    theta = np.linspace(0.0, 2.0 * math.pi, n_theta, endpoint=False)
    return (r[:, np.newaxis] * np.exp(1j * theta)[np.newaxis, :]).ravel()


def verify_pointwise_gradient(
    case: InequalityCase, grid: np.ndarray | None = None, seed: int = DEFAULT_SEED
) -> VerificationReport:
    """Surface gradient bound w(Re f(z)) |f'(z)| (1-|z|^2)/2 <= 1 on a grid."""
    t0 = time.perf_counter()
    weight, f = case.target, case.function
    gate = _curvature_gate(weight)
    if not gate.passed:
        return _hypothesis_not_met(case, seed, t0, gate)
    z = polar_grid() if grid is None else np.asarray(grid)
    lhs = (
        np.asarray(weight.density(np.real(f.eval(z))), dtype=float)
        * np.abs(f.deriv(z))
        * (1.0 - np.abs(z) ** 2)
        / 2.0
    )
    rhs = np.ones_like(lhs)
    extras = {"max_lhs": float(np.max(lhs)), "argmax": _serialize_point(z[int(np.argmax(lhs))])}
    return _finalize(case, seed, z, z, lhs, rhs, t0, extras)


def verify_modulus_contraction(
    case: InequalityCase, spec: SampleSpec, workers: int = 1
) -> VerificationReport:
    """sigma(|f(z)|, |f(w)|) <= sigma(z, w) for disk-codomain entries."""
    t0 = time.perf_counter()
    f = case.function

    def chunk(z, w):
        lhs = np.asarray(sigma_real(np.abs(f.eval(z)), np.abs(f.eval(w))), dtype=float)
        return {"lhs": lhs, "rhs": np.asarray(sigma(z, w), dtype=float)}

    data = _map_chunks(spec, disk_pair_chunk, chunk, workers)
    return _finalize(case, spec.seed, data["z"], data["w"], data["lhs"], data["rhs"], t0)


def verify_schwarz_pick(
    case: InequalityCase, spec: SampleSpec, workers: int = 1
) -> VerificationReport:
    """sigma(f(z), f(w)) <= sigma(z, w) for disk-codomain entries."""
    t0 = time.perf_counter()
    f = case.function

    def chunk(z, w):
        lhs = np.asarray(sigma(f.eval(z), f.eval(w)), dtype=float)
        return {"lhs": lhs, "rhs": np.asarray(sigma(z, w), dtype=float)}

    data = _map_chunks(spec, disk_pair_chunk, chunk, workers)
    return _finalize(case, spec.seed, data["z"], data["w"], data["lhs"], data["rhs"], t0)


def verify_pavlovic(
    case: InequalityCase, grid: np.ndarray | None = None, seed: int = DEFAULT_SEED
) -> VerificationReport:
    """Modulus gradient bound |f'(z)| (1-|z|^2) <= 1 - |f(z)|^2 on a grid.

    |f'| equals the upper gradient of |f| off the zero set and still dominates
    it at zeros; both branches are recorded separately in the extras.
    """
    t0 = time.perf_counter()
    f = case.function
    z = polar_grid() if grid is None else np.asarray(grid)
    fz = f.eval(z)
    lhs = np.abs(f.deriv(z)) * (1.0 - np.abs(z) ** 2)
    rhs = 1.0 - np.abs(fz) ** 2
    zero = np.abs(fz) <= 1e-12
    margins = rhs - lhs
    extras = {
        "n_zero_branch": int(np.sum(zero)),
        "n_nonzero_branch": int(np.sum(~zero)),
        "min_margin_zero": float(np.min(margins[zero])) if np.any(zero) else None,
        "min_margin_nonzero": float(np.min(margins[~zero])) if np.any(~zero) else None,
    }
    return _finalize(case, seed, z, z, lhs, rhs, t0, extras)


def verify_kv_factor(
    case: InequalityCase, spec: SampleSpec, workers: int = 1
) -> VerificationReport:
    """sigma(Re f(z), Re f(w)) <= factor * sigma(z, w) for strip-valued Re f.

    The left side is the distance of the weight 2/(1-t^2) on (-1, 1), i.e.
    |2 atanh U(z) - 2 atanh U(w)| for U = Re f.  The empirical supremum of the
    ratio lhs/sigma is recorded (pairs with sigma = 0 are excluded from it).
    """
    t0 = time.perf_counter()
    f = case.function
    factor = case.factor

    def chunk(z, w):
        u_z = np.real(f.eval(z))
        u_w = np.real(f.eval(w))
        lhs = np.abs(2.0 * np.arctanh(u_z) - 2.0 * np.arctanh(u_w))
        s = np.asarray(sigma(z, w), dtype=float)
        ratio = np.where(s > 0.0, lhs / np.where(s > 0.0, s, 1.0), 0.0)
        return {"lhs": lhs, "rhs": factor * s, "ratio": ratio}

    data = _map_chunks(spec, disk_pair_chunk, chunk, workers)
    i_sup = int(np.argmax(data["ratio"]))
    extras = {
        "factor": factor,
        "sup_ratio": float(data["ratio"][i_sup]),
        "sup_ratio_pair": [
            _serialize_point(data["z"][i_sup]),
            _serialize_point(data["w"][i_sup]),
        ],
    }
    return _finalize(case, spec.seed, data["z"], data["w"], data["lhs"], data["rhs"], t0, extras)


def verify_abs_inequalities(
    spec: SampleSpec, dims: tuple = (1, 2, 3), workers: int = 1
) -> list:
    """Modulus-monotonicity margins: disk rho, disk sigma, ball beta per dim."""
    reports = []
    t0 = time.perf_counter()

    def disk_chunk(z, w):
        az, aw = np.abs(z), np.abs(w)
        rho_zw = np.abs((z - w) / (1.0 - np.conj(z) * w))
        rho_abs = np.abs(az - aw) / (1.0 - az * aw)
        sig_zw = 2.0 * np.arctanh(rho_zw)
        sig_abs = np.abs(2.0 * np.arctanh(az) - 2.0 * np.arctanh(aw))
        return {"rho_zw": rho_zw, "rho_abs": rho_abs, "sig_zw": sig_zw, "sig_abs": sig_abs}

    data = _map_chunks(spec, disk_pair_chunk, disk_chunk, workers)
    tight = {"tol_abs": 1e-12, "tol_rel": 0.0}
    reports.append(
        _finalize(
            InequalityCase(id="abs_rho_disk", **tight),
            spec.seed, data["z"], data["w"], data["rho_abs"], data["rho_zw"], t0,
        )
    )
    reports.append(
        _finalize(
            InequalityCase(id="abs_sigma_disk", **tight),
            spec.seed, data["z"], data["w"], data["sig_abs"], data["sig_zw"], t0,
        )
    )

    for dim in dims:
        t1 = time.perf_counter()

        def ball_eval(z, w):
            lhs = np.asarray(ball.beta(ball.embed_modulus(z), ball.embed_modulus(w)))
            return {"lhs": lhs, "rhs": np.asarray(ball.beta(z, w))}

        layout = _chunk_layout(spec.count)

        def one(item, d=dim):
            ci, n = item
            z, w = ball_pair_chunk(spec, d, ci, n, ci == len(layout) - 1)
            out = ball_eval(z, w)
            out["z"], out["w"] = z, w
            return out

        if workers > 1:
            with ThreadPoolExecutor(max_workers=workers) as ex:
                results = list(ex.map(one, layout))
        else:
            results = [one(item) for item in layout]
        zs = np.concatenate([r["z"] for r in results])
        ws = np.concatenate([r["w"] for r in results])
        lhs = np.concatenate([r["lhs"] for r in results])
        rhs = np.concatenate([r["rhs"] for r in results])
        reports.append(
            _finalize(
                InequalityCase(id=f"abs_beta_ball_n{dim}", **tight),
                spec.seed, zs, ws, lhs, rhs, t1,
            )
        )
    return reports


def verify_proof_chain(
    case: InequalityCase,
    spec: SampleSpec,
    n_pairs: int = 128,
) -> VerificationReport:
    """Replay the contraction proof along arc-length hyperbolic geodesics.

    With gamma the geodesic from z to w parameterized by hyperbolic arc length
    s in [0, sigma], the image-path length is

        I = int_0^sigma w(Re f(gamma)) |f'(gamma)| (1 - |gamma|^2)/2 ds,

    whose integrand is exactly the gradient-bound left side, hence <= 1.  The
    replayed chain is d_w(Re f(z), Re f(w)) <= I <= sigma(z, w); both link
    margins are checked at tolerance 1e-6.
    """
    t0 = time.perf_counter()
    weight, f = case.target, case.function
    gate = _curvature_gate(weight)
    if not gate.passed:
        return _hypothesis_not_met(case, spec.seed, t0, gate)

    count = min(spec.count, n_pairs)
    z, w = disk_pair_chunk(spec, 0, min(spec.count, CHUNK_SIZE), False)
    z, w = z[:count], w[:count]
    x_nodes, wq = leggauss(8)
    tq = 0.5 * (x_nodes + 1.0)
    wt = 0.5 * wq

    first_link = np.empty(count)
    second_link = np.empty(count)
    for i in range(count):
        zi, wi = complex(z[i]), complex(w[i])
        zeta = mobius(zi, wi)
        r = abs(zeta)
        if r == 0.0:
            first_link[i] = 0.0
            second_link[i] = 0.0
            continue
        sig = 2.0 * math.atanh(r)
        n_panels = max(32, int(16.0 * sig))
        edges = np.linspace(0.0, sig, n_panels + 1)
        widths = np.diff(edges)
        s = edges[:-1, np.newaxis] + widths[:, np.newaxis] * tq[np.newaxis, :]
        pts = mobius(zi, np.tanh(0.5 * s) * (zeta / r))
        integrand = (
            np.asarray(weight.density(np.real(f.eval(pts))), dtype=float)
            * np.abs(f.deriv(pts))
            * (1.0 - np.abs(pts) ** 2)
            / 2.0
        )
        integral = float(np.sum(widths * (integrand @ wt)))
        d_w = float(
            _vector_omega_distance(
                weight,
                np.real(np.asarray(f.eval(zi))).reshape(1),
                np.real(np.asarray(f.eval(wi))).reshape(1),
            )[0]
        )
        first_link[i] = integral - d_w
        second_link[i] = sig - integral

    margins = np.minimum(first_link, second_link)
    lhs = -margins
    rhs = np.zeros(count)
    extras = {
        "min_first_link": float(np.min(first_link)),
        "min_second_link": float(np.min(second_link)),
    }
    return _finalize(case, spec.seed, z, w, lhs, rhs, t0, extras)


OPS = (
    "re_contraction",
    "pointwise_gradient",
    "modulus_contraction",
    "schwarz_pick",
    "pavlovic",
    "kv_factor",
    "abs_inequalities",
    "proof_chain",
)

_WEIGHT_OPS = ("re_contraction", "pointwise_gradient", "proof_chain")
_DISK_OPS = ("modulus_contraction", "schwarz_pick", "pavlovic")


@dataclass(frozen=True)
class CaseSpec:
    """Config-level description of one case; resolved names, not objects."""

    op: str
    function: str | None = None
    weight: str | None = None
    factor: float | None = None

    @property
    def case_id(self) -> str:
        parts = [self.op]
        if self.function:
            parts.append(self.function)
        if self.weight:
            parts.append(self.weight)
        return ":".join(parts)


@dataclass(frozen=True)
class SuiteConfig:
    sample: SampleSpec
    cases: tuple
    ball_dims: tuple = (1, 2, 3)
    workers: int = 1
    schema_version: int = 1


def default_config(
    seed: int = DEFAULT_SEED, count: int = 10_000, workers: int = 1
) -> SuiteConfig:
    """The full default suite over the whole catalog."""
    cases = []
    for fn, wt in (("strip_map", "strip"), ("cayley", "half_plane")):
        cases.append(CaseSpec(op="re_contraction", function=fn, weight=wt))
        cases.append(CaseSpec(op="pointwise_gradient", function=fn, weight=wt))
        cases.append(CaseSpec(op="proof_chain", function=fn, weight=wt))
    for f in catalog():
        if f.codomain in ("disk", "ball_slice"):
            cases.append(CaseSpec(op="modulus_contraction", function=f.name))
            cases.append(CaseSpec(op="schwarz_pick", function=f.name))
            cases.append(CaseSpec(op="pavlovic", function=f.name))
        if f.codomain == "strip":
            cases.append(CaseSpec(op="kv_factor", function=f.name))
    cases.append(CaseSpec(op="abs_inequalities"))
    return SuiteConfig(
        sample=SampleSpec(count=count, seed=seed),
        cases=tuple(cases),
        workers=workers,
    )


def validate_config(config: SuiteConfig) -> list:
    """All config problems at once; empty list means valid."""
    errors = []
    if not isinstance(config.sample, SampleSpec):
        errors.append("sample: not a SampleSpec")
    if config.schema_version != 1:
        errors.append(f"schema_version: unsupported {config.schema_version!r}")
    if config.workers < 1:
        errors.append("workers: must be >= 1")
    for dim in config.ball_dims:
        if not 1 <= int(dim) <= 8:
            errors.append(f"ball_dims: {dim} outside 1..8")
    if not config.cases:
        errors.append("cases: empty suite")
    validated_functions = set()
    for cs in config.cases:
        label = cs.case_id
        if cs.op not in OPS:
            errors.append(f"{label}: unknown op {cs.op!r}")
            continue
        if cs.op == "abs_inequalities":
            if cs.function or cs.weight:
                errors.append(f"{label}: abs_inequalities takes no function or weight")
            continue
        if not cs.function:
            errors.append(f"{label}: missing function")
            continue
        try:
            f = catalog_get(cs.function)
        except KeyError:
            errors.append(f"{label}: unknown catalog function {cs.function!r}")
            continue
        if f.name not in validated_functions:
            try:
                validate_entry(f)
                validated_functions.add(f.name)
            except ValueError as exc:
                errors.append(f"{label}: {exc}")
        if cs.op in _WEIGHT_OPS:
            if not cs.weight:
                errors.append(f"{label}: missing weight")
                continue
            if cs.weight not in WEIGHT_FACTORIES:
                errors.append(f"{label}: unknown weight {cs.weight!r}")
                continue
            weight = WEIGHT_FACTORIES[cs.weight]()
            lo, hi = f.re_interval
            if not (weight.domain.lo <= lo and hi <= weight.domain.hi):
                errors.append(
                    f"{label}: Re-image ({lo}, {hi}) not contained in weight "
                    f"domain ({weight.domain.lo}, {weight.domain.hi})"
                )
        elif cs.op in _DISK_OPS:
            if f.codomain not in ("disk", "ball_slice"):
                errors.append(f"{label}: needs a disk-codomain function, got {f.codomain!r}")
        elif cs.op == "kv_factor":
            if f.re_interval != (-1.0, 1.0):
                errors.append(f"{label}: Re-image must be (-1, 1)")
    return errors


def _build_case(cs: CaseSpec) -> InequalityCase:
    f = catalog_get(cs.function) if cs.function else None
    target: object = "sigma"
    if cs.weight:
        target = WEIGHT_FACTORIES[cs.weight]()
    kwargs = {}
    if cs.op == "kv_factor":
        kwargs["factor"] = cs.factor if cs.factor is not None else KV_FACTOR
    elif cs.factor is not None:
        kwargs["factor"] = cs.factor
    if cs.op == "proof_chain":
        kwargs["tol_abs"] = 1e-6
    return InequalityCase(id=cs.case_id, function=f, target=target, **kwargs)


@dataclass(frozen=True)
class SuiteResult:
    overall_pass: bool
    reports: tuple
    seed: int
    wall_time: float
    schema_version: int = 1

    def data_dict(self) -> dict:
        return {
            "schema_version": self.schema_version,
            "seed": self.seed,
            "overall_pass": self.overall_pass,
            "cases": [r.to_dict() for r in self.reports],
        }

    def to_dict(self) -> dict:
        return {
            "data": self.data_dict(),
            "meta": {
                "wall_time": self.wall_time,
                "case_wall_times": {r.case_id: r.wall_time for r in self.reports},
            },
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)

    def data_json(self) -> str:
        """The deterministic payload only (no wall times); for golden comparison."""
        return json.dumps(self.data_dict(), indent=2, sort_keys=True)

    def margins_csv(self) -> str:
        lines = ["case_id,sample_index,margin"]
        for r in self.reports:
            if r.margins is None:
                continue
            for i, m in enumerate(r.margins):
                lines.append(f"{r.case_id},{i},{float(m)!r}")
        return "\n".join(lines) + "\n"


def run_suite(config: SuiteConfig) -> SuiteResult:
    """Run every configured case; deterministic for a fixed config and seed."""
    errors = validate_config(config)
    if errors:
        raise ConfigError(errors)
    t0 = time.perf_counter()
    spec = config.sample
    reports = []
    for cs in config.cases:
        if cs.op == "abs_inequalities":
            reports.extend(
                verify_abs_inequalities(spec, dims=config.ball_dims, workers=config.workers)
            )
            continue
        case = _build_case(cs)
        if cs.op == "re_contraction":
            reports.append(verify_re_contraction(case, spec, workers=config.workers))
        elif cs.op == "pointwise_gradient":
            grid = polar_grid(radius_cap=spec.radius_cap)
            reports.append(verify_pointwise_gradient(case, grid, seed=spec.seed))
        elif cs.op == "modulus_contraction":
            reports.append(verify_modulus_contraction(case, spec, workers=config.workers))
        elif cs.op == "schwarz_pick":
            reports.append(verify_schwarz_pick(case, spec, workers=config.workers))
        elif cs.op == "pavlovic":
            grid = polar_grid(radius_cap=spec.radius_cap)
            reports.append(verify_pavlovic(case, grid, seed=spec.seed))
        elif cs.op == "kv_factor":
            reports.append(verify_kv_factor(case, spec, workers=config.workers))
        elif cs.op == "proof_chain":
            reports.append(verify_proof_chain(case, spec))
    overall = all(r.status == "pass" for r in reports)
    return SuiteResult(
        overall_pass=overall,
        reports=tuple(reports),
        seed=spec.seed,
        wall_time=time.perf_counter() - t0,
    )
