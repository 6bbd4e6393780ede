"""Sharp-constant predictions and the convergence-study driver.

The prediction table is a pure function of (inequality id, domain
parameters, s, p, gamma, k); the study driver confronts each prediction
with a quotient ladder and reports pass/fail.  Richardson extrapolation is
attempted only when the ladder differences follow a clean power law --
several limits here are logarithmically slow, and extrapolating those
would silently lie, so they use a decreasing-to-zero pass mode instead.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .errors import HypothesisViolationError
from .geometry import BALL, STRIP, Domain


@dataclass(frozen=True)
class PredictedConstant:
    inequality_id: str
    value: float
    provenance: str
    hypotheses: tuple[str, ...]


@dataclass(frozen=True)
class StudyReport:
    """A parameter-ladder convergence study against a predicted constant."""

    family: str
    fixed_params: dict
    quotient: str
    ladder: tuple[float, ...]
    values: tuple[float, ...]
    error_estimates: tuple[float, ...]
    extrapolated_limit: float
    prediction: float | None
    tolerance: float
    mode: str  # "limit" or "decreasing-to-zero"
    threshold: float | None
    passed: bool
    extrapolation_used: bool = False


def interpolation_constant(s: float, n: int, h: float, R: float) -> float:
    """((s-1) h + (s-n) R) / (h + R); the reach-interpolation constant."""
    if math.isinf(h):
        return s - 1.0
    return ((s - 1.0) * h + (s - n) * R) / (h + R)


def interpolation_endpoints_check(s: float, n: int) -> dict[str, float]:
    """The interpolation constant at h = 0 (general set) and h = inf (convex)."""
    if s <= n:
        raise HypothesisViolationError("the general endpoint requires s > n")
    return {"general": interpolation_constant(s, n, 0.0, 1.0),
            "convex": interpolation_constant(s, n, math.inf, 1.0)}


def predicted_constant(
    inequality_id: str,
    domain: Domain,
    s: float | None = None,
    p: float | None = None,
    gamma: float | None = None,
    k: int | None = None,
) -> PredictedConstant:
    """The predicted sharp constant for the named inequality on this domain."""
    n = domain.dim
    ineq = inequality_id
    if ineq == "2.4":
        if s is None or s <= n:
            raise HypothesisViolationError("(2.4) requires s > n")
        return PredictedConstant("2.4", float(s - n), "general open set", ("open",))
    if ineq == "2.9":
        if not domain.satisfies_c:
            raise HypothesisViolationError("(2.9) requires -laplace(d) >= 0")
        if s is None or s <= 1.0:
            raise HypothesisViolationError("(2.9) requires s > 1")
        return PredictedConstant("2.9", s - 1.0, "mean-convex sharp constant", ("condition-C",))
    if ineq in ("2.13", "2.17"):
        if domain.kind not in (BALL, STRIP, "annulus"):
            raise HypothesisViolationError("reach interpolation needs ball/strip/annulus")
        R = domain.inradius
        h = domain.reach
        s_min = 1.0 if math.isinf(h) else (h + n * R) / (h + R)
        if s is None or s <= s_min:
            raise HypothesisViolationError(f"interpolation requires s > {s_min}")
        return PredictedConstant(
            "2.13", interpolation_constant(s, n, h, R),
            "reach interpolation ((s-1)h + (s-n)R)/(h+R)", ("finite inradius", "positive reach"),
        )
    if ineq == "B1":
        if domain.kind == BALL:
            return PredictedConstant(
                "B1", (n - 1) / domain.spec.params["R"], "ball: bounds coincide", ("ball",)
            )
        if domain.kind == STRIP:
            return PredictedConstant("B1", 0.0, "strip: flat boundary", ("strip",))
        raise HypothesisViolationError("B1 is pinned down only for the ball and the strip")
    if ineq == "thmC-series":
        if domain.kind != BALL:
            raise HypothesisViolationError("the remainder series is stated on a ball")
        if s is None or s < 2.0 or k is None or not 1 <= k <= math.floor(s) - 1:
            raise HypothesisViolationError("series terms need s >= 2 and 1 <= k <= floor(s)-1")
        R = domain.spec.params["R"]
        return PredictedConstant(
            "thmC-series", (n - 1) / R**k, f"series constant (n-1)/R^{k}", ("ball", "s >= 2")
        )
    if ineq == "gamma-remainder":
        if gamma is None or gamma <= 1.0:
            raise HypothesisViolationError("the X-weight remainder requires gamma > 1")
        return PredictedConstant(
            "gamma-remainder", gamma - 1.0, "log-weight remainder constant", ("gamma > 1",)
        )
    if ineq == "6.1-first":
        if s is None or p is None or s <= 1.0 or p < 1.0:
            raise HypothesisViolationError("(6.1) requires s > 1 and p >= 1")
        return PredictedConstant("6.1-first", ((s - 1.0) / p) ** p, "L^p leading constant", ())
    if ineq == "6.1-second":
        if s is None or p is None or s <= 1.0 or p < 1.0:
            raise HypothesisViolationError("(6.1) requires s > 1 and p >= 1")
        return PredictedConstant(
            "6.1-second", ((s - 1.0) / p) ** (p - 1.0), "L^p remainder constant", ()
        )
    raise ValueError(f"unknown inequality id {inequality_id!r}")


def b1_bounds(domain: Domain) -> tuple[float, float]:
    """Lower/upper bounds for the homogeneous remainder constant.

    (n-1) H_min from below, the area-averaged (n-1) H from above; they
    coincide on the ball, and the strip value is exactly 0.
    """
    n = domain.dim
    if domain.kind == BALL:
        value = (n - 1) / domain.spec.params["R"]
        return (value, value)
    if domain.kind == STRIP:
        return (0.0, 0.0)
    if domain.kind == "annulus":
        curv = domain.curvature_summary()
        return ((n - 1) * curv.h_min, (n - 1) * curv.h_mean)
    raise HypothesisViolationError("B1 bounds need a C^2 boundary (ball, strip or annulus)")


@dataclass(frozen=True)
class CheegerEstimate:
    h_value: float
    minimizing_radius: float
    bound_ok: bool
    isoperimetric_ok: bool


def cheeger_estimate(domain: Domain, grid: int = 64) -> CheegerEstimate:
    """Cheeger constant of the ball over the concentric family.

    area/vol of a concentric ball of radius rho is n/rho in normalized
    units, strictly decreasing, so the minimizer is the full ball and
    h = n/R.  The grid search keeps the computation honest; the identity
    h * R = n is asserted by the tests.
    """
    if domain.kind != BALL:
        raise HypothesisViolationError("the concentric Cheeger estimate requires a ball")
    n = domain.dim
    R = domain.spec.params["R"]
    radii = np.linspace(R / grid, R, grid)
    ratios = n / radii  # area(rho^(n-1)) / vol(rho^n / n)
    idx = int(np.argmin(ratios))
    h_value = float(ratios[idx])
    lower = (n - 1) / R
    return CheegerEstimate(
        h_value=h_value,
        minimizing_radius=float(radii[idx]),
        bound_ok=h_value >= lower - 1e-12,
        isoperimetric_ok=(n / R) >= lower - 1e-12,
    )


# ---------------------------------------------------------------------------
# Convergence studies.


def richardson_extrapolate(values: list[float]) -> tuple[float, bool]:
    """Extrapolate a geometric-ladder sequence when differences follow a
    clean power law (ratio of successive differences roughly constant,
    residual < 10%); otherwise return the final value unchanged."""
    if len(values) < 3:
        return values[-1], False
    diffs = np.diff(values)
    if np.any(diffs == 0.0):
        return values[-1], False
    ratios = diffs[1:] / diffs[:-1]
    if np.any(ratios <= 0.0) or np.any(ratios >= 1.0):
        return values[-1], False
    spread = np.max(np.abs(ratios - np.mean(ratios)))
    if spread > 0.1 * abs(np.mean(ratios)):
        return values[-1], False
    rho = float(ratios[-1])
    limit = values[-1] + diffs[-1] * rho / (1.0 - rho)
    return float(limit), True


def convergence_study(
    evaluate: Callable[[float], tuple[float, float]],
    ladder: list[float],
    prediction: float | None,
    tolerance: float,
    family: str = "",
    quotient: str = "",
    fixed_params: dict | None = None,
    mode: str = "limit",
    threshold: float | None = None,
) -> StudyReport:
    """Run `evaluate` (returning (value, error_estimate)) along the ladder.

    mode "limit": pass iff |extrapolated - prediction| <= tolerance.
    mode "decreasing-to-zero": pass iff strictly decreasing and the final
    value is below the per-study threshold.
    """
    ladder = list(ladder)
    if any(b >= a for a, b in zip(ladder, ladder[1:])):
        raise ValueError("ladder must be sorted strictly decreasing")
    values, errors = [], []
    for param in ladder:
        value, err = evaluate(param)
        values.append(value)
        errors.append(err)
    if mode == "limit":
        extrapolated, used = richardson_extrapolate(values)
        passed = prediction is not None and abs(extrapolated - prediction) <= tolerance
    elif mode == "decreasing-to-zero":
        if threshold is None:
            raise ValueError("decreasing-to-zero mode needs a threshold")
        extrapolated, used = values[-1], False
        decreasing = all(b < a for a, b in zip(values, values[1:]))
        passed = decreasing and values[-1] <= threshold
    else:
        raise ValueError(f"unknown study mode {mode!r}")
    return StudyReport(
        family=family,
        fixed_params=dict(fixed_params or {}),
        quotient=quotient,
        ladder=tuple(ladder),
        values=tuple(values),
        error_estimates=tuple(errors),
        extrapolated_limit=extrapolated,
        prediction=prediction,
        tolerance=tolerance,
        mode=mode,
        threshold=threshold,
        passed=passed,
        extrapolation_used=used,
    )
