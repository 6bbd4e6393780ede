"""Deterministic 1-D quadrature with explicit singular-endpoint handling.

The adaptive core is a Gauss-Kronrod (G7, K15) bisection scheme with a
worst-interval-first work list.  Power-law endpoint factors t^alpha
(alpha > -1) are removed exactly by the substitution u = t^(alpha+1), and
logarithmic weights X^gamma(t) = (1 - log t)^(-gamma) by tau = 1 - log t,
so the adaptive pass only ever sees a moderate working range even for
cut-offs down to 1e-40.

Closed-form fast paths for pure power and pure log-weight integrands are
exposed separately (`power_integral`, `power_binomial_integral`,
`log_weight_integral`); callers cross-check them against the adaptive path.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import DivergentIntegralError, NonconvergenceError

# 15-point Kronrod extension of 7-point Gauss (QUADPACK xgk/wgk/wg tables).
_XK = np.array([
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.0,
])
_WK = np.array([
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
])
_WG = np.array([
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
])

# Full node vector on [-1, 1]: 15 Kronrod points, symmetric about 0.
_NODES = np.concatenate([-_XK[:-1], _XK[::-1]])
_WEIGHTS_K = np.concatenate([_WK[:-1], _WK[::-1]])
_WEIGHTS_G = np.zeros(15)
# Gauss points are the odd-indexed Kronrod points.
_WEIGHTS_G[1:14:2] = np.concatenate([_WG[:-1], _WG[::-1]])

DEFAULT_REL_TOL = 1e-10
DEFAULT_SINGULAR_REL_TOL = 1e-8
MAX_PANELS = 10**6


@dataclass(frozen=True)
class QuadResult:
    """Value of a 1-D integral plus an a-posteriori error estimate."""

    value: float
    error_estimate: float
    subdivisions: int

    def __add__(self, other: "QuadResult") -> "QuadResult":
        return QuadResult(
            self.value + other.value,
            self.error_estimate + other.error_estimate,
            self.subdivisions + other.subdivisions,
        )

    def scaled(self, c: float) -> "QuadResult":
        return QuadResult(c * self.value, abs(c) * self.error_estimate, self.subdivisions)


def exact(value: float) -> QuadResult:
    """Wrap a closed-form value as a zero-error QuadResult."""
    return QuadResult(value, 0.0, 0)


def _panel(f: Callable[[np.ndarray], np.ndarray], a: float, b: float) -> tuple[float, float]:
    """Kronrod value and |K15 - G7| error estimate on one panel."""
    mid = 0.5 * (a + b)
    half = 0.5 * (b - a)
    fx = np.asarray(f(mid + half * _NODES), dtype=float)
    if not np.all(np.isfinite(fx)):
        raise NonconvergenceError(f"integrand not finite inside panel [{a!r}, {b!r}]")
    vk = half * float(fx @ _WEIGHTS_K)
    vg = half * float(fx @ _WEIGHTS_G)
    err = abs(vk - vg)
    # QUADPACK-style sharpening of the raw embedded estimate.
    scale = half * float(np.abs(fx) @ _WEIGHTS_K)
    if scale > 0.0 and err > 0.0:
        err = min(err, scale * min(1.0, (200.0 * err / scale) ** 1.5))
    return vk, err


def integrate(
    f: Callable[[np.ndarray], np.ndarray],
    a: float,
    b: float,
    rel_tol: float = DEFAULT_REL_TOL,
    abs_tol: float = 0.0,
    max_panels: int = MAX_PANELS,
) -> QuadResult:
    """Adaptive Gauss-Kronrod integration of a vectorized integrand on [a, b].

    Stops when the summed panel errors fall below max(rel_tol*|value|, abs_tol).
    Exhausting the panel budget raises NonconvergenceError: a budget blow-up
    almost always means an unhandled singularity, never a silent result.
    """
    if not (math.isfinite(a) and math.isfinite(b)):
        raise DivergentIntegralError("integrate requires a finite interval")
    if a == b:
        return QuadResult(0.0, 0.0, 0)
    if a > b:
        return integrate(f, b, a, rel_tol, abs_tol, max_panels).scaled(-1.0)

    value, err = _panel(f, a, b)
    # Heap key: negative error, then interval bounds for determinism.
    heap: list[tuple[float, float, float, float, float]] = [(-err, a, b, value, err)]
    total_value, total_err, panels = value, err, 1
    while total_err > max(rel_tol * abs(total_value), abs_tol):
        if panels >= max_panels:
            raise NonconvergenceError(
                f"subdivision budget exhausted ({panels} panels, error {total_err:.3e})"
            )
        _, lo, hi, v_old, e_old = heapq.heappop(heap)
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            # Interval at float resolution: keep its estimate and give up on it.
            total_err = max(total_err - e_old, 0.0)
            continue
        v1, e1 = _panel(f, lo, mid)
        v2, e2 = _panel(f, mid, hi)
        total_value += v1 + v2 - v_old
        total_err += e1 + e2 - e_old
        heapq.heappush(heap, (-e1, lo, mid, v1, e1))
        heapq.heappush(heap, (-e2, mid, hi, v2, e2))
        panels += 1
    return QuadResult(total_value, total_err, panels)


def integrate_power_endpoint(
    f_smooth: Callable[[np.ndarray], np.ndarray],
    alpha: float,
    endpoint: str,
    a: float,
    b: float,
    rel_tol: float = DEFAULT_SINGULAR_REL_TOL,
    abs_tol: float = 0.0,
) -> QuadResult:
    """Integrate f_smooth(t) * (distance to endpoint)^alpha over [a, b].

    The singular factor is removed exactly by u = (distance)^(alpha+1):
    the transformed integrand is f_smooth evaluated along the warped grid,
    bounded whenever f_smooth is.  Requires alpha > -1.
    """
    if alpha <= -1.0:
        raise DivergentIntegralError(f"power endpoint alpha={alpha} is not integrable")
    if endpoint not in ("left", "right"):
        raise ValueError("endpoint must be 'left' or 'right'")
    if a == b:
        return QuadResult(0.0, 0.0, 0)
    if a > b:
        raise ValueError("integrate_power_endpoint requires a <= b")
    e = alpha + 1.0
    span = b - a

    if endpoint == "right":
        def g(u: np.ndarray) -> np.ndarray:
            return f_smooth(b - np.power(u, 1.0 / e))
    else:
        def g(u: np.ndarray) -> np.ndarray:
            return f_smooth(a + np.power(u, 1.0 / e))

    res = integrate(g, 0.0, span**e, rel_tol, abs_tol)
    return res.scaled(1.0 / e)


def x_weight(t: np.ndarray | float, gamma: float = 1.0) -> np.ndarray | float:
    """The logarithmic weight X^gamma(t) = (1 - log t)^(-gamma) on (0, 1]."""
    t_arr = np.asarray(t, dtype=float)
    if np.any(t_arr <= 0.0) or np.any(t_arr > 1.0):
        raise ValueError("x_weight requires t in (0, 1]")
    out = np.power(1.0 - np.log(t_arr), -gamma)
    return float(out) if np.isscalar(t) or t_arr.ndim == 0 else out


def integrate_log_weighted(
    f_smooth: Callable[[np.ndarray], np.ndarray],
    gamma: float,
    a: float,
    b: float,
    rel_tol: float = DEFAULT_SINGULAR_REL_TOL,
    abs_tol: float = 0.0,
) -> QuadResult:
    """Integrate f_smooth(t) * t^(-1) * X^gamma(t) over [a, b] within (0, 1].

    Substitutes tau = 1 - log t, mapping the integral to
    int f_smooth(e^(1-tau)) tau^(-gamma) dtau over [1-log b, 1-log a]:
    the working range stays moderate even for a = 1e-40.
    """
    if not (0.0 < a <= b <= 1.0):
        raise ValueError("integrate_log_weighted requires 0 < a <= b <= 1")
    if a == b:
        return QuadResult(0.0, 0.0, 0)

    def g(tau: np.ndarray) -> np.ndarray:
        return f_smooth(np.exp(1.0 - tau)) * np.power(tau, -gamma)

    return integrate(g, 1.0 - math.log(b), 1.0 - math.log(a), rel_tol, abs_tol)


# ---------------------------------------------------------------------------
# Closed-form fast paths.


def power_integral(p: float, a: float, b: float) -> float:
    """Exact value of int_a^b t^p dt for 0 <= a <= b (log branch at p = -1).

    Evaluated via expm1 so that exponents within rounding of a negative
    integer stay stable; diverges (raises) when the endpoint a = 0 is not
    integrable.
    """
    if a < 0.0 or b < a:
        raise ValueError("power_integral requires 0 <= a <= b")
    if a == b:
        return 0.0
    e = p + 1.0
    if a == 0.0:
        if e <= 0.0:
            raise DivergentIntegralError(f"int t^{p} dt diverges at 0")
        return b**e / e
    if e == 0.0:
        return math.log(b / a)
    # (b^e - a^e)/e = b^e * (-expm1(e*log(a/b)))/e, stable for small e.
    return b**e * (-math.expm1(e * math.log(a / b))) / e


def power_binomial_integral(p: float, m: int, a: float, b: float) -> float:
    """Exact value of int_a^b t^p (1 - t)^m dt for integer m >= 0, [a,b] in [0,1]."""
    if m < 0 or m != int(m):
        raise ValueError("m must be a nonnegative integer")
    total = 0.0
    for k in range(int(m) + 1):
        total += math.comb(int(m), k) * (-1.0) ** k * power_integral(p + k, a, b)
    return total


def log_weight_integral(gamma: float, a: float, b: float) -> float:
    """Exact value of int_a^b t^(-1) X^gamma(t) dt over [a, b] within (0, 1]."""
    if not (0.0 < a <= b <= 1.0):
        raise ValueError("log_weight_integral requires 0 < a <= b <= 1")
    if a == b:
        return 0.0
    tau_lo = 1.0 - math.log(b)
    tau_hi = 1.0 - math.log(a)
    if gamma == 1.0:
        return math.log(tau_hi / tau_lo)
    e = 1.0 - gamma
    return (tau_hi**e - tau_lo**e) / e
