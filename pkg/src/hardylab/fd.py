"""Finite-difference derivatives with Richardson extrapolation.

Used as an independent oracle against analytic formulas (eikonal checks,
Hessians of the distance function, divergence of radial vector fields).
"""

from __future__ import annotations

from typing import Callable

import numpy as np


def central_derivative(f: Callable[[float], float], x: float, h: float = 1e-5) -> float:
    """First derivative by central differences, Richardson-extrapolated.

    Combines steps h and h/2 to cancel the O(h^2) term; error is O(h^4).
    """
    d1 = (f(x + h) - f(x - h)) / (2.0 * h)
    d2 = (f(x + h / 2) - f(x - h / 2)) / h
    return (4.0 * d2 - d1) / 3.0


def central_second_derivative(f: Callable[[float], float], x: float, h: float = 1e-4) -> float:
    """Second derivative by central differences, Richardson-extrapolated."""
    def second(step: float) -> float:
        return (f(x + step) - 2.0 * f(x) + f(x - step)) / (step * step)

    d1 = second(h)
    d2 = second(h / 2)
    return (4.0 * d2 - d1) / 3.0


def gradient(f: Callable[[np.ndarray], float], x: np.ndarray, h: float = 1e-5) -> np.ndarray:
    """Richardson-extrapolated central-difference gradient of a scalar field."""
    x = np.asarray(x, dtype=float)
    out = np.empty_like(x)
    for i in range(x.size):
        e = np.zeros_like(x)
        e[i] = 1.0

        def along(t: float) -> float:
            return f(x + t * e)

        out[i] = central_derivative(along, 0.0, h)
    return out


def hessian(f: Callable[[np.ndarray], float], x: np.ndarray, h: float = 1e-4) -> np.ndarray:
    """Central-difference Hessian (symmetric, no extrapolation)."""
    x = np.asarray(x, dtype=float)
    n = x.size
    out = np.empty((n, n))
    f0 = f(x)
    for i in range(n):
        ei = np.zeros(n)
        ei[i] = h
        out[i, i] = (f(x + ei) - 2.0 * f0 + f(x - ei)) / (h * h)
        for j in range(i + 1, n):
            ej = np.zeros(n)
            ej[j] = h
            mixed = (
                f(x + ei + ej) - f(x + ei - ej) - f(x - ei + ej) + f(x - ei - ej)
            ) / (4.0 * h * h)
            out[i, j] = mixed
            out[j, i] = mixed
    return out
