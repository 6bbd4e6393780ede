"""BV test-function families, represented exactly.

A profile is a nonnegative function of the reduced coordinate, stored as
piecewise descriptors plus an explicit finite list of jumps.  No
mollification happens anywhere: the gradient of an indicator is carried as
its jump terms, weighted by the co-area surface factor at the jump
location, which is the exact limit object of the smoothed computations.

Value descriptors are drawn from a tiny closed algebra (constants, powers
of the distance, optionally an X-weight factor) so that downstream
integrals can take closed-form paths; the one smooth family (radial bumps)
is a C^1 cubic cap evaluated numerically.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import ProfileSupportError
from .geometry import BALL, PUNCTURED_BALL, PUNCTURED_SPACE, STRIP, Domain


@dataclass(frozen=True)
class Monomial:
    """coef * d^(d_exp + d_exp_s * s) * X^(x_exp)(d/R), s bound at evaluation."""

    coef: float = 1.0
    d_exp: float = 0.0
    d_exp_s: float = 0.0
    x_exp: float = 0.0

    def exponent(self, s: float) -> float:
        return self.d_exp + self.d_exp_s * s

    def derivative(self, s: float) -> "Monomial":
        """|d/dt| of the monomial along a branch (|d'| = 1); needs x_exp = 0."""
        if self.x_exp != 0.0:
            raise ValueError("derivative of X-weighted descriptors is not needed here")
        e = self.exponent(s)
        if e == 0.0:
            return Monomial(0.0, 0.0)
        if e < 0.0:
            raise ValueError("profile descriptors must have nonnegative exponents")
        return Monomial(self.coef * e, e - 1.0)

    def __call__(self, d, s: float, inradius: float):
        d = np.asarray(d, dtype=float)
        out = self.coef * np.power(d, self.exponent(s))
        if self.x_exp != 0.0:
            out = out * np.power(1.0 - np.log(d / inradius), -self.x_exp)
        return out


@dataclass(frozen=True)
class SplineBump:
    """C^1 cubic cap: value 1 at the center, 0 at center +- width."""

    center: float
    width: float

    def value(self, t):
        xi = np.abs((np.asarray(t, dtype=float) - self.center) / self.width)
        inside = xi < 1.0
        y = np.where(inside, 1.0 - xi, 0.0)
        return np.where(inside, y * y * (3.0 - 2.0 * y), 0.0)

    def deriv_abs(self, t):
        xi = np.abs((np.asarray(t, dtype=float) - self.center) / self.width)
        inside = xi < 1.0
        y = np.where(inside, 1.0 - xi, 0.0)
        return np.where(inside, 6.0 * y * (1.0 - y) / self.width, 0.0)


@dataclass(frozen=True)
class Piece:
    """One subinterval of the reduced coordinate carrying a value descriptor.

    d_lo/d_hi optionally pin the exact distance value at the endpoints:
    on a decreasing branch the coordinate R - delta is not representable
    once delta < eps*R, so recovering d = delta through t would lose the
    cut-off entirely.
    """

    t_lo: float
    t_hi: float
    value: Monomial | SplineBump
    d_lo: float | None = None
    d_hi: float | None = None


@dataclass(frozen=True)
class Jump:
    """A jump of |g| at t, of magnitude `magnitude` evaluated at d(t).

    d pins the exact distance at the jump for cut-offs below resolution.
    """

    t: float
    magnitude: Monomial
    d: float | None = None


@dataclass(frozen=True)
class TestProfile:
    family: str
    params: dict = field(default_factory=dict)
    pieces: tuple[Piece, ...] = ()
    jumps: tuple[Jump, ...] = ()

    def params_label(self) -> str:
        return ";".join(f"{k}={v:g}" for k, v in self.params.items())


@dataclass(frozen=True)
class ProductProfile:
    """Transverse-mass x longitudinal-profile test function on the strip.

    Only the transverse masses M (of phi) and K (of |grad' phi|) enter any
    quotient; all strip functionals are reported per unit transverse mass,
    so scaling the transverse profile by delta multiplies the gradient-mass
    ratio K_eff/M_eff by delta while leaving everything else untouched.
    """

    dim: int
    longitudinal: TestProfile
    m1: float
    k1: float
    scale: float

    @property
    def m_eff(self) -> float:
        return self.scale ** (1 - self.dim) * self.m1

    @property
    def k_eff(self) -> float:
        return self.scale ** (2 - self.dim) * self.k1

    @property
    def grad_mass_ratio(self) -> float:
        """K_eff / M_eff; equals dim * scale for the cone profile."""
        return (self.k1 / self.m1) * self.scale

    @property
    def family(self) -> str:
        return self.longitudinal.family

    @property
    def params(self) -> dict:
        return {**self.longitudinal.params, "tscale": self.scale}

    def params_label(self) -> str:
        return ";".join(f"{k}={v:g}" for k, v in self.params.items())


def cone_transverse_masses(dim: int) -> tuple[float, float]:
    """(M1, K1) of the unit cone phi(y') = max(0, 1 - |y'|) in R^(dim-1).

    The sphere-area constant of the transverse sphere is normalized to 1
    (it cancels in the only quantity used, the ratio K1/M1 = dim).
    """
    m = dim - 2  # transverse radial weight exponent
    k1 = 1.0 / (m + 1)
    m1 = 1.0 / (m + 1) - 1.0 / (m + 2)
    return m1, k1


# ---------------------------------------------------------------------------
# Constructors.


def annulus_indicator(domain: Domain, delta: float, eta: float) -> TestProfile:
    """Indicator of the shell delta < |x| < eta around a puncture."""
    if not 0.0 < delta < eta:
        raise ProfileSupportError(f"need 0 < delta < eta, got delta={delta}, eta={eta}")
    if domain.kind not in (PUNCTURED_SPACE, PUNCTURED_BALL):
        raise ProfileSupportError("annulus_indicator requires a punctured domain (d = |x|)")
    if domain.kind == PUNCTURED_BALL and eta > domain.inradius:
        raise ProfileSupportError(
            f"eta={eta} leaves the region where d = |x| (limit {domain.inradius})"
        )
    one = Monomial()
    return TestProfile(
        family="annulus-indicator",
        params={"delta": delta, "eta": eta},
        pieces=(Piece(delta, eta, one),),
        jumps=(Jump(delta, one), Jump(eta, one)),
    )


def power_profile(domain: Domain, exponent: float) -> TestProfile:
    """g = d^exponent on the whole domain; exact equality family of the
    basic inequality when exponent = s - 1 + eps."""
    if exponent <= 0.0:
        raise ProfileSupportError(f"exponent must be positive, got {exponent}")
    if not math.isfinite(domain.inradius):
        raise ProfileSupportError("power profiles need a finite inradius")
    reduction = domain.radial_reduction()
    return TestProfile(
        family="power",
        params={"exponent": exponent},
        pieces=(Piece(reduction.t_min, reduction.t_max, Monomial(d_exp=exponent)),),
        jumps=(),
    )


def ball_shell_indicator(domain: Domain, delta: float) -> TestProfile:
    """Indicator of the concentric ball at distance delta from the boundary."""
    if domain.kind != BALL:
        raise ProfileSupportError("ball_shell_indicator requires a ball")
    radius = domain.spec.params["R"]
    if not 0.0 < delta < radius:
        raise ProfileSupportError(f"need 0 < delta < R={radius}, got {delta}")
    one = Monomial()
    return TestProfile(
        family="ball-shell",
        params={"delta": delta},
        pieces=(Piece(0.0, radius - delta, one, d_lo=radius, d_hi=delta),),
        jumps=(Jump(radius - delta, one, d=delta),),
    )


def strip_slab_profile(
    domain: Domain, eps: float, eta: float, transverse_scale: float
) -> ProductProfile:
    """chi_(eps, eta)(x_n) times the scaled transverse cone profile."""
    if domain.kind != STRIP:
        raise ProfileSupportError("strip_slab_profile requires a strip")
    half_width = domain.spec.params["R"]
    if not 0.0 < eps < eta:
        raise ProfileSupportError(f"need 0 < eps < eta, got eps={eps}, eta={eta}")
    if eta > half_width:
        raise ProfileSupportError(f"eta={eta} exceeds the half-width {half_width} (d = x_n fails)")
    if transverse_scale <= 0.0:
        raise ProfileSupportError("transverse_scale must be positive")
    one = Monomial()
    longitudinal = TestProfile(
        family="strip-slab",
        params={"eps": eps, "eta": eta},
        pieces=(Piece(eps, eta, one),),
        jumps=(Jump(eps, one), Jump(eta, one)),
    )
    m1, k1 = cone_transverse_masses(domain.dim)
    return ProductProfile(domain.dim, longitudinal, m1, k1, transverse_scale)


def cheeger_concentric(domain: Domain, rho: float) -> TestProfile:
    """g = d^(s-1) on the concentric ball of radius rho (s bound at use)."""
    if domain.kind != BALL:
        raise ProfileSupportError("cheeger_concentric requires a ball")
    radius = domain.spec.params["R"]
    if not 0.0 < rho <= radius:
        raise ProfileSupportError(f"need 0 < rho <= R={radius}, got {rho}")
    power = Monomial(d_exp=-1.0, d_exp_s=1.0)  # d^(s-1)
    return TestProfile(
        family="cheeger-concentric",
        params={"rho": rho},
        pieces=(Piece(0.0, rho, power, d_lo=radius, d_hi=radius - rho),),
        jumps=(Jump(rho, power, d=radius - rho),),
    )


def radial_bump(domain: Domain, center: float, width: float) -> TestProfile:
    """Smooth C^1 bump of unit height supported on (center-width, center+width)."""
    if width <= 0.0:
        raise ProfileSupportError("width must be positive")
    reduction = domain.radial_reduction()
    lo, hi = center - width, center + width
    if lo < reduction.t_min or hi > reduction.t_max:
        raise ProfileSupportError(
            f"bump support ({lo}, {hi}) leaves the reduced range "
            f"[{reduction.t_min}, {reduction.t_max}]"
        )
    for ridge in reduction.ridge_points:
        if lo < ridge < hi:
            raise ProfileSupportError(f"bump support crosses the ridge point t={ridge}")
    return TestProfile(
        family="bump",
        params={"center": center, "width": width},
        pieces=(Piece(lo, hi, SplineBump(center, width)),),
        jumps=(),
    )


def slab_surface_identity(eps: float, eta: float, s: float) -> tuple[float, float]:
    """Both sides of the exact slab simplification
    (eps^(1-s) + eta^(1-s)) - (s-1) * int_eps^eta x^(-s) dx = 2 eta^(1-s).

    Returned as (lhs, rhs); the evaluation engine asserts their agreement.
    """
    from .quadrature import power_integral

    lhs = eps ** (1.0 - s) + eta ** (1.0 - s) - (s - 1.0) * power_integral(-s, eps, eta)
    return lhs, 2.0 * eta ** (1.0 - s)
