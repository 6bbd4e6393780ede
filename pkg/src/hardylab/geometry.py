"""Exact analytic geometry for the domain catalogue.

Every domain is one of five closed-form shapes (ball, infinite strip/slab,
punctured space, punctured ball, spherical annulus).  Distance to the
complement, its gradient and Laplacian, the ridge set, reach, inradius and
boundary curvatures are all available in closed form, which is what makes
the rest of the package an oracle rather than a solver.

Conventions:
  * the strip of half-width R is the slab 0 < x_n < 2R;
  * principal curvatures are signed so that -laplace(d) = (n-1)H on the
    boundary (positive for a ball, negative on the inner sphere of an
    annulus);
  * all radial reductions drop the unit-sphere area constant (it cancels
    in every quotient considered here), so the co-area weight is t^(n-1).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable

import numpy as np

from .errors import DomainSpecError, HypothesisViolationError, RidgeError, SingularityError

RIDGE_TOL = 1e-9
SINGULARITY_TOL = 1e-12

BALL = "ball"
STRIP = "strip"
PUNCTURED_SPACE = "punctured_space"
PUNCTURED_BALL = "punctured_ball"
ANNULUS = "annulus"

_KINDS = (BALL, STRIP, PUNCTURED_SPACE, PUNCTURED_BALL, ANNULUS)


@dataclass(frozen=True)
class DomainSpec:
    """Analytic descriptor of one catalogue geometry.

    params by kind: ball/strip -> {"R": ...}; punctured_ball -> {"R_U": ...};
    annulus -> {"r0": ..., "R0": ...}; punctured_space -> {}.
    """

    kind: str
    dim: int
    params: dict = field(default_factory=dict)

    def validate(self) -> None:
        if self.kind not in _KINDS:
            raise DomainSpecError(f"unknown domain kind {self.kind!r}")
        if int(self.dim) != self.dim or self.dim < 2:
            raise DomainSpecError(f"dimension must be an integer >= 2, got {self.dim}")
        for name, value in self.params.items():
            if not (value > 0 and math.isfinite(value)):
                raise DomainSpecError(f"{self.kind}: parameter {name} must be positive, got {value}")
        if self.kind in (BALL, STRIP) and "R" not in self.params:
            raise DomainSpecError(f"{self.kind} requires parameter R")
        if self.kind == PUNCTURED_BALL and "R_U" not in self.params:
            raise DomainSpecError("punctured_ball requires parameter R_U")
        if self.kind == ANNULUS:
            if "r0" not in self.params or "R0" not in self.params:
                raise DomainSpecError("annulus requires parameters r0 and R0")
            if not self.params["r0"] < self.params["R0"]:
                raise DomainSpecError(
                    f"annulus requires r0 < R0, got r0={self.params['r0']}, R0={self.params['R0']}"
                )


@dataclass(frozen=True)
class Branch:
    """One interval of the reduced coordinate on which d(t) = d0 + slope*t."""

    t_lo: float
    t_hi: float
    d0: float
    slope: float  # +1 or -1

    def dist(self, t):
        return self.d0 + self.slope * np.asarray(t, dtype=float)

    def contains(self, t: float) -> bool:
        return self.t_lo <= t <= self.t_hi


@dataclass(frozen=True)
class RadialReduction:
    """1-D co-area reduction: coordinate range, weight, distance profile.

    mode "radial": t = |x|, weight t^(n-1) (normalized units).
    mode "slab":   t = x_n, weight 1; integrals are per unit transverse area.

    -laplace(d) splits into a branchwise density neg_lap(t) plus positive
    atoms of mass 2*weight(t_r) at each ridge point t_r (the kink of d
    contributes -d'' = 2*delta there; this is the singular part of the
    distributional Laplacian and it is what makes the equality families
    exact on domains with a ridge).
    """

    mode: str
    dim: int
    branches: tuple[Branch, ...]
    ridge_points: tuple[float, ...]
    inradius: float

    @property
    def t_min(self) -> float:
        return self.branches[0].t_lo

    @property
    def t_max(self) -> float:
        return self.branches[-1].t_hi

    @property
    def weight_exponent(self) -> int:
        return self.dim - 1 if self.mode == "radial" else 0

    def weight(self, t):
        return np.power(np.asarray(t, dtype=float), self.weight_exponent)

    def branch_at(self, t: float) -> Branch:
        for branch in self.branches:
            if branch.contains(t):
                return branch
        raise ValueError(f"t={t} outside the reduced range [{self.t_min}, {self.t_max}]")

    def dist(self, t):
        t_arr = np.asarray(t, dtype=float)
        out = np.empty_like(t_arr)
        remaining = np.ones_like(t_arr, dtype=bool)
        for branch in self.branches:
            mask = remaining & (t_arr <= branch.t_hi)
            out[mask] = branch.d0 + branch.slope * t_arr[mask]
            remaining &= ~mask
        if remaining.any():
            raise ValueError("coordinate outside the reduced range")
        return float(out) if out.ndim == 0 else out

    def slope(self, t: float) -> float:
        """d'(t); undefined on the ridge."""
        self._check_off_ridge(t)
        return self.branch_at(t).slope

    def neg_lap(self, t: float) -> float:
        """Density of -laplace(d) at reduced coordinate t (off the ridge)."""
        self._check_off_ridge(t)
        if self.mode == "slab":
            return 0.0
        if t <= SINGULARITY_TOL:
            raise SingularityError("-laplace(d) is singular at the origin")
        branch = self.branch_at(t)
        return -branch.slope * (self.dim - 1) / t

    def _check_off_ridge(self, t: float) -> None:
        for ridge in self.ridge_points:
            if abs(t - ridge) <= RIDGE_TOL * max(1.0, abs(ridge)):
                raise RidgeError(f"coordinate t={t} lies on the ridge (t={ridge})")


@dataclass(frozen=True)
class CurvatureSummary:
    """Boundary curvature data; None entries mean the boundary is not C^2."""

    h_min: float | None
    h_max: float | None
    h_mean: float | None
    kappas: tuple[tuple[float, ...], ...]  # per boundary component
    reach: float


@dataclass(frozen=True)
class DomainProperties:
    curvature: CurvatureSummary
    inradius: float
    satisfies_c: bool


@dataclass(frozen=True)
class Domain:
    """A catalogue domain with exact distance-function geometry."""

    spec: DomainSpec

    # -- basic descriptors ---------------------------------------------------

    @property
    def kind(self) -> str:
        return self.spec.kind

    @property
    def dim(self) -> int:
        return self.spec.dim

    @property
    def inradius(self) -> float:
        p = self.spec.params
        return {
            BALL: lambda: p["R"],
            STRIP: lambda: p["R"],
            PUNCTURED_SPACE: lambda: math.inf,
            PUNCTURED_BALL: lambda: p["R_U"] / 2.0,
            ANNULUS: lambda: (p["R0"] - p["r0"]) / 2.0,
        }[self.kind]()

    @property
    def satisfies_c(self) -> bool:
        return self.kind in (BALL, STRIP)

    @property
    def reach(self) -> float:
        """reach of the closure; r0 for the annulus, infinite otherwise."""
        if self.kind == ANNULUS:
            return self.spec.params["r0"]
        return math.inf

    def label(self) -> str:
        p = self.spec.params
        inner = ";".join(f"{k}={v:g}" for k, v in sorted(p.items()))
        return f"{self.kind}(n={self.dim}{';' + inner if inner else ''})"

    # -- pointwise geometry ----------------------------------------------------

    def distance(self, x) -> float | np.ndarray:
        """Distance to the complement; 0 on the complement by convention."""
        x = np.asarray(x, dtype=float)
        p = self.spec.params
        if self.kind == STRIP:
            xn = x[..., -1]
            d = np.minimum(xn, 2.0 * p["R"] - xn)
        else:
            r = np.linalg.norm(x, axis=-1)
            if self.kind == BALL:
                d = p["R"] - r
            elif self.kind == PUNCTURED_SPACE:
                d = r
            elif self.kind == PUNCTURED_BALL:
                d = np.minimum(r, p["R_U"] - r)
            else:
                d = np.minimum(r - p["r0"], p["R0"] - r)
        d = np.maximum(d, 0.0)
        return float(d) if d.ndim == 0 else d

    def _reduced_coordinate(self, x: np.ndarray) -> float:
        if self.kind == STRIP:
            return float(x[-1])
        return float(np.linalg.norm(x))

    def neg_laplacian_d(self, x) -> float:
        """Pointwise -laplace(d) off the ridge and off the origin."""
        x = np.asarray(x, dtype=float)
        return self.radial_reduction().neg_lap(self._reduced_coordinate(x))

    def project_to_boundary(self, x) -> np.ndarray:
        """Nearest boundary point xi(x) = x - d(x) grad d(x); off-ridge only."""
        x = np.asarray(x, dtype=float)
        p = self.spec.params
        reduction = self.radial_reduction()
        t = self._reduced_coordinate(x)
        reduction._check_off_ridge(t)
        if self.kind == STRIP:
            out = x.copy()
            out[-1] = 0.0 if x[-1] <= p["R"] else 2.0 * p["R"]
            return out
        if t <= SINGULARITY_TOL:
            raise RidgeError("the center has no unique boundary projection")
        branch = reduction.branch_at(t)
        # Radial projection: target radius is where d vanishes on this branch.
        target = -branch.d0 / branch.slope if branch.slope != 0 else t
        if self.kind == PUNCTURED_SPACE or (self.kind == PUNCTURED_BALL and branch.slope > 0):
            return np.zeros_like(x)
        return x * (target / t)

    # -- aggregates -----------------------------------------------------------

    def radial_reduction(self) -> RadialReduction:
        p = self.spec.params
        if self.kind == BALL:
            branches = (Branch(0.0, p["R"], p["R"], -1.0),)
            ridge: tuple[float, ...] = ()
        elif self.kind == STRIP:
            branches = (Branch(0.0, p["R"], 0.0, 1.0), Branch(p["R"], 2.0 * p["R"], 2.0 * p["R"], -1.0))
            ridge = (p["R"],)
        elif self.kind == PUNCTURED_SPACE:
            branches = (Branch(0.0, math.inf, 0.0, 1.0),)
            ridge = ()
        elif self.kind == PUNCTURED_BALL:
            mid = p["R_U"] / 2.0
            branches = (Branch(0.0, mid, 0.0, 1.0), Branch(mid, p["R_U"], p["R_U"], -1.0))
            ridge = (mid,)
        else:
            mid = 0.5 * (p["r0"] + p["R0"])
            branches = (Branch(p["r0"], mid, -p["r0"], 1.0), Branch(mid, p["R0"], p["R0"], -1.0))
            ridge = (mid,)
        mode = "slab" if self.kind == STRIP else "radial"
        return RadialReduction(mode, self.dim, branches, ridge, self.inradius)

    def curvature_summary(self) -> CurvatureSummary:
        p = self.spec.params
        n = self.dim
        if self.kind == BALL:
            kappa = 1.0 / p["R"]
            return CurvatureSummary(kappa, kappa, kappa, ((kappa,) * (n - 1),), math.inf)
        if self.kind == STRIP:
            return CurvatureSummary(0.0, 0.0, 0.0, ((0.0,) * (n - 1), (0.0,) * (n - 1)), math.inf)
        if self.kind == ANNULUS:
            r0, R0 = p["r0"], p["R0"]
            k_in, k_out = -1.0 / r0, 1.0 / R0
            # Area weights r0^(n-1), R0^(n-1); H on the spheres is k_in, k_out.
            a_in, a_out = r0 ** (n - 1), R0 ** (n - 1)
            h_mean = (a_in * k_in + a_out * k_out) / (a_in + a_out)
            return CurvatureSummary(
                k_in, k_out, h_mean, ((k_in,) * (n - 1), (k_out,) * (n - 1)), r0
            )
        # Punctured domains: the puncture is not a C^2 boundary point.
        return CurvatureSummary(None, None, None, (), math.inf)

    def properties(self) -> DomainProperties:
        reduction = self.radial_reduction()
        flag = self.satisfies_c
        # Consistency: the condition-(C) flag must agree with the sign of
        # -laplace(d) on a sample grid off the ridge.
        t_hi = reduction.t_max if math.isfinite(reduction.t_max) else reduction.t_min + 10.0
        for u in np.linspace(0.02, 0.98, 23):
            t = reduction.t_min + u * (t_hi - reduction.t_min)
            try:
                density = reduction.neg_lap(t)
            except (RidgeError, SingularityError):
                continue
            if density < -1e-12 and flag:
                raise AssertionError("condition-(C) flag inconsistent with -laplace(d) sample")
        if not flag:
            negatives = []
            for u in np.linspace(0.02, 0.98, 23):
                t = reduction.t_min + u * (t_hi - reduction.t_min)
                try:
                    negatives.append(reduction.neg_lap(t) < 0.0)
                except (RidgeError, SingularityError):
                    continue
            if not any(negatives):
                raise AssertionError("condition-(C) flag inconsistent with -laplace(d) sample")
        return DomainProperties(self.curvature_summary(), self.inradius, flag)


# ---------------------------------------------------------------------------
# Constructors.


def make_domain(spec: DomainSpec) -> Domain:
    spec.validate()
    return Domain(spec)


def ball(dim: int, radius: float) -> Domain:
    return make_domain(DomainSpec(BALL, dim, {"R": float(radius)}))


def strip(dim: int, half_width: float) -> Domain:
    return make_domain(DomainSpec(STRIP, dim, {"R": float(half_width)}))


def punctured_space(dim: int) -> Domain:
    return make_domain(DomainSpec(PUNCTURED_SPACE, dim, {}))


def punctured_ball(dim: int, radius: float) -> Domain:
    return make_domain(DomainSpec(PUNCTURED_BALL, dim, {"R_U": float(radius)}))


def annulus(dim: int, inner_radius: float, outer_radius: float) -> Domain:
    return make_domain(
        DomainSpec(ANNULUS, dim, {"r0": float(inner_radius), "R0": float(outer_radius)})
    )


def catalogue(dim: int = 3) -> tuple[Domain, ...]:
    """One representative of each catalogue kind, used by demos and the CLI."""
    return (
        ball(dim, 1.0),
        strip(dim, 1.0),
        punctured_space(dim),
        punctured_ball(dim, 2.0),
        annulus(dim, 1.0, 3.0),
    )


# ---------------------------------------------------------------------------
# Semiconcavity / reach residuals.


def convexity_defect(
    domain: Domain,
    kind: str,
    x,
    z=None,
    C: float | None = None,
    r: float | None = None,
) -> float | np.ndarray:
    """Pointwise residuals of the three convexity-type distance inequalities.

    kind "A":              second difference of A = |x|^2 - d^2  (>= 0 always);
    kind "atilde":         second difference of C|x|^2/2 - d minus (C - 1/r)|z|^2,
                           for x, x+-z inside a ball at distance r from the
                           boundary and C >= 1/r  (>= 0);
    kind "reach_residual": (h + d)(-laplace d) + (n-1) with h = reach
                           (>= 0; for infinite reach the limit statement is
                           -laplace(d) >= 0, so that value itself is returned).
    """
    x = np.asarray(x, dtype=float)
    if kind == "A":
        z = np.asarray(z, dtype=float)

        def a_func(pt):
            d = domain.distance(pt)
            return np.sum(pt * pt, axis=-1) - d * d

        return a_func(x + z) + a_func(x - z) - 2.0 * a_func(x)
    if kind == "atilde":
        z = np.asarray(z, dtype=float)
        if C is None or r is None:
            raise ValueError("kind 'atilde' requires C and r")
        if C < 1.0 / r:
            raise ValueError("kind 'atilde' requires C >= 1/r")
        znorm = np.linalg.norm(z, axis=-1)
        inside = domain.distance(x) - znorm >= r - 1e-15
        if not np.all(inside):
            raise HypothesisViolationError(
                "x, x+-z must lie in a ball at distance >= r from the boundary"
            )

        def atilde(pt):
            return 0.5 * C * np.sum(pt * pt, axis=-1) - domain.distance(pt)

        defect = atilde(x + z) + atilde(x - z) - 2.0 * atilde(x)
        return defect - (C - 1.0 / r) * znorm**2
    if kind == "reach_residual":
        if domain.kind in (PUNCTURED_SPACE, PUNCTURED_BALL):
            raise HypothesisViolationError(
                "reach residual is defined only for domains equal to the "
                "interior of their closure (ball, strip, annulus)"
            )
        neg_lap = domain.neg_laplacian_d(x)
        h = domain.reach
        if math.isinf(h):
            return neg_lap
        return (h + domain.distance(x)) * neg_lap + (domain.dim - 1)
    raise ValueError(f"unknown defect kind {kind!r}")


def scalar_triangle_slack(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Slack of |a+b| + |a-b| - 2|a| <= |b|^2/|a| for vectors a != 0."""
    norm = lambda v: np.linalg.norm(v, axis=-1)
    lhs = norm(a + b) + norm(a - b) - 2.0 * norm(a)
    return norm(b) ** 2 / norm(a) - lhs
