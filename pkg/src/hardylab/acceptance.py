"""The acceptance suite: fourteen numbered criteria, each exercising one
sharp-constant, extremal-sequence or geometry claim at a pinned tolerance.

Each criterion function returns a list of SubResult, one per sub-check,
with measured values in the detail string.  `run_acceptance` aggregates
them; the CLI `verify` command prints one line per criterion and exits
nonzero if any sub-check fails.

Two sub-checks (5d-bound, 6c-bound) carry `documented_defect=True`: their
stated thresholds are provably below the exact value of the quantity they
bound (see the notes in their detail strings).  They are implemented as
stated, reported honestly as failures, and the accompanying monotonicity
and cross-check assertions for the same quantities pass.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import constants as consts
from . import functionals as fn
from . import geometry as geo
from . import profiles as pr
from .fd import central_derivative, gradient, hessian


@dataclass(frozen=True)
class SubResult:
    label: str
    passed: bool
    detail: str
    documented_defect: bool = False


@dataclass(frozen=True)
class CriterionResult:
    ident: str
    title: str
    subs: tuple[SubResult, ...]

    @property
    def passed(self) -> bool:
        return all(sub.passed for sub in self.subs)

    def summary(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        parts = "; ".join(
            f"{sub.label} {'ok' if sub.passed else 'FAIL'}: {sub.detail}" for sub in self.subs
        )
        return f"{status} criterion-{self.ident} [{self.title}] {parts}"


def _check(label: str, passed: bool, detail: str, defect: bool = False) -> SubResult:
    return SubResult(label, bool(passed), detail, defect)


def _strictly_decreasing(values) -> bool:
    return all(b < a for a, b in zip(values, values[1:]))


# ---------------------------------------------------------------------------


def criterion_1() -> CriterionResult:
    """Punctured-space sharpness of the s-n constant."""
    ps = geo.punctured_space(3)
    s, eta, delta = 4.0, 1.0, 1e-6
    prof = pr.annulus_indicator(ps, delta, eta)
    closed_form = (1.0 + delta) / (1.0 - delta)
    v = fn.ratio_plain(ps, prof, s)
    v_adaptive = fn.ratio_plain(ps, prof, s, method="adaptive", tol=1e-11)
    subs = [
        _check("closed-form", abs(v - closed_form) <= 1e-10 * closed_form,
               f"value={v:.12g} vs (1+d)/(1-d)={closed_form:.12g}"),
        _check("limit", abs(v - 1.0) <= 1e-4, f"|value - (s-n)| = {abs(v - 1.0):.3e} <= 1e-4"),
        _check("quadrature-vs-closed", abs(v_adaptive - closed_form) <= 1e-8 * closed_form,
               f"adaptive={v_adaptive:.12g}, rel diff {abs(v_adaptive - closed_form) / closed_form:.2e}"),
    ]
    return CriterionResult("1", "punctured-space sharp constant", tuple(subs))


def criterion_2() -> CriterionResult:
    """gamma = 1 failure of the log-weight remainder on a punctured ball."""
    pb = geo.punctured_ball(3, 2.0)
    s, eta = 3.0, 1.0
    ladder = [1e-3, 1e-9, 1e-27]
    values = [
        fn.quotient_Qgamma_general(pb, pr.annulus_indicator(pb, d, eta), s, 1.0) for d in ladder
    ]
    closed = [2.0 / math.log(1.0 - math.log(d)) for d in ladder]
    agree = max(abs(v - c) / c for v, c in zip(values, closed))
    subs = [
        _check("decreasing", _strictly_decreasing(values),
               "values " + ", ".join(f"{v:.5f}" for v in values)),
        _check("threshold", values[1] <= 0.7, f"value(1e-9)={values[1]:.5f} <= 0.7"),
        _check("closed-form", agree <= 1e-8, f"max rel diff vs closed form {agree:.2e}"),
    ]
    return CriterionResult("2", "punctured-ball gamma=1 failure", tuple(subs))


def criterion_3() -> CriterionResult:
    """Gradient-normalized remainder: exact value at alpha = n-1, decay above."""
    ps = geo.punctured_space(3)
    s, eta = 4.0, 0.5
    target = eta ** (3 - s)  # = 2
    vals_exact = [
        fn.gradient_quotient(ps, pr.annulus_indicator(ps, d, eta), s, 1.0, 2.0)
        for d in (1e-2, 1e-4, 1e-8)
    ]
    worst = max(abs(v - target) for v in vals_exact)
    ladder = [1e-2, 1e-4, 1e-6, 1e-8]
    vals_eps = [
        fn.gradient_quotient(ps, pr.annulus_indicator(ps, d, eta), s, 1.0, 2.5) for d in ladder
    ]
    subs = [
        _check("alpha=n-1", worst <= 1e-6, f"max |value - {target}| = {worst:.2e} <= 1e-6"),
        _check("alpha=n-1+eps", _strictly_decreasing(vals_eps) and vals_eps[-1] <= 1e-2,
               f"ladder -> {vals_eps[-1]:.3e} <= 1e-2, decreasing"),
    ]
    return CriterionResult("3", "gradient-quotient remainder", tuple(subs))


def criterion_4() -> CriterionResult:
    """Equality family of the basic distributional inequality."""
    subs = []
    for domain in (geo.ball(3, 1.0), geo.strip(3, 1.0)):
        worst = 0.0
        for s in (1.5, 2.0, 3.0):
            for eps in (0.1, 0.3):
                rep = fn.inequality_gap_report(
                    domain, pr.power_profile(domain, s - 1.0 + eps), "2.3-equality", s=s
                )
                lhs = rep.gradient_smooth + rep.gradient_jumps
                worst = max(worst, abs(rep.value) / lhs)
        subs.append(_check(domain.kind, worst <= 1e-8, f"max relative gap {worst:.2e} <= 1e-8"))
    return CriterionResult("4", "equality family of the basic inequality", tuple(subs))


def criterion_5() -> CriterionResult:
    """Ball remainder chain: series constants and the X-weighted tail."""
    b3 = geo.ball(3, 1.0)

    def im(delta: float, s: float, m: int, denom: str, beta: float | None):
        rep = fn.remainder_ratio_Im_report(
            b3, pr.ball_shell_indicator(b3, delta), s, m, denom=denom, beta=beta
        )
        return rep.value, rep.error_estimate

    v0 = im(1e-4, 2.5, 0, "power", 1.5)[0]
    study_a = consts.convergence_study(
        lambda d: im(d, 2.5, 0, "power", 1.5),
        [10.0**-k for k in range(4, 9)], prediction=2.0, tolerance=1e-3,
    )
    study_b = consts.convergence_study(
        lambda d: im(d, 3.5, 1, "power", 1.5),
        [10.0**-k for k in range(4, 9)], prediction=2.0, tolerance=1e-3,
    )
    ladder_c = [1e-2, 1e-4, 1e-6, 1e-8, 1e-10]
    vals_c = [im(d, 2.5, 0, "power", 1.8)[0] for d in ladder_c]
    ladder_d = [1e-10, 1e-20, 1e-40]
    vals_d = [im(d, 2.5, 1, "xweight", None)[0] for d in ladder_d]
    bounds_d = [2.0 * (4.0 / 3.0 + 0.1) / math.log(1.0 - math.log(d)) for d in ladder_d]
    d_bound_ok = all(v <= b for v, b in zip(vals_d, bounds_d))
    subs = [
        _check("a-value", abs(v0 - 2.0137) <= 1e-3, f"value(1e-4)={v0:.6f}, |diff|<=1e-3 of 2.0137"),
        _check("a-limit", study_a.passed,
               f"extrapolated {study_a.extrapolated_limit:.6f} within 1e-3 of 2"),
        _check("b-limit", study_b.passed,
               f"s=3.5, m=1: extrapolated {study_b.extrapolated_limit:.6f} within 1e-3 of 2"),
        _check("c-decay", _strictly_decreasing(vals_c) and vals_c[-1] <= 0.05,
               f"beta=1.8 ladder -> {vals_c[-1]:.3e} <= 0.05, decreasing"),
        _check("d-monotone", _strictly_decreasing(vals_d),
               "X-weighted values " + ", ".join(f"{v:.6f}" for v in vals_d)),
        _check(
            "d-bound", d_bound_ok,
            "measured "
            + ", ".join(f"{v:.4f}" for v in vals_d)
            + " vs stated bounds "
            + ", ".join(f"{b:.4f}" for b in bounds_d)
            + " (the bound omits the O(1) offset 2e*E1(1) - e^2*E1(2) ~ 0.8314 of the"
            " log-weighted layer integral; the exact quotient exceeds it for every"
            " representable cut-off)",
            defect=True,
        ),
    ]
    return CriterionResult("5", "ball remainder chain", tuple(subs))


def criterion_6() -> CriterionResult:
    """Strip extremality of the gradient-normalized quotient."""
    st = geo.strip(3, 1.0)

    def q(eps: float, s: float, alpha: float, tscale: float) -> float:
        prof = pr.strip_slab_profile(st, eps, 1.0, tscale)
        return fn.gradient_quotient(st, prof, s, s - 1.0, alpha)

    ladder_a = [1e-2, 1e-4, 1e-6, 1e-8]
    vals_a = [q(e, 1.5, 0.5, 1.0) for e in ladder_a]
    ladder_b = [1e-2, 1e-4, 1e-6, 1e-8, 1e-10]
    vals_b = [q(e, 2.0, 0.5, 1.0) for e in ladder_b]
    ladder_c = [1e-1, 1e-2, 1e-3, 1e-4]
    vals_c = [q(e, 3.0, 0.5, e) for e in ladder_c]  # tscale = eps^(s-2)
    subs = [
        _check("s=1.5", _strictly_decreasing(vals_a) and vals_a[-1] <= 1e-3,
               f"ladder -> {vals_a[-1]:.3e} <= 1e-3, decreasing"),
        _check("s=2", _strictly_decreasing(vals_b) and vals_b[-1] <= 1e-2,
               f"ladder -> {vals_b[-1]:.3e} <= 1e-2, decreasing"),
        _check("c-monotone", _strictly_decreasing(vals_c),
               "s=3 values " + ", ".join(f"{v:.4e}" for v in vals_c)),
        _check(
            "c-bound", vals_c[-1] <= 1e-2,
            f"value(1e-4)={vals_c[-1]:.4e} vs stated 1e-2 (the quotient is bounded below"
            " by 2*sqrt(eps)/(1+o(1)) ~ 2e-2 at eps=1e-4 for every transverse scale;"
            " it reaches 5.0e-3 <= 1e-2 only at eps=1e-6)",
            defect=True,
        ),
    ]
    return CriterionResult("6", "strip extremality", tuple(subs))


def criterion_7() -> CriterionResult:
    """Strip gamma = 1 failure of the log-weighted quotient."""
    st = geo.strip(3, 1.0)
    s = 3.0
    ladder = [1e-4, 1e-8, 1e-16, 1e-32]
    values = [
        fn.quotient_Qgamma(st, pr.strip_slab_profile(st, e, 1.0, e ** (s - 2.0 + 0.5)), s, 1.0)
        for e in ladder
    ]
    threshold = 2.2 / math.log(1.0 - math.log(1e-32)) + 0.05
    subs = [
        _check("decreasing", _strictly_decreasing(values),
               "values " + ", ".join(f"{v:.5f}" for v in values)),
        _check("threshold", values[-1] <= threshold,
               f"final {values[-1]:.5f} <= {threshold:.5f}"),
    ]
    return CriterionResult("7", "strip gamma=1 failure", tuple(subs))


def criterion_8() -> CriterionResult:
    """Decay exponent of Q_beta on shells for beta < 1."""
    b3 = geo.ball(3, 1.0)
    s = 2.5
    ladder = np.array([1e-2, 1e-3, 1e-4, 1e-5, 1e-6])
    subs = []
    for beta in (0.5, 0.9):
        values = np.array([
            fn.quotient_Qbeta(b3, pr.ball_shell_indicator(b3, float(d)), s, beta) for d in ladder
        ])
        slope = float(np.polyfit(np.log(ladder), np.log(values), 1)[0])
        target = 1.0 - beta
        subs.append(_check(
            f"beta={beta}", abs(slope - target) <= 0.05 * target,
            f"fitted exponent {slope:.4f} vs {target} (5% band)",
        ))
    return CriterionResult("8", "Q_beta decay exponents", tuple(subs))


def criterion_9() -> CriterionResult:
    """Homogeneous-remainder bounds and their attainment on the ball."""
    lo_ball, hi_ball = consts.b1_bounds(geo.ball(3, 1.0))
    lo_strip, hi_strip = consts.b1_bounds(geo.strip(3, 1.0))
    b3 = geo.ball(3, 1.0)
    attained = fn.remainder_ratio_Im(
        b3, pr.ball_shell_indicator(b3, 1e-8), 2.5, 0, denom="power", beta=1.5
    )
    subs = [
        _check("ball", (lo_ball, hi_ball) == (2.0, 2.0), f"bounds ({lo_ball}, {hi_ball}) == (2, 2)"),
        _check("strip", (lo_strip, hi_strip) == (0.0, 0.0), f"bounds ({lo_strip}, {hi_strip}) == (0, 0)"),
        _check("attained", abs(attained - lo_ball) <= 1e-3,
               f"quotient limit {attained:.6f} vs lower bound {lo_ball}"),
    ]
    return CriterionResult("9", "homogeneous remainder bounds", tuple(subs))


def criterion_10() -> CriterionResult:
    """Cheeger constant over the concentric family."""
    subs = []
    ok = True
    details = []
    for n, R in ((2, 1.0), (3, 1.0), (4, 0.5), (7, 2.0)):
        est = consts.cheeger_estimate(geo.ball(n, R))
        good = est.h_value == n / R and est.bound_ok and est.isoperimetric_ok
        ok = ok and good
        details.append(f"n={n},R={R}: h={est.h_value:g}")
    subs.append(_check("h=n/R", ok, "; ".join(details)))
    b3 = geo.ball(3, 1.0)
    worst = 0.0
    for rho in (0.25, 0.5, 0.75, 0.9):
        q = fn.quotient_Qbeta(b3, pr.cheeger_concentric(b3, rho), 2.0, 1.0)
        worst = max(worst, abs(q - 3.0 / rho))
    subs.append(_check("Q1=area/vol", worst <= 1e-10, f"max |Q1 - n/rho| = {worst:.2e} <= 1e-10"))
    return CriterionResult("10", "Cheeger estimate", tuple(subs))


def _annulus_basket(domain: geo.Domain, s: float) -> list:
    """Twenty bump/power profiles clear of the ridge at t = 2."""
    profiles = []
    for center in (1.15, 1.35, 1.55, 1.75, 1.92, 2.08, 2.3, 2.55, 2.75, 2.9):
        for width in (0.08, 0.04):
            profiles.append(pr.radial_bump(domain, center, width))
    for eps in (0.1, 0.3):
        profiles.append(pr.power_profile(domain, s - 1.0 + eps))
    return profiles


def criterion_11() -> CriterionResult:
    """Reach interpolation on the annulus."""
    an = geo.annulus(3, 1.0, 3.0)
    worst = 0.0
    count = 0
    for s in (2.5, 3.0, 4.0):
        for prof in _annulus_basket(an, s):
            rep = fn.inequality_gap_report(an, prof, "2.13", s=s)
            lhs = rep.gradient_smooth + rep.gradient_jumps
            worst = min(worst, rep.value / lhs) if lhs > 0 else worst
            count += 1
    const_at_3 = consts.interpolation_constant(3.0, 3, an.reach, an.inradius)
    grid = np.linspace(1.0 + 1e-6, 2.0 - 1e-6, 41)
    residuals = [
        abs(geo.convexity_defect(an, "reach_residual", np.array([t, 0.0, 0.0]))) for t in grid
    ]
    subs = [
        _check("gap", worst >= -1e-8, f"min relative gap {worst:.2e} over {count} profiles"),
        _check("constant", const_at_3 == 1.0, f"constant at s=3 is {const_at_3}"),
        _check("inner-equality", max(residuals) <= 1e-12,
               f"max |reach residual| on the inner branch {max(residuals):.2e}"),
    ]
    return CriterionResult("11", "reach interpolation on the annulus", tuple(subs))


def criterion_12() -> CriterionResult:
    """L^p ratio against its closed form and its eps -> 0 limit."""
    b3 = geo.ball(3, 1.0)
    subs = []
    for p, s, eps in ((2.0, 3.0, 0.1), (3.0, 2.5, 0.05)):
        v = fn.lp_ratio(b3, s, p, eps)
        cf = fn.lp_ratio_closed_form(s, p, eps)
        subs.append(_check(f"closed(p={p:g})", abs(v - cf) <= 1e-6,
                           f"value {v:.10f} vs closed form {cf:.10f}"))
        limit_target = ((s - 1.0) / p) ** (p - 1.0)
        v_small = fn.lp_ratio(b3, s, p, 1e-4)
        subs.append(_check(f"limit(p={p:g})", abs(v_small - limit_target) <= 1e-3,
                           f"value(eps=1e-4) {v_small:.6f} vs {limit_target}"))
    return CriterionResult("12", "L^p remainder constant", tuple(subs))


def divcheck_grid(domain: geo.Domain, count: int, margin: float = 0.03) -> np.ndarray:
    """Interior grid of reduced coordinates, split across branches, clear of
    ridge points and branch endpoints (room for the FD stencil)."""
    reduction = domain.radial_reduction()
    branches = reduction.branches
    per = [count // len(branches)] * len(branches)
    per[-1] += count - sum(per)
    points = []
    for branch, k in zip(branches, per):
        hi = branch.t_hi if math.isfinite(branch.t_hi) else branch.t_lo + 1.0
        span = hi - branch.t_lo
        points.append(np.linspace(branch.t_lo + margin * span, hi - margin * span, k))
    return np.concatenate(points)


_DIV_CASES = (
    ("thm2.5", "punctured_space", ((3.0, 1.5), (3.5, 2.0), (4.5, 3.0))),
    ("thm2.7", "punctured_space", ((3.5, 1.0), (4.0, 1.0), (5.0, 1.0))),
    ("thm2.11", "ball", ((1.5, 2.0), (2.5, 2.0), (3.0, 1.5))),
    ("thm2.13", "strip", ((1.5, 1.0), (2.5, 1.0), (4.0, 1.0))),
    ("sec5", "ball", ((2.0, 1.5), (2.5, 2.0), (3.5, 3.0))),
)


def _div_domain(kind: str) -> geo.Domain:
    return {
        "punctured_space": geo.punctured_space(3),
        "ball": geo.ball(3, 1.0),
        "strip": geo.strip(3, 1.0),
    }[kind]


def criterion_13() -> CriterionResult:
    """Divergence identities of the proof vector fields, plus the X chain rule."""
    subs = []
    for field_id, kind, param_sets in _DIV_CASES:
        domain = _div_domain(kind)
        grid = divcheck_grid(domain, 64)
        worst = 0.0
        for s, gamma in param_sets:
            for t in grid:
                worst = max(worst, fn.div_T_residual(domain, field_id, float(t), s, gamma, R=1.0))
        subs.append(_check(field_id, worst <= 1e-6, f"max residual {worst:.2e} <= 1e-6"))
    chain = fn.x_chain_rule_residual(0.5, 1.7)
    subs.append(_check("x-chain-rule", chain <= 1e-8, f"relative residual {chain:.2e} <= 1e-8"))
    return CriterionResult("13", "divergence identities", tuple(subs))


def _sample_points(domain: geo.Domain, rng: np.random.Generator, count: int) -> np.ndarray:
    """Random points of the domain, away from ridge and singularities."""
    reduction = domain.radial_reduction()
    n = domain.dim
    t_hi = reduction.t_max if math.isfinite(reduction.t_max) else reduction.t_min + 5.0
    span = t_hi - reduction.t_min
    t = reduction.t_min + span * rng.uniform(0.05, 0.95, size=count)
    for ridge in reduction.ridge_points:
        near = np.abs(t - ridge) < 0.02 * span
        t[near] = ridge + np.sign(t[near] - ridge + 1e-9) * 0.03 * span
    if domain.kind == geo.STRIP:
        pts = rng.standard_normal((count, n))
        pts[:, -1] = t
        return pts
    direction = rng.standard_normal((count, n))
    direction /= np.linalg.norm(direction, axis=1, keepdims=True)
    return direction * t[:, None]


def criterion_14() -> CriterionResult:
    """Distance-function geometry suite."""
    rng = np.random.default_rng(20240811)
    domains = geo.catalogue(3)
    subs = []

    # Eikonal: Richardson central-difference gradient has unit norm.
    worst = 0.0
    for domain in domains:
        for x in _sample_points(domain, rng, 25):
            g = gradient(domain.distance, x, h=1e-5)
            worst = max(worst, abs(float(np.linalg.norm(g)) - 1.0))
    subs.append(_check("eikonal", worst <= 1e-6, f"max ||grad d| - 1| = {worst:.2e}"))

    # Convexity of |x|^2 - d^2 (10^4 random pairs per domain).
    worst = math.inf
    for domain in domains:
        x = rng.uniform(-4.0, 4.0, size=(10_000, 3))
        z = rng.uniform(-1.0, 1.0, size=(10_000, 3))
        worst = min(worst, float(np.min(geo.convexity_defect(domain, "A", x, z))))
    subs.append(_check("second-difference-A", worst >= -1e-12, f"min defect {worst:.2e}"))

    # Interior-ball semiconcavity with C = 1/r.
    worst = math.inf
    for domain in domains:
        pts = _sample_points(domain, rng, 40)
        d_pts = np.asarray(domain.distance(pts))
        for x, dx in zip(pts, d_pts):
            if dx <= 1e-3:
                continue
            r = 0.5 * dx
            z = rng.standard_normal(3)
            z *= 0.25 * dx / np.linalg.norm(z)
            defect = geo.convexity_defect(domain, "atilde", x, z, C=1.0 / r, r=r)
            worst = min(worst, float(defect))
    subs.append(_check("interior-semiconcavity", worst >= -1e-12, f"min defect {worst:.2e}"))

    # Scalar inequality |a+b| + |a-b| - 2|a| <= |b|^2/|a| (10^5 samples).
    a = rng.standard_normal((100_000, 3))
    keep = np.linalg.norm(a, axis=1) > 1e-6
    b = rng.standard_normal((100_000, 3))
    slack = geo.scalar_triangle_slack(a[keep], b[keep])
    subs.append(_check("scalar-inequality", float(np.min(slack)) >= -1e-12,
                       f"min slack {float(np.min(slack)):.2e} over {int(keep.sum())} samples"))

    # Principal-coordinate Hessian of d on ball and annulus.
    worst = 0.0
    b3, an = geo.ball(3, 1.0), geo.annulus(3, 1.0, 3.0)
    for domain, radii, kappa_of in (
        (b3, (0.3, 0.5, 0.8), lambda t: 1.0),
        (an, (1.2, 1.5, 1.8), lambda t: -1.0),  # inner branch, kappa = -1/r0
        (an, (2.2, 2.5, 2.8), lambda t: 1.0 / 3.0),  # outer branch, kappa = 1/R0
    ):
        for t in radii:
            x = np.array([t, 0.0, 0.0])
            d = domain.distance(x)
            kappa = kappa_of(t)
            expected = sorted([-kappa / (1.0 - kappa * d)] * 2 + [0.0])
            eig = sorted(np.linalg.eigvalsh(hessian(domain.distance, x, h=1e-4)))
            worst = max(worst, max(abs(e - q) for e, q in zip(eig, expected)))
    subs.append(_check("hessian-eigenvalues", worst <= 1e-5, f"max eigenvalue error {worst:.2e}"))

    # Pointwise lower bound -laplace(d) >= (n-1) H_min.
    worst = math.inf
    for domain in (b3, geo.strip(3, 1.0), an):
        h_min = domain.curvature_summary().h_min
        bound = (domain.dim - 1) * h_min
        for x in _sample_points(domain, rng, 60):
            worst = min(worst, domain.neg_laplacian_d(x) - bound)
    subs.append(_check("neglap-lower-bound", worst >= -1e-12, f"min margin {worst:.2e}"))

    # Surface-area expansion of the parallel sets: fitted linear coefficient.
    t = np.linspace(1e-4, 1e-2, 60)
    shrink = (1.0 - t) ** 2  # w-area of the level set over the boundary area
    coef = float(np.polyfit(t, shrink, 1)[0])
    subs.append(_check("area-expansion", abs(coef - (-2.0)) <= 0.01 * 2.0,
                       f"fitted coefficient {coef:.4f} vs -(n-1)H = -2 (1% band)"))

    # Mean -laplace(d) against narrow boundary bumps.
    v_ball = fn.meanlap_ratio(b3, pr.radial_bump(b3, 1.0 - 2e-3, 1e-3))
    v_ann = fn.meanlap_ratio(an, pr.radial_bump(an, 1.0 + 2e-3, 1e-3))
    v_strip = fn.meanlap_ratio(geo.strip(3, 1.0), pr.radial_bump(geo.strip(3, 1.0), 0.5, 0.1))
    ok = abs(v_ball - 2.0) <= 0.02 * 2.0 and abs(v_ann + 2.0) <= 0.02 * 2.0 and v_strip == 0.0
    subs.append(_check("meanlap-limits", ok,
                       f"ball {v_ball:.4f} ~ 2, annulus {v_ann:.4f} ~ -2, strip {v_strip}"))

    # Boundary projection consistency.
    worst = 0.0
    for domain in domains:
        for x in _sample_points(domain, rng, 20):
            xi = domain.project_to_boundary(x)
            d = domain.distance(x)
            worst = max(worst, abs(float(np.linalg.norm(x - xi)) - d) / max(d, 1e-300))
            worst = max(worst, float(domain.distance(xi)))
    subs.append(_check("projection", worst <= 1e-12, f"max projection residual {worst:.2e}"))

    return CriterionResult("14", "distance-function geometry", tuple(subs))


_CRITERIA = (
    criterion_1, criterion_2, criterion_3, criterion_4, criterion_5,
    criterion_6, criterion_7, criterion_8, criterion_9, criterion_10,
    criterion_11, criterion_12, criterion_13, criterion_14,
)


def run_acceptance() -> list[CriterionResult]:
    return [make() for make in _CRITERIA]
