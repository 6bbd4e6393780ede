"""Analytic geometry of the domain catalogue."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import hardylab as hl
from hardylab.fd import gradient, hessian


def test_make_domain_valid_specs(ball3, annulus313):
    assert ball3.inradius == 1.0 and math.isinf(ball3.reach)
    assert annulus313.inradius == 1.0 and annulus313.reach == 1.0
    assert hl.punctured_ball(3, 2.0).inradius == 1.0
    assert math.isinf(hl.punctured_space(4).inradius)


@pytest.mark.parametrize("factory", [
    lambda: hl.annulus(3, 3.0, 1.0),
    lambda: hl.ball(1, 1.0),
    lambda: hl.ball(3, -2.0),
    lambda: hl.strip(3, 0.0),
    lambda: hl.make_domain(hl.DomainSpec("cube", 3, {"R": 1.0})),
])
def test_make_domain_invalid_specs(factory):
    with pytest.raises(hl.DomainSpecError):
        factory()


def test_distance_closed_forms(ball3, strip3, annulus313, punctured3, punctured_ball3):
    assert ball3.distance([0.25, 0.0, 0.0]) == pytest.approx(0.75, abs=1e-15)
    assert annulus313.distance([1.4, 0.0, 0.0]) == pytest.approx(0.4, abs=1e-15)
    assert strip3.distance([5.0, -2.0, 1.7]) == pytest.approx(0.3, abs=1e-15)
    assert punctured3.distance([0.0, 0.0, 0.6]) == pytest.approx(0.6, abs=1e-15)
    assert punctured_ball3.distance([1.3, 0.0, 0.0]) == pytest.approx(0.7, abs=1e-15)
    # Zero on the complement by convention.
    assert ball3.distance([2.0, 0.0, 0.0]) == 0.0


def test_neg_laplacian_closed_forms(ball3, strip3, annulus313, punctured3):
    assert ball3.neg_laplacian_d([0.5, 0.0, 0.0]) == pytest.approx(4.0, rel=1e-14)
    assert strip3.neg_laplacian_d([3.0, 1.0, 0.3]) == 0.0
    assert annulus313.neg_laplacian_d([1.5, 0.0, 0.0]) == pytest.approx(-4.0 / 3.0, rel=1e-14)
    assert annulus313.neg_laplacian_d([2.5, 0.0, 0.0]) == pytest.approx(0.8, rel=1e-14)
    assert punctured3.neg_laplacian_d([0.4, 0.0, 0.0]) == pytest.approx(-5.0, rel=1e-14)


def test_neg_laplacian_errors(annulus313, ball3):
    with pytest.raises(hl.RidgeError):
        annulus313.neg_laplacian_d([2.0, 0.0, 0.0])
    with pytest.raises(hl.SingularityError):
        ball3.neg_laplacian_d([0.0, 0.0, 0.0])


def test_projection_examples(ball3, strip3, annulus313):
    np.testing.assert_allclose(ball3.project_to_boundary([0.5, 0.0, 0.0]), [1.0, 0.0, 0.0])
    np.testing.assert_allclose(annulus313.project_to_boundary([1.4, 0.0, 0.0]), [1.0, 0.0, 0.0])
    np.testing.assert_allclose(strip3.project_to_boundary([7.0, 2.0, 0.3]), [7.0, 2.0, 0.0])
    np.testing.assert_allclose(strip3.project_to_boundary([7.0, 2.0, 1.8]), [7.0, 2.0, 2.0])
    with pytest.raises(hl.RidgeError):
        annulus313.project_to_boundary([2.0, 0.0, 0.0])


def test_projection_residuals(ball3, strip3, annulus313, punctured3, punctured_ball3):
    rng = np.random.default_rng(7)
    for domain in (ball3, strip3, annulus313, punctured3, punctured_ball3):
        for _ in range(15):
            direction = rng.standard_normal(3)
            direction /= np.linalg.norm(direction)
            reduction = domain.radial_reduction()
            hi = reduction.t_max if math.isfinite(reduction.t_max) else 4.0
            t = reduction.t_min + (hi - reduction.t_min) * rng.uniform(0.1, 0.45)
            x = direction * t if domain.kind != "strip" else np.array([0.3, -1.0, t])
            xi = domain.project_to_boundary(x)
            d = domain.distance(x)
            assert abs(np.linalg.norm(x - xi) - d) <= 1e-12 * max(d, 1e-12)
            assert domain.distance(xi) <= 1e-14


def test_radial_reduction_ball(ball3):
    red = ball3.radial_reduction()
    assert red.mode == "radial"
    assert (red.t_min, red.t_max) == (0.0, 1.0)
    assert red.weight(0.5) == pytest.approx(0.25)
    assert red.dist(0.3) == pytest.approx(0.7)
    assert red.neg_lap(0.5) == pytest.approx(2.0 / 0.5)
    assert red.ridge_points == ()


def test_radial_reduction_ridges(annulus313, punctured_ball3, strip3):
    assert annulus313.radial_reduction().ridge_points == (2.0,)
    red = punctured_ball3.radial_reduction()
    assert red.ridge_points == (1.0,)
    assert red.dist(0.4) == pytest.approx(0.4)
    assert red.dist(1.7) == pytest.approx(0.3)
    red = strip3.radial_reduction()
    assert red.mode == "slab"
    assert red.ridge_points == (1.0,)
    assert red.weight(0.77) == 1.0


def test_properties_catalogue(ball3, strip3, annulus313):
    props = ball3.properties()
    assert math.isinf(props.curvature.reach)
    assert props.curvature.h_min == props.curvature.h_max == 1.0
    assert props.satisfies_c

    props = strip3.properties()
    assert props.curvature.h_min == props.curvature.h_max == 0.0
    assert props.satisfies_c

    props = annulus313.properties()
    assert props.curvature.reach == 1.0
    assert props.curvature.h_min == -1.0
    assert props.curvature.h_mean == pytest.approx(0.2)
    assert not props.satisfies_c
    assert props.curvature.kappas[0] == (-1.0, -1.0)
    assert props.curvature.kappas[1] == pytest.approx((1.0 / 3.0, 1.0 / 3.0))


def test_convexity_defect_examples(annulus313):
    b2 = hl.ball(2, 1.0)
    defect = hl.convexity_defect(b2, "A", [0.5, 0.0], [0.0, 0.1])
    assert defect == pytest.approx(4.0 * math.sqrt(0.26) - 2.0, rel=1e-12)
    inner = hl.convexity_defect(annulus313, "reach_residual", [1.5, 0.0, 0.0])
    assert abs(inner) <= 1e-14
    outer = hl.convexity_defect(annulus313, "reach_residual", [2.5, 0.0, 0.0])
    assert outer == pytest.approx(3.2, rel=1e-12)


def test_convexity_defect_gating(ball3, punctured3):
    # Infinite reach: the residual degenerates to -laplace(d) itself.
    assert hl.convexity_defect(ball3, "reach_residual", [0.5, 0.0, 0.0]) == pytest.approx(4.0)
    with pytest.raises(hl.HypothesisViolationError):
        hl.convexity_defect(punctured3, "reach_residual", [0.5, 0.0, 0.0])
    with pytest.raises(hl.HypothesisViolationError):
        # Ball of radius |z| around x too close to the boundary for r.
        hl.convexity_defect(ball3, "atilde", [0.9, 0.0, 0.0], [0.2, 0.0, 0.0], C=20.0, r=0.05)
    with pytest.raises(ValueError):
        hl.convexity_defect(ball3, "atilde", [0.0, 0.0, 0.0], [0.1, 0.0, 0.0], C=0.1, r=0.5)


def test_second_difference_bulk():
    rng = np.random.default_rng(42)
    for domain in hl.catalogue(3):
        x = rng.uniform(-4.0, 4.0, size=(10_000, 3))
        z = rng.uniform(-1.0, 1.0, size=(10_000, 3))
        assert float(np.min(hl.convexity_defect(domain, "A", x, z))) >= -1e-12


def test_interior_semiconcavity_bulk(ball3, annulus313, strip3):
    rng = np.random.default_rng(3)
    for domain in (ball3, annulus313, strip3):
        for _ in range(40):
            x = rng.uniform(-2.5, 2.5, size=3)
            if domain.kind == "strip":
                x[-1] = rng.uniform(0.1, 1.9)
            d = domain.distance(x)
            if d <= 0.05:
                continue
            r = 0.4 * d
            z = rng.standard_normal(3)
            z *= 0.2 * d / np.linalg.norm(z)
            defect = hl.convexity_defect(domain, "atilde", x, z, C=1.0 / r, r=r)
            assert defect >= -1e-12


@given(
    a=st.tuples(*([st.floats(-5, 5)] * 3)),
    b=st.tuples(*([st.floats(-3, 3)] * 3)),
)
@settings(max_examples=200, deadline=None)
def test_scalar_triangle_inequality(a, b):
    a = np.asarray(a)
    b = np.asarray(b)
    if np.linalg.norm(a) < 1e-6:
        return
    assert float(hl.scalar_triangle_slack(a, b)) >= -1e-12


def test_scalar_triangle_bulk():
    rng = np.random.default_rng(11)
    a = rng.standard_normal((100_000, 3))
    b = rng.standard_normal((100_000, 3))
    keep = np.linalg.norm(a, axis=1) > 1e-9
    assert float(np.min(hl.scalar_triangle_slack(a[keep], b[keep]))) >= -1e-12


def test_eikonal_property():
    rng = np.random.default_rng(5)
    for domain in hl.catalogue(3):
        reduction = domain.radial_reduction()
        hi = reduction.t_max if math.isfinite(reduction.t_max) else 4.0
        for _ in range(12):
            t = reduction.t_min + (hi - reduction.t_min) * rng.uniform(0.07, 0.93)
            if any(abs(t - r) < 0.05 for r in reduction.ridge_points):
                continue
            direction = rng.standard_normal(3)
            direction /= np.linalg.norm(direction)
            x = direction * t if domain.kind != "strip" else np.array([1.0, 0.5, t])
            g = gradient(domain.distance, x, h=1e-5)
            assert abs(np.linalg.norm(g) - 1.0) <= 1e-6


def test_hessian_matches_principal_curvatures(ball3, annulus313):
    # Eigenvalues of D^2 d are -kappa_i / (1 - kappa_i d) and 0.
    for domain, t, kappa in ((ball3, 0.5, 1.0), (annulus313, 1.5, -1.0), (annulus313, 2.5, 1.0 / 3.0)):
        x = np.array([t, 0.0, 0.0])
        d = domain.distance(x)
        expected = sorted([-kappa / (1.0 - kappa * d)] * 2 + [0.0])
        eig = sorted(np.linalg.eigvalsh(hessian(domain.distance, x, h=1e-4)))
        assert max(abs(a - b) for a, b in zip(eig, expected)) <= 1e-5


def test_neglap_bounded_below_by_curvature(ball3, strip3, annulus313):
    for domain in (ball3, strip3, annulus313):
        bound = (domain.dim - 1) * domain.curvature_summary().h_min
        reduction = domain.radial_reduction()
        for u in np.linspace(0.03, 0.97, 31):
            t = reduction.t_min + u * (reduction.t_max - reduction.t_min)
            try:
                value = reduction.neg_lap(float(t))
            except hl.RidgeError:
                continue
            assert value >= bound - 1e-12


def test_parallel_surface_area_expansion(ball3):
    # w-area of the level set {d = t} over the boundary area, small t:
    # the linear coefficient is -(n-1) H.
    t = np.linspace(1e-4, 1e-2, 80)
    ratio = (1.0 - t) ** 2
    coef = float(np.polyfit(t, ratio, 1)[0])
    assert abs(coef + 2.0) <= 0.01 * 2.0


def unique_projection_reach(domain, probes: np.ndarray, angles: int = 2000) -> float:
    """Brute-force reach estimate: scan probe points outside the closure for
    nearest-point multiplicity on a fine angular sample of the boundary."""
    thetas = np.linspace(0.0, 2.0 * math.pi, angles, endpoint=False)
    boundary = []
    if domain.kind == "annulus":
        for radius in (domain.spec.params["r0"], domain.spec.params["R0"]):
            boundary.append(radius * np.stack([np.cos(thetas), np.sin(thetas)], axis=1))
    else:
        boundary.append(np.stack([np.cos(thetas), np.sin(thetas)], axis=1))
    boundary = np.concatenate(boundary)
    reach = math.inf
    for q in probes:
        dists = np.linalg.norm(boundary - q, axis=1)
        dmin = float(dists.min())
        close = boundary[dists <= dmin * (1.0 + 1e-9)]
        spread = float(np.max(np.linalg.norm(close - close.mean(axis=0), axis=1)))
        if spread > 2.0 * math.pi * 3.0 / 2000 * 4:  # beyond angular resolution
            reach = min(reach, dmin)
    return reach


def test_reach_oracle_annulus_and_ball():
    an = hl.annulus(2, 1.0, 3.0)
    probes = np.array([[0.0, 0.0], [0.3, 0.0], [0.0, 0.6], [3.5, 0.0], [0.0, -4.0]])
    assert unique_projection_reach(an, probes) == pytest.approx(an.reach, rel=1e-6)
    b2 = hl.ball(2, 1.0)
    probes = np.array([[1.5, 0.0], [0.0, 2.0], [-3.0, 0.5]])
    assert math.isinf(unique_projection_reach(b2, probes))
    assert math.isinf(b2.reach)


def test_condition_c_flags():
    flags = {d.kind: d.satisfies_c for d in hl.catalogue(3)}
    assert flags == {
        "ball": True, "strip": True,
        "punctured_space": False, "punctured_ball": False, "annulus": False,
    }
