"""Unit tests for path construction and adaptive contour quadrature."""

import math

import numpy as np
import pytest

from divcalc.contour import (
    ArcSegment,
    ContourPath,
    LineSegment,
    build_indented_path,
    build_semicircle,
    integrate_along,
    tilted_ray_path,
)
from divcalc.errors import DivcalcError, DomainError


def full_circle(radius: float) -> ContourPath:
    upper = ArcSegment(0j, radius, 0.0, math.pi)
    lower = ArcSegment(0j, radius, math.pi, 2.0 * math.pi)
    return ContourPath((upper, lower))


class TestBuilders:
    def test_indented_above(self):
        path = build_indented_path(-1.0, 1.0, 0.0, 0.25, "above")
        assert len(path.segments) == 3
        arc = path.segments[1]
        assert isinstance(arc, ArcSegment)
        assert (arc.theta_start, arc.theta_end) == (math.pi, 0.0)
        assert path.start_point == -1.0 and path.end_point == 1.0

    def test_indented_below_runs_left_to_right(self):
        path = build_indented_path(-1.0, 1.0, 0.0, 0.25, "below")
        arc = path.segments[1]
        assert (arc.theta_start, arc.theta_end) == (-math.pi, 0.0)
        # dips into the lower half-plane
        assert arc.point(np.array([0.5]))[0].imag < 0

    def test_indentation_radius_too_large(self):
        with pytest.raises(DomainError):
            build_indented_path(0.0, 1.0, 0.5, 0.6, "above")

    def test_x0_outside_interval(self):
        with pytest.raises(DomainError):
            build_indented_path(0.0, 1.0, 1.5, 0.1, "above")

    def test_semicircle_endpoints(self):
        for half in ("upper", "lower"):
            path = build_semicircle(2.0, half)
            np.testing.assert_allclose(abs(path.start_point - (-2.0)), 0.0, atol=1e-12)
            np.testing.assert_allclose(abs(path.end_point - 2.0), 0.0, atol=1e-12)
        up = build_semicircle(1.0, "upper").segments[0]
        assert up.point(np.array([0.5]))[0].imag > 0
        down = build_semicircle(1.0, "lower").segments[0]
        assert down.point(np.array([0.5]))[0].imag < 0

    def test_tilted_ray_positive_anchor(self):
        path = tilted_ray_path(5.0, "upper", 10.0, math.pi / 4)
        expected = 5.0 + 10.0 * np.exp(1j * math.pi / 4)
        np.testing.assert_allclose(abs(path.end_point - expected), 0.0, atol=1e-12)

    def test_tilted_ray_mirrors_for_negative_anchor(self):
        path = tilted_ray_path(-5.0, "upper", 10.0, math.pi / 4)
        expected = -5.0 + 10.0 * np.exp(1j * 3 * math.pi / 4)
        np.testing.assert_allclose(abs(path.end_point - expected), 0.0, atol=1e-12)

    def test_tilted_ray_rejects_degenerate_angle(self):
        with pytest.raises(DomainError):
            tilted_ray_path(5.0, "upper", 10.0, 0.0)

    def test_discontinuous_path_rejected(self):
        with pytest.raises(DomainError):
            ContourPath((LineSegment(0j, 1.0 + 0j), LineSegment(2.0 + 0j, 3.0 + 0j)))

    def test_path_json_round_trip_fields(self):
        path = build_indented_path(-1.0, 1.0, 0.0, 0.5, "above")
        doc = path.to_json()
        assert [d["type"] for d in doc] == ["line", "arc", "line"]
        assert doc[1]["radius"] == 0.5


class TestIntegrateAlong:
    def test_residue_of_one_over_z(self):
        result = integrate_along(lambda z: 1.0 / z, full_circle(1.0), tol=1e-12)
        np.testing.assert_allclose(result.value, 2j * math.pi, atol=1e-10)
        assert result.converged and result.evaluations >= 30

    def test_polynomial_on_line(self):
        path = ContourPath((LineSegment(0j, 1.0 + 0j),))
        result = integrate_along(lambda z: z, path, tol=1e-12)
        np.testing.assert_allclose(result.value, 0.5, atol=1e-12)

    def test_upper_semicircle_of_one_over_z(self):
        result = integrate_along(lambda z: 1.0 / z, build_semicircle(1.0, "upper"), tol=1e-12)
        np.testing.assert_allclose(result.value, -1j * math.pi, atol=1e-10)

    def test_circle_value_independent_of_radius(self):
        for radius in (0.5, 1.0, 3.0):
            result = integrate_along(lambda z: 1.0 / z, full_circle(radius), tol=1e-12)
            np.testing.assert_allclose(result.value, 2j * math.pi, atol=1e-10)

    def test_reversal_negates_value(self):
        rng = np.random.default_rng(3)
        coeffs = rng.normal(size=4) + 1j * rng.normal(size=4)

        def poly(z):
            return coeffs[0] + coeffs[1] * z + coeffs[2] * z**2 + coeffs[3] * z**3

        path = build_indented_path(-1.0, 2.0, 0.5, 0.3, "above")
        fwd = integrate_along(poly, path, tol=1e-12)
        bwd = integrate_along(poly, path.reversed(), tol=1e-12)
        assert abs(fwd.value + bwd.value) <= 2 * (fwd.abs_error_estimate + bwd.abs_error_estimate) + 1e-12

    def test_path_independence_for_entire_integrand(self):
        above = build_indented_path(-1.0, 1.0, 0.0, 0.4, "above")
        below = build_indented_path(-1.0, 1.0, 0.0, 0.4, "below")
        f = lambda z: np.exp(-(z**2))
        va = integrate_along(f, above, tol=1e-12).value
        vb = integrate_along(f, below, tol=1e-12).value
        assert abs(va - vb) < 1e-10

    def test_homotopy_invariance_inside_annulus(self):
        f = lambda z: 1.0 / (1.0 + z**2)
        small = build_indented_path(-0.5, 0.5, 0.0, 0.1, "above")
        large = build_indented_path(-0.5, 0.5, 0.0, 0.3, "above")
        vs = integrate_along(f, small, tol=1e-12).value
        vl = integrate_along(f, large, tol=1e-12).value
        assert abs(vs - vl) < 1e-10

    def test_nonfinite_sample_raises(self):
        path = ContourPath((LineSegment(-1.0 + 0j, 1.0 + 0j),))
        with pytest.raises(DivcalcError):
            integrate_along(lambda z: 1.0 / z, path, tol=1e-10)
