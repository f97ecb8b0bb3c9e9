"""Unit tests for the expression parser, evaluator and singularity analysis."""

import cmath
import math

import numpy as np
import pytest

from divcalc.errors import (
    DomainError,
    ParseError,
    SingularityError,
    UnknownIdentifierError,
)
from divcalc.expr import (
    derivative_at,
    evaluate,
    nearest_singularity_distance,
    parse_expression,
    taylor_coefficient,
)


class TestParsing:
    def test_entire_composition(self):
        f = parse_expression("exp(-z^2)")
        assert f.entirety == "entire"
        assert f.singularities == ()

    def test_simple_poles_at_denominator_roots(self):
        f = parse_expression("1/(1+z^2)")
        assert f.entirety == "meromorphic"
        locs = sorted(s.location.imag for s in f.singularities)
        np.testing.assert_allclose(locs, [-1.0, 1.0], atol=1e-9)
        assert all(s.kind == "pole" and s.order == 1 for s in f.singularities)

    def test_explicit_power_gives_pole_order(self):
        f = parse_expression("1/((z-2)^3)")
        (s,) = f.singularities
        assert s.kind == "pole"
        assert s.order == 3
        np.testing.assert_allclose([s.location.real, s.location.imag], [2.0, 0.0], atol=1e-9)

    def test_repeated_root_clustering(self):
        f = parse_expression("1/(z^2+2*z+1)")
        (s,) = f.singularities
        assert s.order == 2
        assert abs(s.location - (-1)) < 1e-5

    def test_removable_singularity_not_cancelled(self):
        f = parse_expression("sin(z)/z")
        (s,) = f.singularities
        assert s.kind == "pole" and s.order == 1 and s.location == 0

    def test_essential_singularity(self):
        f = parse_expression("exp(1/z)")
        (s,) = f.singularities
        assert s.kind == "essential"
        assert f.entirety == "unknown"

    def test_branch_point(self):
        f = parse_expression("log(z-2)")
        (s,) = f.singularities
        assert s.kind == "branch-point"
        assert abs(s.location - 2) < 1e-9

    def test_exp_denominator_is_nonvanishing(self):
        assert parse_expression("1/exp(z)").entirety == "entire"

    def test_syntax_error_reports_offset(self):
        with pytest.raises(ParseError) as exc:
            parse_expression("1+*z")
        assert exc.value.offset == 2

    def test_unknown_identifier(self):
        with pytest.raises(UnknownIdentifierError):
            parse_expression("tan(z)")

    def test_imaginary_literal_suffix(self):
        f = parse_expression("2i*z")
        assert evaluate(f, 3.0) == 6j

    def test_variable_synonyms(self):
        f = parse_expression("x^2+z")
        assert evaluate(f, 2.0) == 6.0


class TestEvaluate:
    def test_exp_at_i(self):
        f = parse_expression("exp(-z^2)")
        np.testing.assert_allclose(evaluate(f, 1j), math.e, rtol=1e-14)

    def test_sin_at_zero(self):
        assert evaluate(parse_expression("sin(z)"), 0.0) == 0.0

    def test_rational_value(self):
        f = parse_expression("1/(1+z^2)")
        np.testing.assert_allclose(evaluate(f, 0.5j), 4.0 / 3.0, rtol=1e-14)

    def test_principal_branch_log(self):
        f = parse_expression("log(z)")
        np.testing.assert_allclose(evaluate(f, -1 + 0.0j), 1j * math.pi, atol=1e-15)

    def test_evaluation_at_singularity_raises(self):
        f = parse_expression("1/(z-2)")
        with pytest.raises(SingularityError):
            evaluate(f, 2.0)

    def test_overflow_is_nonfinite_not_exception(self):
        f = parse_expression("exp(z)")
        value = evaluate(f, 1e6)
        assert not cmath.isfinite(value)

    def test_schwarz_reflection_for_real_literals(self):
        rng = np.random.default_rng(7)
        for text in ("exp(-z^2)", "cos(z)*exp(z)", "(1+z^2)/(3+z^4)", "sin(2*z)-z^3"):
            f = parse_expression(text)
            assert f.real_coefficients
            zs = rng.normal(size=100) * 0.4 + 1j * rng.normal(size=100) * 0.4
            lhs = f.evaluate_array(np.conj(zs))
            rhs = np.conj(f.evaluate_array(zs))
            np.testing.assert_allclose(lhs, rhs, atol=1e-12)

    def test_serialization_round_trip(self):
        rng = np.random.default_rng(11)
        for text in ("exp(-z^2)", "1/(1+z^2)", "2i*z-3.5", "sqrt(z+4)*cos(z)", "(z^2-1)/(z^3+8)"):
            f = parse_expression(text)
            g = parse_expression(f.to_string())
            zs = rng.normal(size=100) * 0.3 + 1j * rng.normal(size=100) * 0.3
            np.testing.assert_allclose(f.evaluate_array(zs), g.evaluate_array(zs), atol=1e-12)


class TestDerivativeAt:
    def test_exponential_first_derivative(self):
        est = derivative_at(parse_expression("exp(2i*z)"), 0.0, 1)
        np.testing.assert_allclose(est.value, 2j, atol=1e-12)

    def test_gaussian_second_derivative(self):
        est = derivative_at(parse_expression("exp(-z^2)"), 0.0, 2)
        np.testing.assert_allclose(est.value, -2.0, atol=1e-12)

    def test_rational_fourth_derivative_vs_finite_differences(self):
        # Taylor series of 1/(1+z^2) has coefficient +1 at z^4, so f''''(0) = 24.
        f = parse_expression("1/(1+z^2)")
        est = derivative_at(f, 0.0, 4, radius=0.5)

        def fd4(h):
            pts = [f(k * h).real for k in (-2, -1, 0, 1, 2)]
            return (pts[0] - 4 * pts[1] + 6 * pts[2] - 4 * pts[3] + pts[4]) / h**4

        # Richardson-extrapolated central differences as the independent check
        fd = (4 * fd4(0.025) - fd4(0.05)) / 3
        np.testing.assert_allclose(fd, 24.0, atol=1e-3)
        np.testing.assert_allclose(est.value, 24.0, atol=1e-9)

    def test_n_zero_matches_evaluate(self):
        for text in ("exp(-z^2)", "1/(1+z^2)", "cos(z)"):
            f = parse_expression(text)
            for x0 in (0.0, 0.3, -0.2):
                est = derivative_at(f, x0, 0)
                assert abs(est.value - evaluate(f, x0)) < 1e-10

    def test_radius_independence(self):
        f = parse_expression("1/(1+z^2)")
        a = derivative_at(f, 0.0, 3, radius=0.2).value
        b = derivative_at(f, 0.0, 3, radius=0.4).value
        assert abs(a - b) < 1e-8

    def test_singularity_inside_circle_rejected(self):
        f = parse_expression("1/(1+z^2)")
        with pytest.raises(DomainError):
            derivative_at(f, 0.0, 1, radius=1.5)

    def test_taylor_coefficient_of_gaussian(self):
        # exp(-z^2) = sum (-1)^m z^(2m) / m!
        f = parse_expression("exp(-z^2)")
        for m in range(5):
            est = taylor_coefficient(f, 0.0, 2 * m)
            np.testing.assert_allclose(est.value, (-1.0) ** m / math.factorial(m), atol=1e-12)


class TestNearestSingularityDistance:
    def test_entire_is_infinite(self):
        assert nearest_singularity_distance(parse_expression("exp(-z^2)"), 0.0) == math.inf

    def test_unit_distance_for_lorentzian(self):
        d = nearest_singularity_distance(parse_expression("1/(1+z^2)"), 0.0)
        np.testing.assert_allclose(d, 1.0, atol=1e-9)

    def test_offset_center(self):
        d = nearest_singularity_distance(parse_expression("1/(z-2)"), 0.5)
        np.testing.assert_allclose(d, 1.5, atol=1e-9)

    def test_unknown_structure_is_explicit(self):
        assert nearest_singularity_distance(parse_expression("1/(1+exp(z))"), 0.0) is None
