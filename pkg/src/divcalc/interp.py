"""Interpretations of divergent integrals and their contour evaluations.

A divergent integral of the form

    int_a^b f(x) / (x - x0)^order dx,        a < x0 < b,

carries no unique value; a chosen *interpretation* assigns one. Every
interpretation supported here is a set of (analytic kernel, path) pairs: the
assigned value is the sum of contour integrals of kernel(z) * f(z) / (z-x0)^order
along paths from a to b that detour around x0. The number of pairs is the
interpretation's genus.

Built-ins (registered under ``"ubv"``, ``"lbv"``, ``"fpi"``):

``ubv``
    upper boundary value, the limit of the integral with the pole pushed to
    x0 + i*eps. Genus 1, kernel 1, path through the *lower* half-plane.
``lbv``
    lower boundary value (pole at x0 - i*eps). Genus 1, kernel 1, path
    through the *upper* half-plane.
``fpi``
    Hadamard finite part: symmetric deletion of (x0-eps, x0+eps) with the
    divergent terms discarded. Genus 2, kernels 1/2 on both half-plane paths
    (the average of the two boundary values).

The three obey, for f analytic at x0 with Taylor coefficient c_n at order
n = order - 1:

    UBV - LBV = 2*pi*i*c_n,   FPI = (UBV + LBV)/2.

Infinite limits follow the symmetric-cutoff convention: the value on
(-inf, inf) is the limit over [-c, c]. Numerically the limit is reached
either by Richardson extrapolation in 1/c, or - when an oscillation hint
``sigma`` marks the integrand as e^{i*sigma*x}-like - by closing the tails
with rays tilted into the half-plane where the exponential decays.

This module also provides the symmetric-deletion limit as an independent
check (:func:`fpi_epsilon_oracle`), finite parts of endpoint-singular
half-line integrals with logarithmic and fractional-power kernels
(:func:`fpi_halfline_integer`, :func:`fpi_halfline_fractional`), and closed
forms for Fourier-kernel integrands (:func:`fourier_closed_form`).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence, Union

import numpy as np
from scipy.integrate import quad

from ._numerics import adaptive_quadrature, neville_at_zero
from .contour import ContourPath, LineSegment, build_indented_path, integrate_along, tilted_ray_path
from .errors import ConvergenceError, DomainError
from .expr import (
    AnalyticFunction,
    compile_scalar,
    nearest_singularity_distance,
    taylor_coefficient,
)

__all__ = [
    "DivergentIntegralSpec",
    "Interpretation",
    "KernelPathPair",
    "EvaluationResult",
    "GAMMA_PLUS",
    "GAMMA_MINUS",
    "register_interpretation",
    "get_interpretation",
    "list_interpretations",
    "evaluate_divergent",
    "default_bump_radius",
    "fpi_epsilon_oracle",
    "fpi_halfline_integer",
    "fpi_halfline_fractional",
    "fourier_closed_form",
]

_RAY_ANGLE = math.pi / 4
_MAX_CUTOFF_DOUBLINGS = 12


@dataclass(frozen=True)
class DivergentIntegralSpec:
    """One member of the pole-in-the-interior family of divergent integrals.

    ``order`` is the full power of (x - x0) in the denominator (order = n + 1
    for a pole of order n + 1). Limits may be ``-inf``/``+inf``; infinite
    limits are interpreted as symmetric-cutoff limits. ``oscillation_hint``
    optionally declares the integrand frequency sigma of an e^{i sigma x}-type
    factor so infinite tails can be closed by tilted rays.
    """

    f: AnalyticFunction
    x0: float
    order: int
    a: float = -math.inf
    b: float = math.inf
    oscillation_hint: Optional[float] = None

    def __post_init__(self):
        if self.order < 1:
            raise DomainError("order must be >= 1")
        if not self.a < self.x0 < self.b:
            raise DomainError(f"x0={self.x0} must lie strictly inside ({self.a}, {self.b})")

    @property
    def finite(self) -> bool:
        return math.isfinite(self.a) and math.isfinite(self.b)


Kernel = Union[complex, Callable[[np.ndarray], np.ndarray]]
PathTemplate = Callable[[DivergentIntegralSpec, float, float, float], ContourPath]


def _gamma_template(side: str) -> PathTemplate:
    def build(spec: DivergentIntegralSpec, a: float, b: float, rho: float) -> ContourPath:
        return build_indented_path(a, b, spec.x0, rho, side)

    return build


GAMMA_PLUS: PathTemplate = _gamma_template("above")
GAMMA_MINUS: PathTemplate = _gamma_template("below")
_TEMPLATE_ALIASES = {"gamma+": GAMMA_PLUS, "gamma-": GAMMA_MINUS}


@dataclass(frozen=True)
class KernelPathPair:
    kernel: Kernel
    path_template: PathTemplate

    def kernel_values(self, z: np.ndarray) -> np.ndarray:
        if callable(self.kernel):
            return np.asarray(self.kernel(z), dtype=complex)
        return np.asarray(complex(self.kernel))

    def describe_kernel(self) -> str:
        if callable(self.kernel):
            return getattr(self.kernel, "__name__", "callable")
        return repr(complex(self.kernel))


@dataclass(frozen=True)
class Interpretation:
    """Named value assignment: a set of (kernel, path template) pairs."""

    name: str
    pairs: tuple[KernelPathPair, ...]

    @property
    def genus(self) -> int:
        return len(self.pairs)


@dataclass(frozen=True)
class EvaluationResult:
    value: complex
    abs_error_estimate: float
    diagnostics: dict = field(default_factory=dict)


# ---------------------------------------------------------------------------
# Registry
# ---------------------------------------------------------------------------

_REGISTRY: dict[str, Interpretation] = {}


def register_interpretation(name: str, pairs: Sequence[tuple[Kernel, object]]) -> Interpretation:
    """Register a new interpretation from (kernel, path-template) pairs.

    Kernels are complex constants or vectorised callables; templates are
    either the exported ``GAMMA_PLUS``/``GAMMA_MINUS`` builders, the strings
    ``"gamma+"``/``"gamma-"``, or callables ``(spec, a, b, rho) -> ContourPath``
    producing a path from a to b that avoids x0.
    """
    key = name.lower()
    if key in _REGISTRY:
        raise DomainError(f"interpretation {name!r} already registered")
    if not pairs:
        raise DomainError("an interpretation needs at least one (kernel, path) pair")
    normalised = []
    for kernel, template in pairs:
        if isinstance(template, str):
            try:
                template = _TEMPLATE_ALIASES[template.lower()]
            except KeyError:
                raise DomainError(f"unknown path template {template!r}") from None
        if not callable(template):
            raise DomainError("path template must be callable or 'gamma+'/'gamma-'")
        normalised.append(KernelPathPair(kernel, template))
    interp = Interpretation(key, tuple(normalised))
    _REGISTRY[key] = interp
    return interp


def get_interpretation(name: Union[str, Interpretation]) -> Interpretation:
    if isinstance(name, Interpretation):
        return name
    try:
        return _REGISTRY[name.lower()]
    except KeyError:
        known = ", ".join(sorted(_REGISTRY))
        raise DomainError(f"unknown interpretation {name!r} (known: {known})") from None


def list_interpretations() -> tuple[str, ...]:
    return tuple(sorted(_REGISTRY))


register_interpretation("ubv", [(1.0 + 0j, GAMMA_MINUS)])
register_interpretation("lbv", [(1.0 + 0j, GAMMA_PLUS)])
register_interpretation("fpi", [(0.5 + 0j, GAMMA_PLUS), (0.5 + 0j, GAMMA_MINUS)])


# ---------------------------------------------------------------------------
# Geometry and guards
# ---------------------------------------------------------------------------


def default_bump_radius(spec: DivergentIntegralSpec) -> float:
    """Half of min(1, nearest-singularity distance), capped by the interval."""
    dist = nearest_singularity_distance(spec.f, spec.x0)
    if dist is None:
        base = 0.5
    else:
        base = min(1.0, dist) / 2.0
    if math.isfinite(spec.a):
        base = min(base, 0.5 * (spec.x0 - spec.a))
    if math.isfinite(spec.b):
        base = min(base, 0.5 * (spec.b - spec.x0))
    if base <= 0:
        raise DomainError("cannot fit an indentation between x0 and the endpoints")
    return base


def _segment_distance(s: complex, lo: float, hi: float) -> float:
    """Distance from a point to the real segment [lo, hi]."""
    if lo <= s.real <= hi:
        return abs(s.imag)
    return min(abs(s - lo), abs(s - hi))


def _guard_interval(spec: DivergentIntegralSpec, lo: float, hi: float):
    for s in spec.f.singularities:
        if _segment_distance(s.location, lo, hi) < 1e-9 * max(1.0, abs(s.location)):
            raise DomainError(
                f"integrand singularity at {s.location} lies on the integration interval"
            )


def _guard_infinite_direction(spec: DivergentIntegralSpec):
    for s in spec.f.singularities:
        near_axis = abs(s.location.imag) < 1e-9 * max(1.0, abs(s.location))
        if not near_axis:
            continue
        if spec.b == math.inf and s.location.real > spec.x0:
            raise DomainError(f"real-axis singularity at {s.location} blocks the upper tail")
        if spec.a == -math.inf and s.location.real < spec.x0:
            raise DomainError(f"real-axis singularity at {s.location} blocks the lower tail")


def _tail_integrability_guard(spec: DivergentIntegralSpec, c0: float):
    """Sampled check that |f(x)|/x^2 does not grow along the infinite tails."""
    xs = []
    if spec.b == math.inf:
        xs.append(c0 * np.array([1.0, 2.0, 4.0, 8.0]))
    if spec.a == -math.inf:
        xs.append(-c0 * np.array([1.0, 2.0, 4.0, 8.0]))
    for sample in xs:
        vals = np.abs(spec.f.evaluate_array(sample.astype(complex))) / sample**2
        if np.all(np.diff(vals) > 0) and vals[-1] > 2.0 * vals[0]:
            raise DomainError("tail sampling shows f/x^2 growing: integral has no cutoff limit")


def _term_integrand(pair: KernelPathPair, spec: DivergentIntegralSpec):
    f = spec.f
    x0 = spec.x0
    order = spec.order
    kernel = pair.kernel
    if callable(kernel):
        return lambda z: kernel(z) * f.evaluate_array(z) / (z - x0) ** order
    w = complex(kernel)
    return lambda z: w * f.evaluate_array(z) / (z - x0) ** order


# ---------------------------------------------------------------------------
# evaluate_divergent
# ---------------------------------------------------------------------------


def evaluate_divergent(
    spec: DivergentIntegralSpec,
    interpretation: Union[str, Interpretation] = "fpi",
    tol: float = 1e-10,
) -> EvaluationResult:
    """Value of a divergent integral under the given interpretation.

    Finite intervals are integrated directly along the interpretation's
    indented paths. Infinite limits use the symmetric cutoff convention,
    realised by Richardson extrapolation in the inverse cutoff, or by tilted
    decay rays when ``spec.oscillation_hint`` is set.
    """
    interp = get_interpretation(interpretation)
    if spec.finite:
        return _evaluate_finite(spec, interp, tol)
    _guard_infinite_direction(spec)
    if spec.oscillation_hint:
        return _evaluate_tilted(spec, interp, tol)
    return _evaluate_cutoff_extrapolation(spec, interp, tol)


def _evaluate_finite(
    spec: DivergentIntegralSpec, interp: Interpretation, tol: float
) -> EvaluationResult:
    _guard_interval(spec, spec.a, spec.b)
    rho = default_bump_radius(spec)
    per_pair_tol = tol / interp.genus
    total = 0j
    err = 0.0
    evaluations = 0
    per_path = []
    for pair in interp.pairs:
        path = pair.path_template(spec, spec.a, spec.b, rho)
        _guard_path(path, spec)
        q = integrate_along(_term_integrand(pair, spec), path, per_pair_tol)
        total += q.value
        err += q.abs_error_estimate
        evaluations += q.evaluations
        per_path.append(_path_diag(pair, path, q.value, q.abs_error_estimate))
    return EvaluationResult(
        total,
        err,
        {
            "method": "finite",
            "rho": rho,
            "cutoff": None,
            "evaluations": evaluations,
            "per_path": per_path,
        },
    )


def _guard_path(path: ContourPath, spec: DivergentIntegralSpec):
    for s in spec.f.singularities:
        if path.min_distance_to(s.location) < 1e-9 * max(1.0, abs(s.location)):
            raise DomainError(f"path passes through integrand singularity at {s.location}")


def _path_diag(pair: KernelPathPair, path: ContourPath, value: complex, err: float) -> dict:
    return {
        "kernel": pair.describe_kernel(),
        "value": [value.real, value.imag],
        "abs_error": err,
        "path": path.to_json(),
    }


def _core_bounds(spec: DivergentIntegralSpec, rho: float) -> tuple[float, float]:
    c0 = max(8.0, 2.0 * (abs(spec.x0) + rho + 1.0))
    lo = spec.a if math.isfinite(spec.a) else -c0
    hi = spec.b if math.isfinite(spec.b) else c0
    return lo, hi


def _evaluate_tilted(
    spec: DivergentIntegralSpec, interp: Interpretation, tol: float
) -> EvaluationResult:
    sigma = float(spec.oscillation_hint)
    direction = "upper" if sigma > 0 else "lower"
    rho = default_bump_radius(spec)
    lo, hi = _core_bounds(spec, rho)
    # anchors must clear every declared singularity so the swept sectors are clean
    reach = max([abs(s.location) for s in spec.f.singularities], default=0.0)
    anchor = max(abs(lo), abs(hi), reach + 1.0)
    lo = lo if math.isfinite(spec.a) else -anchor
    hi = hi if math.isfinite(spec.b) else anchor
    _guard_interval(spec, lo, hi)
    length = max(12.0, 45.0 / (abs(sigma) * math.sin(_RAY_ANGLE)))

    per_pair_tol = tol / interp.genus
    total = 0j
    err = 0.0
    evaluations = 0
    per_path = []
    for pair in interp.pairs:
        path = pair.path_template(spec, lo, hi, rho)
        if spec.a == -math.inf:
            left = tilted_ray_path(lo, direction, length, _RAY_ANGLE).reversed()
            path = left.joined(path)
        if spec.b == math.inf:
            path = path.joined(tilted_ray_path(hi, direction, length, _RAY_ANGLE))
        _guard_path(path, spec)
        q = integrate_along(_term_integrand(pair, spec), path, per_pair_tol)
        total += q.value
        err += q.abs_error_estimate
        evaluations += q.evaluations
        per_path.append(_path_diag(pair, path, q.value, q.abs_error_estimate))
    err += _ray_truncation_estimate(spec, sigma, anchor=max(abs(lo), abs(hi)), length=length)
    return EvaluationResult(
        total,
        err,
        {
            "method": "tilted-rays",
            "rho": rho,
            "cutoff": max(abs(lo), abs(hi)),
            "ray_length": length,
            "evaluations": evaluations,
            "per_path": per_path,
        },
    )


def _ray_truncation_estimate(
    spec: DivergentIntegralSpec, sigma: float, anchor: float, length: float
) -> float:
    ends = []
    theta = _RAY_ANGLE if sigma > 0 else -_RAY_ANGLE
    if spec.b == math.inf:
        ends.append(anchor + length * complex(math.cos(theta), math.sin(theta)))
    if spec.a == -math.inf:
        ends.append(-anchor + length * complex(-math.cos(theta), math.sin(theta)))
    if not ends:
        return 0.0
    zs = np.array(ends, dtype=complex)
    tail_density = np.abs(spec.f.evaluate_array(zs)) / np.abs(zs - spec.x0) ** spec.order
    decay_scale = 1.0 / (abs(sigma) * math.sin(_RAY_ANGLE))
    return float(np.sum(tail_density)) * decay_scale


def _evaluate_cutoff_extrapolation(
    spec: DivergentIntegralSpec, interp: Interpretation, tol: float
) -> EvaluationResult:
    rho = default_bump_radius(spec)
    lo, hi = _core_bounds(spec, rho)
    _guard_interval(spec, lo, hi)
    _tail_integrability_guard(spec, max(abs(lo), abs(hi)))

    per_pair_tol = tol / (4.0 * interp.genus)
    running = []
    quad_err = 0.0
    evaluations = 0
    per_path = []
    for pair in interp.pairs:
        path = pair.path_template(spec, lo, hi, rho)
        _guard_path(path, spec)
        q = integrate_along(_term_integrand(pair, spec), path, per_pair_tol)
        running.append(q.value)
        quad_err += q.abs_error_estimate
        evaluations += q.evaluations
        per_path.append(_path_diag(pair, path, q.value, q.abs_error_estimate))

    scale = max(abs(lo), abs(hi))
    cutoffs = [scale]
    values = [sum(running)]
    extrap = None
    for _ in range(_MAX_CUTOFF_DOUBLINGS):
        new_scale = 2.0 * cutoffs[-1]
        for k, pair in enumerate(interp.pairs):
            integrand = _term_integrand(pair, spec)
            if spec.b == math.inf:
                ext = LineSegment(complex(cutoffs[-1]), complex(new_scale))
                q = integrate_along(integrand, ContourPath((ext,)), per_pair_tol)
                running[k] += q.value
                quad_err += q.abs_error_estimate
                evaluations += q.evaluations
            if spec.a == -math.inf:
                ext = LineSegment(complex(-new_scale), complex(-cutoffs[-1]))
                q = integrate_along(integrand, ContourPath((ext,)), per_pair_tol)
                running[k] += q.value
                quad_err += q.abs_error_estimate
                evaluations += q.evaluations
        cutoffs.append(new_scale)
        values.append(sum(running))
        if len(values) >= 4:
            extrap = neville_at_zero([1.0 / c for c in cutoffs], values, tol / 2.0)
            if extrap.converged:
                break
    if extrap is None or not extrap.converged:
        raise ConvergenceError(
            "symmetric-cutoff values did not extrapolate to a limit (non-convergent tail)"
        )
    return EvaluationResult(
        extrap.value,
        extrap.abs_error + quad_err,
        {
            "method": "cutoff-extrapolation",
            "rho": rho,
            "cutoff": cutoffs[-1],
            "evaluations": evaluations,
            "per_path": per_path,
        },
    )


# ---------------------------------------------------------------------------
# Symmetric-deletion oracle
# ---------------------------------------------------------------------------


def _deleted_divergence(spec: DivergentIntegralSpec, eps: float, coeffs: list[complex]) -> complex:
    """The terms of the deleted integral that blow up as eps -> 0.

    For order n+1 the symmetric deletion leaves sum_{k<n} c_k (1-(-1)^{n-k})
    / ((n-k) eps^{n-k}) with c_k the Taylor coefficients of f at x0; even
    n-k contributions cancel between the two sides.
    """
    n = spec.order - 1
    total = 0j
    for k in range(n):
        parity = 1.0 - (-1.0) ** (n - k)
        if parity:
            total += coeffs[k] * parity / ((n - k) * eps ** (n - k))
    return total


def default_epsilon_sequence(spec: DivergentIntegralSpec) -> list[float]:
    """Geometric deletion radii eps_j = eps0 / 2^j.

    The default depth shrinks with the pole order: the deleted integrals grow
    like eps^(1-order), so in double precision small eps at high order loses
    the digits the extrapolation needs.
    """
    rho = default_bump_radius(spec)
    eps0 = rho / 2.0
    depth = 9 if spec.order <= 3 else (7 if spec.order == 4 else 6)
    return [eps0 * 0.5**j for j in range(depth)]


def fpi_epsilon_oracle(
    spec: DivergentIntegralSpec,
    eps_sequence: Optional[Sequence[float]] = None,
    tol: float = 1e-8,
) -> complex:
    """Finite part by symmetric deletion and extrapolation of the radius to zero.

    For each eps, integrates over [a, x0-eps] and [x0+eps, b] with library
    quadrature (independent of the contour engine), subtracts the divergent
    terms, and extrapolates the remainder polynomially to eps = 0. Only finite
    intervals are meaningful here.
    """
    if not spec.finite:
        raise DomainError("the deletion oracle requires finite limits")
    _guard_interval(spec, spec.a, spec.b)
    if eps_sequence is None:
        eps_sequence = default_epsilon_sequence(spec)
    eps_sequence = sorted(float(e) for e in eps_sequence)[::-1]
    if eps_sequence[0] >= min(spec.x0 - spec.a, spec.b - spec.x0):
        raise DomainError("largest deletion radius reaches an endpoint")

    n = spec.order - 1
    coeffs = [taylor_coefficient(spec.f, spec.x0, k).value for k in range(n)]
    g = compile_scalar(spec.f)
    x0 = spec.x0
    order = spec.order

    def integrand(x: float) -> complex:
        return g(complex(x)) / (x - x0) ** order

    values = []
    for eps in eps_sequence:
        left, _ = quad(integrand, spec.a, x0 - eps, complex_func=True, epsabs=1e-13, epsrel=1e-13, limit=400)
        right, _ = quad(integrand, x0 + eps, spec.b, complex_func=True, epsabs=1e-13, epsrel=1e-13, limit=400)
        values.append(left + right - _deleted_divergence(spec, eps, coeffs))
    extrap = neville_at_zero(list(eps_sequence), values, tol)
    if not extrap.converged and extrap.abs_error > 1e-4 * max(1.0, abs(extrap.value)):
        raise ConvergenceError(
            f"deletion-limit extrapolation stalled (last change {extrap.abs_error:.3g})"
        )
    return extrap.value


# ---------------------------------------------------------------------------
# Half-line finite parts (endpoint singularity at 0)
# ---------------------------------------------------------------------------


def _keyhole_radius(f: AnalyticFunction, a: float) -> float:
    delta = a / 2.0
    dist = nearest_singularity_distance(f, 0.0)
    if dist is not None and math.isfinite(dist):
        delta = min(delta, dist / 2.0)
    return delta


def _halfline_guard(f: AnalyticFunction, a: float):
    for s in f.singularities:
        if _segment_distance(s.location, 0.0, a) < 1e-9 * max(1.0, abs(s.location)):
            raise DomainError(f"integrand singularity at {s.location} lies on [0, a]")


def _keyhole_circle(
    f: AnalyticFunction, delta: float, power: float, tol: float
) -> tuple[complex, float, int]:
    """Integral over the full circle |z| = delta with arg z running 0 -> 2pi.

    The power z^(-power) and any logarithm use the 0..2pi sheet, so the values
    just above and just below the positive real axis differ as the keyhole
    demands. Returns (integral of f * z^(-power) dz, error, evaluations);
    the caller folds in kernel-specific factors.
    """

    def g(theta: np.ndarray) -> np.ndarray:
        z = delta * np.exp(1j * theta)
        return f.evaluate_array(z) * delta ** (-power) * np.exp(-1j * power * theta) * 1j * z

    out = adaptive_quadrature(g, 0.0, 2.0 * math.pi, tol)
    return out.value, out.abs_error, out.evaluations


def fpi_halfline_integer(f: AnalyticFunction, a: float, m: int, tol: float = 1e-10) -> complex:
    """Finite part of int_0^a f(x)/x^m dx for integer m >= 1.

    Evaluated as the keyhole contour integral of f(z) z^(-m) (log z - i pi)
    / (2 pi i) around the branch cut on [0, a]: the two straddling segments
    collapse to the ordinary integral over [delta, a] plus a circle term whose
    logarithm lives on the 0..2pi sheet. The result is delta-independent, so
    delta stays at a comfortable fraction of a.
    """
    if a <= 0:
        raise DomainError("upper limit must be positive")
    if m < 1:
        raise DomainError("power must be >= 1")
    _halfline_guard(f, a)
    delta = _keyhole_radius(f, a)

    def straight(x: np.ndarray) -> np.ndarray:
        return f.evaluate_array(x.astype(complex)) * x ** (-float(m))

    line = adaptive_quadrature(straight, delta, a, tol / 2.0)

    def g(theta: np.ndarray) -> np.ndarray:
        z = delta * np.exp(1j * theta)
        log_sheet = math.log(delta) + 1j * (theta - math.pi)
        return f.evaluate_array(z) * z ** (-m) * log_sheet * 1j * z

    circle = adaptive_quadrature(g, 0.0, 2.0 * math.pi, tol / 2.0)
    return line.value + circle.value / (2j * math.pi)


def fpi_halfline_fractional(
    f: AnalyticFunction, a: float, m: int, nu: float, tol: float = 1e-10
) -> complex:
    """Finite part of int_0^a f(x)/x^(m+nu) dx for integer m >= 1, 0 < nu < 1.

    Same keyhole as the integer case with kernel 1/(e^{-2 pi i nu} - 1) and
    the power z^(-m-nu) on the 0..2pi sheet. The straddling segments combine
    to (e^{-2 pi i nu} - 1) times the ordinary [delta, a] integral, cancelling
    the kernel, so the value is the ordinary integral plus the kernel-weighted
    circle term.
    """
    if a <= 0:
        raise DomainError("upper limit must be positive")
    if m < 1:
        raise DomainError("power must be >= 1")
    if not 0.0 < nu < 1.0:
        raise DomainError("fractional exponent must lie in (0, 1)")
    _halfline_guard(f, a)
    delta = _keyhole_radius(f, a)
    power = m + nu

    def straight(x: np.ndarray) -> np.ndarray:
        return f.evaluate_array(x.astype(complex)) * x ** (-power)

    line = adaptive_quadrature(straight, delta, a, tol / 2.0)
    kernel = 1.0 / (np.exp(-2j * math.pi * nu) - 1.0)
    circle, _, _ = _keyhole_circle(f, delta, power, tol / 2.0)
    return line.value + kernel * circle


# ---------------------------------------------------------------------------
# Closed forms for Fourier kernels
# ---------------------------------------------------------------------------


def fourier_closed_form(interp_name: str, sigma: float, x0: float, n: int) -> complex:
    """Value of int_-inf^inf e^{i sigma x} (x - x0)^(-n) dx under ubv/lbv/fpi.

    sigma = 0 dispatches to the pure-power column (+-i pi for n = 1 under the
    boundary values, zero otherwise and for the finite part), avoiding any
    step-function convention at the origin.
    """
    if n < 1:
        raise DomainError("n must be >= 1")
    name = get_interpretation(interp_name).name
    if name not in ("ubv", "lbv", "fpi"):
        raise DomainError(f"no closed form for custom interpretation {name!r}")
    if sigma == 0:
        if name == "fpi":
            return 0j
        value = 1j * math.pi if n == 1 else 0j
        return value if name == "ubv" else -value
    base = (
        math.pi
        * (1j**n)
        * sigma ** (n - 1)
        * np.exp(1j * sigma * x0)
        / math.factorial(n - 1)
    )
    if name == "ubv":
        return complex(2.0 * base) if sigma > 0 else 0j
    if name == "lbv":
        return complex(-2.0 * base) if sigma < 0 else 0j
    return complex(base * math.copysign(1.0, sigma))
