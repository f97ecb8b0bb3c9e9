"""Oriented paths in the complex plane and quadrature along them.

Paths are immutable sequences of line and circular-arc segments. The standard
builders produce the geometry used throughout the package: real intervals with
a semicircular indentation around an interior singular point, origin-centred
semicircles, and rays tilted into a chosen half-plane (for exponentially
decaying closure of oscillatory tails).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Callable, NamedTuple, Union

import numpy as np

from ._numerics import adaptive_quadrature
from .errors import DomainError

__all__ = [
    "LineSegment",
    "ArcSegment",
    "ContourPath",
    "QuadratureResult",
    "build_indented_path",
    "build_semicircle",
    "tilted_ray_path",
    "integrate_along",
]

_CONTINUITY_TOL = 1e-12


@dataclass(frozen=True)
class LineSegment:
    start: complex
    end: complex

    def __post_init__(self):
        if self.start == self.end:
            raise DomainError("line segment must have distinct endpoints")

    @property
    def start_point(self) -> complex:
        return self.start

    @property
    def end_point(self) -> complex:
        return self.end

    def point(self, t: np.ndarray) -> np.ndarray:
        return self.start + t * (self.end - self.start)

    def velocity(self, t: np.ndarray) -> np.ndarray:
        return np.full_like(np.asarray(t, dtype=complex), self.end - self.start)

    def reversed(self) -> "LineSegment":
        return LineSegment(self.end, self.start)

    def to_json(self) -> dict:
        return {
            "type": "line",
            "start": [self.start.real, self.start.imag],
            "end": [self.end.real, self.end.imag],
        }


@dataclass(frozen=True)
class ArcSegment:
    center: complex
    radius: float
    theta_start: float
    theta_end: float

    def __post_init__(self):
        if self.radius <= 0:
            raise DomainError("arc radius must be positive")
        if abs(self.theta_end - self.theta_start) > 2 * math.pi + 1e-12:
            raise DomainError("arc sweep exceeds a full turn")
        if self.theta_end == self.theta_start:
            raise DomainError("arc must have nonzero sweep")

    @property
    def start_point(self) -> complex:
        return self.center + self.radius * cmath.exp(1j * self.theta_start)

    @property
    def end_point(self) -> complex:
        return self.center + self.radius * cmath.exp(1j * self.theta_end)

    def point(self, t: np.ndarray) -> np.ndarray:
        theta = self.theta_start + t * (self.theta_end - self.theta_start)
        return self.center + self.radius * np.exp(1j * theta)

    def velocity(self, t: np.ndarray) -> np.ndarray:
        theta = self.theta_start + t * (self.theta_end - self.theta_start)
        sweep = self.theta_end - self.theta_start
        return 1j * self.radius * sweep * np.exp(1j * theta)

    def reversed(self) -> "ArcSegment":
        return ArcSegment(self.center, self.radius, self.theta_end, self.theta_start)

    def to_json(self) -> dict:
        return {
            "type": "arc",
            "center": [self.center.real, self.center.imag],
            "radius": self.radius,
            "theta_start": self.theta_start,
            "theta_end": self.theta_end,
        }


PathSegment = Union[LineSegment, ArcSegment]


@dataclass(frozen=True)
class ContourPath:
    """Continuous oriented chain of segments."""

    segments: tuple[PathSegment, ...]

    def __init__(self, segments):
        segments = tuple(segments)
        if not segments:
            raise DomainError("path needs at least one segment")
        for prev, nxt in zip(segments, segments[1:]):
            gap = abs(prev.end_point - nxt.start_point)
            scale = max(1.0, abs(prev.end_point))
            if gap > _CONTINUITY_TOL * scale:
                raise DomainError(
                    f"discontinuous path: segment ends at {prev.end_point}, "
                    f"next starts at {nxt.start_point}"
                )
        object.__setattr__(self, "segments", segments)

    @property
    def start_point(self) -> complex:
        return self.segments[0].start_point

    @property
    def end_point(self) -> complex:
        return self.segments[-1].end_point

    def reversed(self) -> "ContourPath":
        return ContourPath(tuple(s.reversed() for s in reversed(self.segments)))

    def joined(self, other: "ContourPath") -> "ContourPath":
        return ContourPath(self.segments + other.segments)

    def min_distance_to(self, point: complex, samples_per_segment: int = 64) -> float:
        """Sampled lower-resolution distance from the path to a point."""
        t = np.linspace(0.0, 1.0, samples_per_segment)
        return min(
            float(np.min(np.abs(seg.point(t) - point))) for seg in self.segments
        )

    def to_json(self) -> list[dict]:
        return [seg.to_json() for seg in self.segments]


class QuadratureResult(NamedTuple):
    value: complex
    abs_error_estimate: float
    evaluations: int
    converged: bool


def build_indented_path(
    a: float, b: float, x0: float, rho: float, side: str
) -> ContourPath:
    """Real segment [a, b] with a semicircular indentation of radius rho at x0.

    ``side="above"`` detours through the upper half-plane, ``side="below"``
    through the lower one; both run left to right.
    """
    if not a < x0 < b:
        raise DomainError(f"x0={x0} must lie strictly inside ({a}, {b})")
    if rho <= 0 or rho >= min(x0 - a, b - x0):
        raise DomainError(f"indentation radius {rho} too large for ({a}, {x0}, {b})")
    if side == "above":
        arc = ArcSegment(complex(x0), rho, math.pi, 0.0)
    elif side == "below":
        arc = ArcSegment(complex(x0), rho, -math.pi, 0.0)
    else:
        raise DomainError(f"side must be 'above' or 'below', got {side!r}")
    return ContourPath(
        (
            LineSegment(complex(a), complex(x0 - rho)),
            arc,
            LineSegment(complex(x0 + rho), complex(b)),
        )
    )


def build_semicircle(radius: float, half: str) -> ContourPath:
    """Semicircle of the given radius from -radius to +radius through one half-plane."""
    if radius <= 0:
        raise DomainError("radius must be positive")
    if half == "upper":
        arc = ArcSegment(0j, radius, math.pi, 0.0)
    elif half == "lower":
        arc = ArcSegment(0j, radius, -math.pi, 0.0)
    else:
        raise DomainError(f"half must be 'upper' or 'lower', got {half!r}")
    return ContourPath((arc,))


def tilted_ray_path(x_from: float, direction: str, length: float, angle: float) -> ContourPath:
    """Straight ray leaving the real axis at ``x_from`` into a half-plane.

    The ray tilts away from the origin toward +/-infinity: anchors at negative
    abscissae use the mirrored direction angle pi - ``angle``.
    """
    if not 0.0 < angle < math.pi / 2:
        raise DomainError("ray angle must lie strictly between 0 and pi/2")
    if length <= 0:
        raise DomainError("ray length must be positive")
    theta = angle if x_from >= 0 else math.pi - angle
    if direction == "lower":
        theta = -theta
    elif direction != "upper":
        raise DomainError(f"direction must be 'upper' or 'lower', got {direction!r}")
    end = complex(x_from) + length * cmath.exp(1j * theta)
    return ContourPath((LineSegment(complex(x_from), end),))


def integrate_along(
    integrand: Callable[[np.ndarray], np.ndarray],
    path: ContourPath,
    tol: float = 1e-10,
    max_panels_per_segment: int = 2048,
) -> QuadratureResult:
    """Contour integral of a vectorised integrand along a path.

    Each segment is parametrised on [0, 1] and handled by an adaptive nested
    Gauss-Kronrod rule; segment results are combined in path order. ``tol`` is
    an absolute tolerance on the whole path. Non-finite integrand samples
    raise; failure to reach the tolerance is reported through ``converged``.
    """
    if tol <= 0:
        raise DomainError("tolerance must be positive")
    per_segment = tol / len(path.segments)
    total = 0j
    err = 0.0
    evaluations = 0
    converged = True
    for seg in path.segments:

        def g(t: np.ndarray, seg=seg) -> np.ndarray:
            return integrand(seg.point(t)) * seg.velocity(t)

        outcome = adaptive_quadrature(g, 0.0, 1.0, per_segment, max_panels_per_segment)
        total += outcome.value
        err += outcome.abs_error
        evaluations += outcome.evaluations
        converged = converged and outcome.converged
    return QuadratureResult(total, err, evaluations, converged)
