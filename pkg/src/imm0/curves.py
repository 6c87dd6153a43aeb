"""Immersed closed plane curves on a uniform parameter grid.

Curves are sampled at theta_j = 2*pi*j/N with N a power of two and no
duplicated endpoint; plane points are stored as complex numbers x + i*y.
All calculus is spectral: exact for band-limited data, spectrally accurate
for smooth data.  Degenerate inputs (too slow, too coarse) are rejected at
construction rather than repaired silently.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import tolerances as tol
from .errors import (
    BadDiffeo,
    InvariantViolation,
    NonIntegerWinding,
    NonPeriodic,
    NonZeroDegree,
    NotClosed,
    NotImmersed,
    Undersampled,
)

TWO_PI = 2.0 * np.pi


# ---------------------------------------------------------------------------
# grid and spectral helpers
# ---------------------------------------------------------------------------

def parameter_grid(n: int) -> np.ndarray:
    """Uniform parameter values theta_j = 2*pi*j/n, endpoint excluded."""
    return np.arange(n) * (TWO_PI / n)


def as_complex(samples) -> np.ndarray:
    """Coerce an (N, 2) real array or a complex vector to complex samples."""
    z = np.asarray(samples)
    if z.ndim == 2 and z.shape[1] == 2:
        z = z[:, 0] + 1j * z[:, 1]
    elif z.ndim != 1:
        raise InvariantViolation(f"expected (N,) or (N, 2) samples, got shape {z.shape}")
    return np.ascontiguousarray(z, dtype=complex)


def check_power_of_two(n: int, minimum: int = 8) -> None:
    if n < minimum or (n & (n - 1)) != 0:
        raise Undersampled(f"need a power-of-two sample count >= {minimum}, got {n}")


def wrap_angle(x):
    """Wrap angles to [-pi, pi)."""
    return (np.asarray(x, dtype=float) + np.pi) % TWO_PI - np.pi


def spectral_derivative(z: np.ndarray) -> np.ndarray:
    """Differentiate periodic samples through the DFT.

    The Nyquist bin is zeroed: the symmetric trigonometric interpolant of real
    data has zero derivative contribution from that mode on the grid.
    """
    n = len(z)
    wavenumbers = np.fft.fftfreq(n, d=1.0 / n)
    spectrum = np.fft.fft(z) * (1j * wavenumbers)
    spectrum[n // 2] = 0.0
    return np.fft.ifft(spectrum)


def evaluate_series(z: np.ndarray, points) -> np.ndarray:
    """Evaluate the trigonometric interpolant of periodic samples anywhere.

    The Nyquist coefficient is treated as a cosine (split between +N/2 and
    -N/2), which keeps real coordinate data real.
    """
    points = np.asarray(points, dtype=float)
    n = len(z)
    coeff = np.fft.fft(z) / n
    wavenumbers = np.fft.fftfreq(n, d=1.0 / n)
    keep = np.arange(n) != n // 2
    out = np.exp(1j * np.outer(points, wavenumbers[keep])) @ coeff[keep]
    out += coeff[n // 2] * np.cos(points * (n / 2.0))
    return out


def loop_steps(e: np.ndarray) -> np.ndarray:
    """Principal-value angle steps between consecutive loop samples.

    The wrap-around step (last sample back to the first) is included, so the
    steps sum to 2*pi times the winding number.
    """
    return np.angle(np.roll(e, -1) * np.conj(e))


def _winding(steps: np.ndarray) -> int:
    total = float(np.sum(steps)) / TWO_PI
    degree = int(np.rint(total))
    if abs(total - degree) >= tol.DEGREE_RESIDUAL * tol.scale():
        raise NonIntegerWinding(f"winding sum {total:.9f} is not within tolerance of an integer")
    return degree


# ---------------------------------------------------------------------------
# core types
# ---------------------------------------------------------------------------

class PeriodicCurve:
    """Immersed closed curve; validates immersion and sampling on construction.

    Parameters
    ----------
    samples : array
        (N, 2) real points or N complex points, N a power of two >= 8.
    immersion_rel : float, optional
        Relative immersion floor (min speed vs mean speed); defaults to the
        package policy.
    """

    def __init__(self, samples, immersion_rel: float | None = None):
        z = as_complex(samples).copy()
        check_power_of_two(len(z))
        velocity = spectral_derivative(z)
        speed = np.abs(velocity)
        mean_speed = float(np.mean(speed))
        rel = tol.IMMERSION_REL if immersion_rel is None else immersion_rel
        floor = rel * mean_speed * tol.scale()
        lowest = float(np.min(speed))
        if not lowest > floor:
            raise NotImmersed(f"min speed {lowest:.3e} is not above {floor:.3e}")
        tangent = velocity / speed
        worst = float(np.max(np.abs(loop_steps(tangent))))
        if worst >= np.pi / 2:
            raise Undersampled(
                f"tangent turns {worst:.3f} rad between samples (>= pi/2); refine the grid"
            )
        for arr in (z, velocity, speed, tangent):
            arr.setflags(write=False)
        self.z = z
        self.velocity = velocity
        self.speed = speed
        self.tangent = tangent

    @property
    def n(self) -> int:
        return len(self.z)

    @property
    def samples(self) -> np.ndarray:
        """Points as an (N, 2) real array."""
        return np.column_stack((self.z.real, self.z.imag))

    @property
    def theta(self) -> np.ndarray:
        return parameter_grid(self.n)

    def length(self) -> float:
        return TWO_PI * float(np.mean(self.speed))


class UnitLoop:
    """Loop of unit vectors with adequate angular sampling."""

    def __init__(self, samples):
        e = as_complex(samples).copy()
        check_power_of_two(len(e))
        deviation = float(np.max(np.abs(np.abs(e) - 1.0)))
        if deviation >= tol.UNIT_MODULUS * tol.scale():
            raise InvariantViolation(f"modulus deviates from 1 by {deviation:.3e}")
        worst = float(np.max(np.abs(loop_steps(e))))
        if worst >= np.pi / 2:
            raise Undersampled(f"loop turns {worst:.3f} rad between samples (>= pi/2)")
        e.setflags(write=False)
        self.e = e

    @classmethod
    def from_angles(cls, angles) -> "UnitLoop":
        return cls(np.exp(1j * np.asarray(angles, dtype=float)))

    @property
    def n(self) -> int:
        return len(self.e)


class SpeedFunction:
    """Strictly positive speed samples on the uniform grid."""

    def __init__(self, samples):
        v = np.asarray(samples, dtype=float).copy()
        check_power_of_two(len(v))
        if not np.all(v > 0.0):
            raise NotImmersed("speed must be strictly positive everywhere")
        v.setflags(write=False)
        self.samples = v

    @property
    def n(self) -> int:
        return len(self.samples)


@dataclass(frozen=True)
class ArgumentLift:
    """Continuous argument samples of a unit loop plus its winding degree."""

    samples: np.ndarray
    degree: int


# ---------------------------------------------------------------------------
# winding and lifting
# ---------------------------------------------------------------------------

def rotation_degree(c: PeriodicCurve) -> int:
    """Winding number of the velocity: sum of principal tangent steps / 2*pi."""
    return _winding(loop_steps(c.tangent))


def loop_degree(e: UnitLoop) -> int:
    """Winding number of a unit loop."""
    return _winding(loop_steps(e.e))


def argument_lift(e: UnitLoop) -> ArgumentLift:
    """Continuous argument of a unit loop.

    The value at theta=0 is the principal argument in (-pi, pi]; later samples
    accumulate principal-value steps.  The wrap-around step determines the
    degree.
    """
    steps = loop_steps(e.e)
    base = float(np.angle(e.e[0]))
    a = base + np.concatenate(([0.0], np.cumsum(steps[:-1])))
    degree = _winding(steps)
    worst = float(np.max(np.abs(np.exp(1j * a) - e.e)))
    if worst >= tol.LIFT_RECONSTRUCTION * tol.scale():
        raise InvariantViolation(f"lift reproduces the loop only to {worst:.3e}")
    a.setflags(write=False)
    return ArgumentLift(a, degree)


def derivative(c: PeriodicCurve) -> np.ndarray:
    """Velocity samples of the curve (complex; x' + i y')."""
    return c.velocity


# ---------------------------------------------------------------------------
# basepoint, speed/tangent split, and reconstruction
# ---------------------------------------------------------------------------

def normalize_basepoint(c: PeriodicCurve) -> tuple[PeriodicCurve, complex]:
    """Translate so the curve starts at the origin; returns (curve, offset)."""
    offset = complex(c.z[0])
    return PeriodicCurve(c.z - offset), offset


def _closure_budget(curve_length: float) -> float:
    return tol.CLOSURE_REL * curve_length * tol.scale()


def split_velocity(c: PeriodicCurve) -> tuple[SpeedFunction, UnitLoop]:
    """Split the velocity into positive speed times unit tangent."""
    residual = abs(complex(np.mean(c.velocity))) * TWO_PI
    if residual >= _closure_budget(c.length()):
        raise NotClosed(f"velocity integrates to {residual:.3e} over one period")
    return SpeedFunction(c.speed), UnitLoop(c.tangent)


def integrate_velocity(v, e) -> PeriodicCurve:
    """Curve with velocity v*e starting at the origin.

    The pair must close up: the mean of v*e over the period (the displacement
    after one loop, divided by 2*pi) has to vanish within the closure budget.
    The mean is projected out so the result is exactly periodic.
    """
    vv = v.samples if isinstance(v, SpeedFunction) else np.asarray(v, dtype=float)
    ee = e.e if isinstance(e, UnitLoop) else as_complex(e)
    if len(vv) != len(ee):
        raise InvariantViolation("speed and tangent grids differ")
    w = vv * ee
    n = len(w)
    curve_length = TWO_PI * float(np.mean(np.abs(w)))
    residual = abs(complex(np.mean(w))) * TWO_PI
    if residual >= _closure_budget(curve_length):
        raise NotClosed(f"v*e integrates to {residual:.3e}; the curve would not close")
    spectrum = np.fft.fft(w) / n
    wavenumbers = np.fft.fftfreq(n, d=1.0 / n)
    antideriv = np.zeros_like(spectrum)
    antideriv[1:] = spectrum[1:] / (1j * wavenumbers[1:])
    antideriv[n // 2] = 0.0
    z = np.fft.ifft(antideriv * n)
    return PeriodicCurve(z - z[0])


# ---------------------------------------------------------------------------
# argument averages and the tangent image
# ---------------------------------------------------------------------------

def weighted_argument_mean(a, weights) -> complex:
    """exp(i * weighted mean of a); a global 2*pi*k offset of a drops out."""
    a = np.asarray(a, dtype=float)
    w = np.asarray(weights, dtype=float)
    return complex(np.exp(1j * (float(np.dot(a, w)) / float(np.sum(w)))))


def average_argument(c: PeriodicCurve) -> complex:
    """Length-weighted average tangent direction of a degree-0 curve.

    Defined as exp(i/L * integral of a * |c'| d theta) for a continuous
    argument a of the unit tangent; only degree 0 makes the argument periodic,
    so other degrees are refused.
    """
    if rotation_degree(c) != 0:
        raise NonZeroDegree("average argument needs rotation degree 0")
    lift = argument_lift(UnitLoop(c.tangent))
    return weighted_argument_mean(lift.samples, c.speed)


def variation_average(a) -> tuple[float, float]:
    """(max - min, mean) of a periodic scalar or a degree-0 argument lift."""
    if isinstance(a, ArgumentLift):
        if a.degree != 0:
            raise NonPeriodic(f"lift of degree {a.degree} is not a periodic function")
        arr = a.samples
    else:
        arr = np.asarray(a, dtype=float)
    return float(np.max(arr) - np.min(arr)), float(np.mean(arr))


def image_length(e: UnitLoop) -> float:
    """Arc length of the image of a degree-0 unit loop on the circle."""
    lift = argument_lift(e)
    if lift.degree != 0:
        raise NonZeroDegree("image length needs a degree-0 loop")
    var, _ = variation_average(lift.samples)
    return min(TWO_PI, var)


def image_gap(e: UnitLoop) -> tuple[float, complex | None]:
    """(gap length, unit vector at the gap midpoint) of the uncovered arc.

    Returns (0.0, None) when the loop covers the whole circle.
    """
    lift = argument_lift(e)
    if lift.degree != 0:
        raise NonZeroDegree("image gap needs a degree-0 loop")
    lo = float(np.min(lift.samples))
    hi = float(np.max(lift.samples))
    if hi - lo >= TWO_PI:
        return 0.0, None
    # uncovered interval (hi, lo + 2*pi); its midpoint is opposite (lo+hi)/2
    return TWO_PI - (hi - lo), complex(-np.exp(0.5j * (lo + hi)))


# ---------------------------------------------------------------------------
# transformations
# ---------------------------------------------------------------------------

def rotate(c: PeriodicCurve, phi: complex) -> PeriodicCurve:
    """Rotate by a unit complex number phi."""
    phi = complex(phi)
    if abs(abs(phi) - 1.0) >= tol.UNIT_PARAM * tol.scale():
        raise InvariantViolation(f"|phi| = {abs(phi):.12f} is not 1")
    return PeriodicCurve(c.z * phi)


def reverse(c: PeriodicCurve) -> PeriodicCurve:
    """Orientation reversal theta -> -theta on the same grid."""
    return PeriodicCurve(np.roll(c.z[::-1], 1))


def translate(c: PeriodicCurve, w: complex) -> PeriodicCurve:
    return PeriodicCurve(c.z + complex(w))


def reparametrize(c: PeriodicCurve, eps: float) -> PeriodicCurve:
    """Resample along the circle diffeomorphism u -> u + eps*sin(u)."""
    eps = float(eps)
    if abs(eps) >= 1.0:
        raise BadDiffeo(f"|eps| = {abs(eps)} >= 1 is not a diffeomorphism")
    u = parameter_grid(c.n)
    return PeriodicCurve(evaluate_series(c.z, u + eps * np.sin(u)))


def resample(c: PeriodicCurve, n: int) -> PeriodicCurve:
    """Evaluate the trigonometric interpolant on a new power-of-two grid."""
    check_power_of_two(n)
    if n == c.n:
        return c
    return PeriodicCurve(evaluate_series(c.z, parameter_grid(n)))


def arclength_resample(c: PeriodicCurve, newton_steps: int = 30) -> PeriodicCurve:
    """Reparametrize to constant speed on the same grid.

    Inverts the arc-length function s(theta) (evaluated spectrally) with a
    vectorized Newton iteration, then resamples the curve there.
    """
    n = c.n
    mean_speed = float(np.mean(c.speed))
    # periodic part of the arc-length antiderivative
    spectrum = np.fft.fft(c.speed - mean_speed) / n
    wavenumbers = np.fft.fftfreq(n, d=1.0 / n)
    anti = np.zeros_like(spectrum)
    anti[1:] = spectrum[1:] / (1j * wavenumbers[1:])
    anti[n // 2] = 0.0
    wiggle = np.fft.ifft(anti * n)
    wiggle -= wiggle[0]

    def arc(thetas: np.ndarray) -> np.ndarray:
        return mean_speed * thetas + evaluate_series(wiggle, thetas).real

    targets = mean_speed * parameter_grid(n)
    thetas = parameter_grid(n).copy()
    budget = 1e-12 * mean_speed * TWO_PI
    for _ in range(newton_steps):
        miss = arc(thetas) - targets
        if float(np.max(np.abs(miss))) < budget:
            break
        speeds = np.abs(evaluate_series(c.velocity, thetas))
        thetas -= miss / speeds
    return PeriodicCurve(evaluate_series(c.z, thetas))
