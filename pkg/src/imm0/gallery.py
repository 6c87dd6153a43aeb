"""Ready-made degree-0 immersed curves for demos and corpus tests."""

from __future__ import annotations

import numpy as np

from .curves import PeriodicCurve, UnitLoop, integrate_velocity, parameter_grid
from .retraction import canonical_speed


def gerono_figure_eight(n: int = 1024) -> PeriodicCurve:
    """Figure eight (sin t, sin(2t)/2): the simplest degree-0 immersion."""
    theta = parameter_grid(n)
    return PeriodicCurve(np.sin(theta) + 0.5j * np.sin(2.0 * theta))


def random_immersion(
    seed: int,
    n: int = 1024,
    modes: int = 8,
    var_target: float | None = None,
) -> PeriodicCurve:
    """Random degree-0 immersion with canonical speed over a random tangent loop.

    The tangent angle is a random low-frequency trig polynomial scaled to a
    prescribed variation; targets above pi + 0.4 keep the hull condition
    comfortably satisfied (targets above 2*pi produce loops that cover the
    whole circle while still having degree zero).
    """
    rng = np.random.default_rng(seed)
    theta = parameter_grid(n)
    angle = np.zeros(n)
    for k in range(1, modes + 1):
        re, im = rng.standard_normal(2) / k
        angle += re * np.cos(k * theta) + im * np.sin(k * theta)
    var = float(np.max(angle) - np.min(angle))
    if var_target is None:
        var_target = float(rng.uniform(np.pi + 0.4, 2.0 * np.pi + 1.5))
    angle *= var_target / var
    angle += rng.uniform(0.0, 2.0 * np.pi)
    e = UnitLoop(np.exp(1j * angle))
    return integrate_velocity(canonical_speed(e), e)
