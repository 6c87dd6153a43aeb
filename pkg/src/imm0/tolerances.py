"""Numeric tolerance policy.

All comparison thresholds funnel through this module so that the
``IMM0_TOL_SCALE`` environment variable (default 1) can loosen or tighten the
whole package at once.  Construction constants (the bump floor) do not scale.
"""

from __future__ import annotations

import os

# relative immersion floor: min speed vs mean speed
IMMERSION_REL = 1e-8
# relative closure budget: |integral of v*e| vs curve length
CLOSURE_REL = 1e-8
# winding sums must be this close to an integer
DEGREE_RESIDUAL = 1e-6
# |e| - 1 budget for unit loops
UNIT_MODULUS = 1e-12
# exp(i a) must reproduce the loop this well
LIFT_RECONSTRUCTION = 1e-10
# |f(0)| budget for based functions
BASED_VALUE = 1e-10
# relative spectral tail energy beyond the truncation order
TAIL_REL = 1e-10
# radial normalization refuses sequences below this norm
ZERO_SEQUENCE = 1e-14
# the loop contraction refuses based functions below this norm
ZERO_LOOP = 1e-10
# sphere membership budget for the chart contraction
SPHERE_NORM = 1e-9
# minimum distance from the chart pole
POLE_DISTANCE = 1e-9
# image length must exceed pi by this margin for the speed sections
HULL_MARGIN = 1e-6
# gradient stopping tolerance of the section Newton iteration
NEWTON_GRAD = 1e-12
# variation floors for the affine rescaling
VAR_MIN = 1e-8
# |phi| - 1 budget for family parameters
UNIT_PARAM = 1e-9

# sup distance allowed between a path endpoint and its canonical curve
ENDPOINT = 1e-6

# construction constant, not a tolerance: bump tails are floored here so the
# triangle section speed stays strictly positive
BUMP_FLOOR = 1e-6


def scale() -> float:
    """Global tolerance multiplier from IMM0_TOL_SCALE (read per call)."""
    raw = os.environ.get("IMM0_TOL_SCALE", "")
    if not raw:
        return 1.0
    try:
        value = float(raw)
    except ValueError:
        return 1.0
    return value if value > 0.0 else 1.0
