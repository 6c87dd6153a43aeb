"""Deformation retraction of degree-0 immersed loops onto a canonical family.

The retraction runs in three stages on a curve: translate the basepoint to
the origin, deform the speed to the canonical section over the fixed tangent
loop, then contract the tangent loop itself while re-fitting the canonical
speed at every time.  The canonical family is parametrized by a unit complex
number phi, and the whole construction commutes with rotations.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

import numpy as np

from . import tolerances as tol
from .curves import (
    TWO_PI,
    ArgumentLift,
    PeriodicCurve,
    SpeedFunction,
    UnitLoop,
    argument_lift,
    integrate_velocity,
    normalize_basepoint,
    parameter_grid,
    rotation_degree,
    split_velocity,
    variation_average,
)
from .errors import (
    HullDegenerate,
    Imm0Error,
    InvariantViolation,
    NewtonDiverged,
    NonZeroDegree,
    NoPositiveSolution,
    NotClosed,
    OutOfRange,
    VarTooSmall,
)
from .sequences import BasedLoopFunction, contract_based_loop


# ---------------------------------------------------------------------------
# hull condition
# ---------------------------------------------------------------------------

def _require_spanning_image(e: UnitLoop) -> ArgumentLift:
    """Reject degree-0 loops whose image does not span more than a half circle.

    Positive closed speeds exist iff 0 lies in the interior of the convex hull
    of the image; for a degree-0 loop that is exactly an image arc longer than
    pi, and any loop of nonzero degree covers the whole circle.
    """
    lift = argument_lift(e)
    if lift.degree == 0:
        var, _ = variation_average(lift.samples)
        if var <= np.pi + tol.HULL_MARGIN * tol.scale():
            raise HullDegenerate(
                f"image arc of length {var:.6f} is not longer than pi; "
                "no positive closed speed exists over this loop"
            )
    return lift


# ---------------------------------------------------------------------------
# canonical speed section
# ---------------------------------------------------------------------------

def canonical_speed(e: UnitLoop, max_iter: int = 100) -> SpeedFunction:
    """Distinguished positive speed v with mean(v * e) = 0.

    v = exp(-<lam, e>) where lam minimizes the strictly convex functional
    F(lam) = mean(exp(-<lam, e>)); the gradient of F is -mean(e * v), so the
    minimizer closes the velocity v * e.  Solved by a damped Newton iteration
    from lam = 0.
    """
    _require_spanning_image(e)
    u = np.column_stack((e.e.real, e.e.imag))
    lam = np.zeros(2)

    def value_weights(l):
        with np.errstate(over="ignore"):
            w = np.exp(-(u @ l))
        return float(np.mean(w)), w

    value, w = value_weights(lam)
    for _ in range(max_iter):
        grad = -np.mean(u * w[:, None], axis=0)
        gnorm = float(np.linalg.norm(grad))
        # |grad| <= value always (|e| = 1), so the fp noise floor scales with
        # the value too; a relative test keeps the closure ratio uniform
        if gnorm < tol.NEWTON_GRAD * value * tol.scale():
            break
        hess = np.einsum("ji,jk,j->ik", u, u, w) / len(w)
        try:
            direction = np.linalg.solve(hess, -grad)
        except np.linalg.LinAlgError as err:
            raise NewtonDiverged(f"singular Hessian at lam = {lam}") from err
        if gnorm < 1e-6 * value:
            # quadratic basin: expected decrease ~ |g|^2 is below the fp
            # resolution of the value, so a line search cannot certify
            # progress any more; the bare step converges quadratically
            moved = lam + direction
            if np.array_equal(moved, lam):
                break
            lam = moved
            value, w = value_weights(lam)
            continue
        slope = float(grad @ direction)
        step = 1.0
        for _ in range(60):
            trial_value, trial_w = value_weights(lam + step * direction)
            if np.isfinite(trial_value) and trial_value <= value + 1e-4 * step * slope:
                break
            step *= 0.5
        else:
            raise NewtonDiverged("line search stalled")
        lam = lam + step * direction
        value, w = trial_value, trial_w
    else:
        raise NewtonDiverged(f"no convergence in {max_iter} iterations; |grad| = {gnorm:.3e}")
    return SpeedFunction(w)


# ---------------------------------------------------------------------------
# triangle section
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SectionCoefficients:
    """Corner data of a three-bump section: indices, weights, final width."""

    corners: tuple[int, int, int]
    weights: tuple[float, float, float]
    half_width: float
    halvings: int


def _bump_profile(offsets: np.ndarray, half_width: float) -> np.ndarray:
    """Flat-bottomed bump: exp(-1/(1-u^2)) inside |u| < 1, floored away from 0."""
    u = offsets / half_width
    inside = np.abs(u) < 1.0
    out = np.zeros_like(u)
    out[inside] = np.exp(-1.0 / (1.0 - u[inside] ** 2))
    return np.maximum(out, tol.BUMP_FLOOR)


def _corner_triple(e: UnitLoop) -> tuple[int, int, int]:
    # 48 equispaced candidate indices; the largest-area triple is well spread
    n = e.n
    candidates = sorted({int(np.rint(j * n / 48.0)) % n for j in range(48)})
    best, best_area = None, -1.0
    for triple in combinations(candidates, 3):
        a, b, c = (e.e[k] for k in triple)
        area = 0.5 * abs(((b - a) * np.conj(c - a)).imag)
        if area > best_area:
            best, best_area = triple, area
    if best is None or best_area <= 0.0:
        raise HullDegenerate("all image samples are collinear")
    return best


def triangle_section(
    e: UnitLoop, initial_width: float = np.pi / 6, max_halvings: int = 10
) -> tuple[SpeedFunction, SectionCoefficients]:
    """Positive closed speed built from three bumps at well-spread corners.

    Each bump integrates to one over the period; the first two weights solve
    the 2x2 closure system with the third weight pinned to one.  If a weight
    comes out nonpositive the bumps are too wide to see the corner directions,
    so the width is halved and the solve repeated.
    """
    _require_spanning_image(e)
    corners = _corner_triple(e)
    theta = parameter_grid(e.n)
    width = float(initial_width)
    for halving in range(max_halvings + 1):
        bumps = []
        for k in corners:
            offsets = (theta - theta[k] + np.pi) % TWO_PI - np.pi
            raw = _bump_profile(offsets, width)
            bumps.append(raw / (TWO_PI * float(np.mean(raw))))
        moments = [TWO_PI * complex(np.mean(b * e.e)) for b in bumps]
        system = np.array(
            [
                [moments[0].real, moments[1].real],
                [moments[0].imag, moments[1].imag],
            ]
        )
        rhs = -np.array([moments[2].real, moments[2].imag])
        try:
            pair = np.linalg.solve(system, rhs)
        except np.linalg.LinAlgError:
            width *= 0.5
            continue
        if pair[0] > 0.0 and pair[1] > 0.0:
            weights = (float(pair[0]), float(pair[1]), 1.0)
            speed = weights[0] * bumps[0] + weights[1] * bumps[1] + bumps[2]
            return SpeedFunction(speed), SectionCoefficients(corners, weights, width, halving)
        width *= 0.5
    raise NoPositiveSolution(
        f"no positive weights after {max_halvings} width halvings (last width {width:.3e})"
    )


# ---------------------------------------------------------------------------
# fiber deformation
# ---------------------------------------------------------------------------

def fiber_retract(
    v: SpeedFunction, e: UnitLoop, t: float, canonical: SpeedFunction | None = None
) -> SpeedFunction:
    """Linear blend from a closed speed to the canonical one over a fixed loop.

    Closure is linear in the speed, so every intermediate blend closes too;
    positivity is preserved because both ends are positive.
    """
    t = float(t)
    if not 0.0 <= t <= 1.0:
        raise OutOfRange(f"time {t} outside [0, 1]")
    residual = TWO_PI * abs(complex(np.mean(v.samples * e.e)))
    curve_length = TWO_PI * float(np.mean(v.samples))
    if residual >= tol.CLOSURE_REL * curve_length * tol.scale():
        raise NotClosed(f"input speed does not close the loop (residual {residual:.3e})")
    if canonical is None:
        canonical = canonical_speed(e)
    return SpeedFunction((1.0 - t) * v.samples + t * canonical.samples)


# ---------------------------------------------------------------------------
# variation rescaling and the canonical family
# ---------------------------------------------------------------------------

def rescale_variation(a, direction: str) -> np.ndarray:
    """Affine change of variation about the average: Var gains or sheds pi.

    "forward" multiplies deviations by (Var + pi)/Var; "inverse" by
    (Var - pi)/Var and requires Var > pi.  The two maps invert each other.
    """
    if isinstance(a, ArgumentLift):
        var, ave = variation_average(a)
        arr = a.samples
    else:
        arr = np.asarray(a, dtype=float)
        var, ave = variation_average(arr)
    guard = tol.VAR_MIN * tol.scale()
    if direction == "forward":
        if var < guard:
            raise VarTooSmall(f"variation {var:.3e} too small to widen")
        factor = (var + np.pi) / var
    elif direction == "inverse":
        if var <= np.pi + guard:
            raise VarTooSmall(f"variation {var:.6f} does not exceed pi")
        factor = (var - np.pi) / var
    else:
        raise InvariantViolation(f"direction must be 'forward' or 'inverse', got {direction!r}")
    return ave + factor * (arr - ave)


def _unit_parameter(phi: complex) -> complex:
    phi = complex(phi)
    if abs(abs(phi) - 1.0) >= tol.UNIT_PARAM * tol.scale():
        raise InvariantViolation(f"|phi| = {abs(phi):.12f} is not 1")
    return phi


def section_loop(phi: complex, n: int = 1024) -> UnitLoop:
    """Degree-0 loop phi * exp(i sin u); its image arc has length two."""
    phi = _unit_parameter(phi)
    return UnitLoop(phi * np.exp(1j * np.sin(parameter_grid(n))))


def canonical_loop(phi: complex, n: int = 1024) -> UnitLoop:
    """The section loop widened past the hull threshold: image length 2 + pi."""
    phi = _unit_parameter(phi)
    angles = float(np.angle(phi)) + np.sin(parameter_grid(n))
    return UnitLoop(np.exp(1j * rescale_variation(angles, "forward")))


def canonical_curve(phi: complex, n: int = 1024) -> PeriodicCurve:
    """Curve with canonical tangent loop and canonical speed for parameter phi."""
    e = canonical_loop(phi, n)
    return integrate_velocity(canonical_speed(e), e)


# ---------------------------------------------------------------------------
# loop retraction
# ---------------------------------------------------------------------------

def retract_loop(e: UnitLoop, t: float, modes: int = 64) -> UnitLoop:
    """Contract a hull-nondegenerate degree-0 loop onto the canonical family.

    The argument lift is narrowed by pi (making room inside the hull
    constraint), contracted as a based loop function in coefficient space,
    and widened back.  Time t = 0 reproduces the loop up to spectral
    truncation; t = 1 lands exactly on the canonical loop at the parameter
    this loop retracts to.
    """
    t = float(t)
    if not 0.0 <= t <= 1.0:
        raise OutOfRange(f"time {t} outside [0, 1]")
    lift = _require_spanning_image(e)
    if lift.degree != 0:
        raise NonZeroDegree(f"cannot retract a loop of degree {lift.degree}")
    narrowed = rescale_variation(lift, "inverse")
    base = float(narrowed[0])
    f0 = BasedLoopFunction(narrowed - base)
    ft = contract_based_loop(f0, t, modes)
    widened = rescale_variation(base + ft.samples, "forward")
    return UnitLoop(np.exp(1j * widened))


def retraction_parameter(e: UnitLoop) -> complex:
    """Canonical-family parameter a loop retracts to: rotation equivariant."""
    lift = _require_spanning_image(e)
    if lift.degree != 0:
        raise NonZeroDegree(f"cannot retract a loop of degree {lift.degree}")
    narrowed = rescale_variation(lift, "inverse")
    return complex(np.exp(1j * narrowed[0]))


# ---------------------------------------------------------------------------
# full curve retraction
# ---------------------------------------------------------------------------

STAGE_TRANSLATE = "Translate"
STAGE_FIBER = "FiberRetract"
STAGE_LOOP = "LoopContract"

_TRANSLATE_END = 0.1
_FIBER_END = 0.3


@dataclass(frozen=True)
class PathFrame:
    """One snapshot of the retraction: time, stage tag, curve, diagnostics."""

    t: float
    stage: str
    curve: PeriodicCurve
    min_speed: float
    closure_residual: float


@dataclass(frozen=True)
class HomotopyPath:
    """Full retraction path and the parameter its endpoint realizes."""

    frames: tuple[PathFrame, ...]
    phi_final: complex


def _stage_of(t: float) -> str:
    if t <= _TRANSLATE_END:
        return STAGE_TRANSLATE
    if t <= _FIBER_END:
        return STAGE_FIBER
    return STAGE_LOOP


def retract_curve(c: PeriodicCurve, n_frames: int = 100, modes: int = 64) -> HomotopyPath:
    """Retract a degree-0 immersed curve onto the canonical family.

    Frames are sampled at t_i = i/(n_frames - 1).  Stage schedule: translate
    the basepoint to the origin on [0, 0.1]; blend the speed to the canonical
    section on (0.1, 0.3]; contract the tangent loop with the canonical speed
    re-fitted at every time on (0.3, 1].  Frame 0 is the input bit for bit.
    """
    if n_frames < 2:
        raise InvariantViolation(f"need at least 2 frames, got {n_frames}")
    if rotation_degree(c) != 0:
        raise NonZeroDegree(f"cannot retract a curve of degree {rotation_degree(c)}")
    _require_spanning_image(UnitLoop(c.tangent))
    offset = complex(c.z[0])
    v0, e0 = split_velocity(c)
    input_residual = TWO_PI * abs(complex(np.mean(c.velocity)))
    v_canon = canonical_speed(e0)
    phi_final = retraction_parameter(e0)

    frames = []
    for i in range(n_frames):
        t = i / (n_frames - 1)
        stage = _stage_of(t)
        try:
            if stage == STAGE_TRANSLATE:
                curve = PeriodicCurve(c.z - (t / _TRANSLATE_END) * offset)
                residual = input_residual
            elif stage == STAGE_FIBER:
                s = (t - _TRANSLATE_END) / (_FIBER_END - _TRANSLATE_END)
                v = fiber_retract(v0, e0, s, canonical=v_canon)
                residual = TWO_PI * abs(complex(np.mean(v.samples * e0.e)))
                curve = integrate_velocity(v, e0)
            else:
                s = (t - _FIBER_END) / (1.0 - _FIBER_END)
                e = retract_loop(e0, s, modes)
                v = canonical_speed(e)
                residual = TWO_PI * abs(complex(np.mean(v.samples * e.e)))
                curve = integrate_velocity(v, e)
            if rotation_degree(curve) != 0:
                raise NonZeroDegree("frame left the degree-0 stratum")
        except Imm0Error as err:
            raise type(err)(f"stage {stage} at t={t:.6f}: {err}") from err
        frames.append(
            PathFrame(
                t=t,
                stage=stage,
                curve=curve,
                min_speed=float(np.min(curve.speed)),
                closure_residual=residual,
            )
        )
    return HomotopyPath(frames=tuple(frames), phi_final=phi_final)
