"""Rapidly decreasing sequences and loop homotopies in coefficient space.

A based loop function (real, periodic, vanishing at theta=0) is encoded by
its positive-frequency Fourier coefficients b_1, b_2, ... (complex).  Entries
are 1-indexed in the formulas below; arrays store b_k at index k-1.

The homotopies here are the coefficient-space moves used by the retraction:
norm interpolation, an interleave that clears every even entry, and a
stereographic chord that slides the resulting sphere point to a fixed target.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import tolerances as tol
from .errors import (
    AtPole,
    InvariantViolation,
    NotBased,
    OutOfRange,
    TailTooLarge,
    ZeroSequence,
)


@dataclass(frozen=True)
class RapidSequence:
    """Finitely supported stand-in for a rapidly decreasing complex sequence."""

    entries: np.ndarray

    def __post_init__(self):
        entries = np.ascontiguousarray(np.asarray(self.entries), dtype=complex)
        entries.setflags(write=False)
        object.__setattr__(self, "entries", entries)

    def __len__(self) -> int:
        return len(self.entries)

    def l2(self) -> float:
        return float(np.linalg.norm(self.entries))

    def seminorm(self, k: int) -> float:
        """sup over n of |b_n| * n^k (the decay seminorm of order k)."""
        if len(self.entries) == 0:
            return 0.0
        n = np.arange(1, len(self.entries) + 1, dtype=float)
        return float(np.max(np.abs(self.entries) * n**k))

    def padded(self, m: int) -> np.ndarray:
        """Entries zero-extended to length at least m (writable copy)."""
        out = np.zeros(max(m, len(self.entries)), dtype=complex)
        out[: len(self.entries)] = self.entries
        return out


class BasedLoopFunction:
    """Real periodic function on the uniform grid with f(0) = 0."""

    def __init__(self, samples):
        f = np.asarray(samples, dtype=float).copy()
        if abs(f[0]) >= tol.BASED_VALUE * tol.scale():
            raise NotBased(f"f(0) = {f[0]:.3e} is not zero")
        f.setflags(write=False)
        self.samples = f

    @property
    def n(self) -> int:
        return len(self.samples)


def loop_to_sequence(f, modes: int = 64) -> RapidSequence:
    """Positive-frequency coefficients b_1..b_modes of a based loop function.

    Spectral content beyond the kept modes must be negligible relative to the
    total; otherwise truncation would silently change the function.
    """
    samples = f.samples if isinstance(f, BasedLoopFunction) else np.asarray(f, dtype=float)
    n = len(samples)
    if modes < 1 or modes > n // 2 - 1:
        raise InvariantViolation(f"modes = {modes} outside 1..{n // 2 - 1} for {n} samples")
    spectrum = np.fft.rfft(samples) / n
    tail = spectrum[modes + 1 :]
    total = float(np.sum(np.abs(spectrum[1:]) ** 2))
    tail_energy = float(np.sum(np.abs(tail) ** 2))
    if total > 0.0 and tail_energy >= tol.TAIL_REL * total * tol.scale():
        raise TailTooLarge(
            f"modes above {modes} hold {tail_energy:.3e} of {total:.3e} spectral energy"
        )
    return RapidSequence(spectrum[1 : modes + 1])


def sequence_to_loop(b: RapidSequence, n_samples: int) -> BasedLoopFunction:
    """Synthesize the based loop function with coefficients b on a grid.

    The constant term is pinned by f(0) = 0: a_0 = -2 * Re(sum b_k).
    """
    m = len(b.entries)
    if m > n_samples // 2 - 1:
        raise InvariantViolation(f"{m} coefficients exceed capacity of {n_samples} samples")
    spectrum = np.zeros(n_samples // 2 + 1, dtype=complex)
    spectrum[1 : m + 1] = b.entries
    spectrum[0] = -2.0 * float(np.sum(b.entries.real))
    samples = np.fft.irfft(spectrum * n_samples)
    samples[0] = 0.0  # exact by construction; clear the last rounding bit
    return BasedLoopFunction(samples)


# ---------------------------------------------------------------------------
# homotopy pieces
# ---------------------------------------------------------------------------

def smooth_step(x: float) -> float:
    """C-infinity step: 0 for x <= 0, 1 for x >= 1, strictly monotone between."""
    x = float(x)
    if x <= 0.0:
        return 0.0
    if x >= 1.0:
        return 1.0
    a = np.exp(-1.0 / x)
    b = np.exp(-1.0 / (1.0 - x))
    return float(a / (a + b))


def _check_time(t: float, upper: float) -> float:
    t = float(t)
    if not 0.0 <= t <= upper:
        raise OutOfRange(f"time {t} outside [0, {upper}]")
    return t


def shuffle_homotopy(b: RapidSequence, t: float) -> RapidSequence:
    """Slide all coefficients into odd positions over t in [0, 1/2].

    At t = 0 this is the identity.  For t in (0, 1/2] the stage number is
    n = floor(1/t) >= 2: entries below position n are already parked and do
    not move, while entry j >= n rotates within the plane spanned by positions
    n + 2(j - n) and n + 2(j - n) + 1.  Each stage is a linear isometry of
    l2, and by t = 1/2 the entries occupy positions 1, 3, 5, ... in order.
    """
    t = _check_time(t, 0.5)
    m = len(b.entries)
    if t == 0.0 or m == 0 or t * (m + 1) <= 1.0:
        # stages above m freeze every entry, so small times are the identity
        return b
    stage = int(np.floor(1.0 / t))
    if stage > m:  # fp boundary of the guard above
        return b
    step = smooth_step(stage * ((stage + 1) * t - 1.0))
    # exact endpoint values; np.cos(pi/2) is only approximately zero
    if step == 0.0:
        cos_a, sin_a = 1.0, 0.0
    elif step == 1.0:
        cos_a, sin_a = 0.0, 1.0
    else:
        angle = step * (np.pi / 2.0)
        cos_a, sin_a = float(np.cos(angle)), float(np.sin(angle))
    js = np.arange(stage, m + 1)
    source = stage + 2 * (js - stage)  # resting position of entry j this stage
    out = np.zeros(int(source[-1]) + 1, dtype=complex)
    out[: stage - 1] = b.entries[: stage - 1]
    moving = b.entries[stage - 1 :]
    out[source - 1] = moving * cos_a
    out[source] = moving * sin_a
    return RapidSequence(out)


def sphere_normalize(b: RapidSequence, t: float, target_norm: float) -> RapidSequence:
    """Scale so the l2 norm interpolates linearly to target_norm at t = 1."""
    t = _check_time(t, 1.0)
    norm = b.l2()
    if norm < tol.ZERO_SEQUENCE * tol.scale():
        raise ZeroSequence(f"cannot normalize a sequence of norm {norm:.3e}")
    r = (1.0 - t) * norm + t * float(target_norm)
    return RapidSequence(b.entries * (r / norm))


# The stereographic chart is taken from the "north pole" q: the real unit
# vector at position 2.  Sequences supported on odd positions lie on the
# equator of that chart and are fixed by it.
_POLE_INDEX = 1  # 0-indexed slot of position 2


def _chart(b: np.ndarray) -> np.ndarray:
    pole_coord = b[_POLE_INDEX].real
    x = b.copy()
    x[_POLE_INDEX] -= pole_coord
    return x / (1.0 - pole_coord)


def _chart_inverse(x: np.ndarray) -> np.ndarray:
    rho = float(np.sum(np.abs(x) ** 2))
    out = 2.0 * x
    out[_POLE_INDEX] += rho - 1.0
    return out / (rho + 1.0)


def stereographic_contract(b: RapidSequence, t: float) -> RapidSequence:
    """Move a unit sequence with vanishing even part to -i*e_1 along a chord.

    The chord runs in the stereographic chart from the pole at position 2;
    points off that pole map to the chart, travel straight to the image of
    the target, and return through the inverse chart, staying on the unit
    sphere throughout.  Odd-supported sequences stay in the equator, so the
    path keeps distance at least sqrt(2) from the pole.
    """
    t = _check_time(t, 1.0)
    entries = b.padded(2)
    norm = float(np.linalg.norm(entries))
    if abs(norm - 1.0) >= tol.SPHERE_NORM * tol.scale():
        raise InvariantViolation(f"norm {norm:.12f} is not 1")
    pole = np.zeros_like(entries)
    pole[_POLE_INDEX] = 1.0
    if float(np.linalg.norm(entries - pole)) < tol.POLE_DISTANCE * tol.scale():
        raise AtPole("input coincides with the chart pole")
    evens = entries[_POLE_INDEX::2]
    worst_even = float(np.max(np.abs(evens))) if len(evens) else 0.0
    if worst_even >= tol.SPHERE_NORM * tol.scale():
        raise InvariantViolation(f"even-position entry of size {worst_even:.3e} present")
    if t == 0.0:
        return RapidSequence(entries)
    target = np.zeros_like(entries)
    target[0] = -1j
    if t == 1.0:
        return RapidSequence(target)
    x = _chart(entries)
    chord = (1.0 - t) * x + t * target  # chart fixes the equatorial target
    return RapidSequence(_chart_inverse(chord))


def contract_based_loop(f: BasedLoopFunction, t: float, modes: int = 64) -> BasedLoopFunction:
    """Contract a based loop function to sin(theta) through four moves.

    Quarters of t in [0, 1]: scale the coefficient norm to 1/2; shuffle the
    coefficients into odd positions; ride the stereographic chord (at unit
    scale) to the coefficients of sin; hold.  The l2 norm along the path never
    drops below min(original, 1/2), and sin itself never moves.
    """
    t = _check_time(t, 1.0)
    n = f.n
    capacity = (n // 2 - 1) // 2  # odd positions up to 2*modes must fit
    m = min(modes, capacity)
    b = loop_to_sequence(f, m)
    if b.l2() < tol.ZERO_LOOP * tol.scale():
        raise ZeroSequence("loop function has no spectral content to contract")
    half = 0.5
    if t <= 0.25:
        out = sphere_normalize(b, 4.0 * t, half)
    elif t <= 0.5:
        out = shuffle_homotopy(sphere_normalize(b, 1.0, half), 2.0 * (t - 0.25))
    elif t <= 0.75:
        parked = shuffle_homotopy(sphere_normalize(b, 1.0, half), 0.5)
        unit = RapidSequence(parked.entries / half)
        moved = stereographic_contract(unit, 4.0 * (t - 0.5))
        out = RapidSequence(moved.entries * half)
    else:
        target = np.zeros(1, dtype=complex)
        target[0] = -0.5j
        out = RapidSequence(target)
    return sequence_to_loop(out, n)
