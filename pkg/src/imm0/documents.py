"""JSON documents for curves and retraction paths.

Curve documents carry either raw grid samples or a window of Fourier
coefficients; path documents carry every frame of a retraction run.  Floats
are serialized with Python's shortest round-trip repr, so dump followed by
load reproduces the doubles bit for bit.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from . import tolerances as tol
from .curves import (
    PeriodicCurve,
    evaluate_series,
    parameter_grid,
    rotation_degree,
)
from .errors import Imm0Error, InvariantViolation, ParseError, Undersampled
from .retraction import (
    STAGE_FIBER,
    STAGE_LOOP,
    STAGE_TRANSLATE,
    HomotopyPath,
    canonical_curve,
)

_STAGE_ORDER = {STAGE_TRANSLATE: 0, STAGE_FIBER: 1, STAGE_LOOP: 2}


# ---------------------------------------------------------------------------
# curve documents
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CurveDocument:
    """Curve description: exactly one of samples or Fourier coefficients.

    Fourier form: z(theta) = sum_m coefficients[m] * exp(i*(n_min + m)*theta).
    """

    name: str | None = None
    samples: np.ndarray | None = None
    coefficients: np.ndarray | None = None
    n_min: int = 0

    def __post_init__(self):
        if (self.samples is None) == (self.coefficients is None):
            raise InvariantViolation("exactly one of samples and coefficients must be set")

    def to_curve(self, n: int | None = None) -> PeriodicCurve:
        """Realize the document on a grid of n points (default 1024 for Fourier form)."""
        if self.coefficients is not None:
            grid = 1024 if n is None else n
            freqs = self.n_min + np.arange(len(self.coefficients))
            if np.max(np.abs(freqs)) >= grid // 2:
                raise Undersampled(
                    f"frequencies up to {int(np.max(np.abs(freqs)))} need more than {grid} samples"
                )
            theta = parameter_grid(grid)
            z = np.exp(1j * np.outer(theta, freqs)) @ self.coefficients
            return PeriodicCurve(z)
        z = self.samples
        count = len(z)
        if count < 8 or (count & (count - 1)) != 0:
            raise Undersampled(
                f"sample count {count} is not a power of two >= 8; "
                "resample the source or supply Fourier coefficients"
            )
        if n is not None and n != count:
            z = evaluate_series(z, parameter_grid(n))
        elif count < 64:
            raise Undersampled(
                f"only {count} samples; pass a resample target of at least 64"
            )
        return PeriodicCurve(z)


def _complex_pairs(obj, where: str) -> np.ndarray:
    try:
        arr = np.asarray(obj, dtype=float)
    except (TypeError, ValueError) as err:
        raise ParseError(f"{where}: expected an array of [x, y] pairs") from err
    if arr.ndim != 2 or arr.shape[1] != 2 or arr.shape[0] == 0:
        raise ParseError(f"{where}: expected a nonempty array of [x, y] pairs")
    if not np.all(np.isfinite(arr)):
        raise ParseError(f"{where}: values must be finite")
    return arr[:, 0] + 1j * arr[:, 1]


def _load_json(path: str):
    try:
        with open(path) as handle:
            return json.load(handle)
    except json.JSONDecodeError as err:
        raise ParseError(
            f"{path}: invalid JSON at line {err.lineno} column {err.colno}: {err.msg}"
        ) from err


def load_curve_document(path: str) -> CurveDocument:
    raw = _load_json(path)
    if not isinstance(raw, dict):
        raise ParseError(f"{path}: top level must be an object")
    unknown = set(raw) - {"name", "samples", "fourier"}
    if unknown:
        raise ParseError(f"{path}: unknown keys {sorted(unknown)}")
    has_samples = "samples" in raw
    has_fourier = "fourier" in raw
    if has_samples == has_fourier:
        raise ParseError(f"{path}: need exactly one of 'samples' and 'fourier'")
    name = raw.get("name")
    if name is not None and not isinstance(name, str):
        raise ParseError(f"{path}: 'name' must be a string")
    if has_samples:
        return CurveDocument(name=name, samples=_complex_pairs(raw["samples"], f"{path}: samples"))
    fourier = raw["fourier"]
    if not isinstance(fourier, dict) or set(fourier) - {"n_min", "coefficients"}:
        raise ParseError(f"{path}: 'fourier' must hold only n_min and coefficients")
    n_min = fourier.get("n_min", 0)
    if not isinstance(n_min, int):
        raise ParseError(f"{path}: fourier n_min must be an integer")
    coeff = _complex_pairs(fourier.get("coefficients"), f"{path}: fourier coefficients")
    return CurveDocument(name=name, coefficients=coeff, n_min=n_min)


def _pairs(z: np.ndarray) -> list:
    return [[float(w.real), float(w.imag)] for w in z]


def document_from_curve(c: PeriodicCurve, name: str | None = None) -> dict:
    doc: dict = {}
    if name is not None:
        doc["name"] = name
    doc["samples"] = _pairs(c.z)
    return doc


def fourier_document(coefficients, n_min: int = 0, name: str | None = None) -> dict:
    doc: dict = {}
    if name is not None:
        doc["name"] = name
    doc["fourier"] = {"n_min": int(n_min), "coefficients": _pairs(np.asarray(coefficients))}
    return doc


def dump_document(doc: dict, path: str) -> None:
    with open(path, "w") as handle:
        json.dump(doc, handle, indent=2)
        handle.write("\n")


# ---------------------------------------------------------------------------
# path documents
# ---------------------------------------------------------------------------

def path_to_document(path: HomotopyPath) -> dict:
    return {
        "phi_final": [float(path.phi_final.real), float(path.phi_final.imag)],
        "frames": [
            {
                "t": float(f.t),
                "stage": f.stage,
                "samples": _pairs(f.curve.z),
                "min_speed": float(f.min_speed),
                "closure_residual": float(f.closure_residual),
            }
            for f in path.frames
        ],
    }


def load_path_document(path: str) -> dict:
    raw = _load_json(path)
    if not isinstance(raw, dict) or set(raw) != {"phi_final", "frames"}:
        raise ParseError(f"{path}: need exactly the keys 'phi_final' and 'frames'")
    phi = raw["phi_final"]
    if (
        not isinstance(phi, list)
        or len(phi) != 2
        or not all(isinstance(x, (int, float)) for x in phi)
    ):
        raise ParseError(f"{path}: phi_final must be an [re, im] pair")
    frames = raw["frames"]
    if not isinstance(frames, list) or len(frames) < 2:
        raise ParseError(f"{path}: frames must list at least two entries")
    needed = {"t", "stage", "samples", "min_speed", "closure_residual"}
    for i, frame in enumerate(frames):
        if not isinstance(frame, dict) or set(frame) != needed:
            raise ParseError(f"{path}: frame {i} must hold exactly {sorted(needed)}")
        if not isinstance(frame["stage"], str):
            raise ParseError(f"{path}: frame {i} stage must be a string")
        for key in ("t", "min_speed", "closure_residual"):
            if not isinstance(frame[key], (int, float)):
                raise ParseError(f"{path}: frame {i} field {key} must be a number")
        _complex_pairs(frame["samples"], f"{path}: frame {i} samples")
    return raw


def validate_path_document(doc: dict) -> dict:
    """Check a loaded path document frame by frame; returns worst margins.

    Raises the violated invariant's error (with the frame index in the
    message) if the document does not describe a sound retraction path.
    """
    frames = doc["frames"]
    phi = complex(doc["phi_final"][0], doc["phi_final"][1])
    times = [float(f["t"]) for f in frames]
    if abs(times[0]) > 1e-12 or abs(times[-1] - 1.0) > 1e-12:
        raise InvariantViolation(f"path must run from t=0 to t=1, got [{times[0]}, {times[-1]}]")
    if not all(b > a for a, b in zip(times, times[1:])):
        raise InvariantViolation("frame times must increase strictly")
    stages = [f["stage"] for f in frames]
    for i, stage in enumerate(stages):
        if stage not in _STAGE_ORDER:
            raise InvariantViolation(f"frame {i}: unknown stage {stage!r}")
    if any(_STAGE_ORDER[b] < _STAGE_ORDER[a] for a, b in zip(stages, stages[1:])):
        raise InvariantViolation("stages must appear in retraction order")

    worst_speed_rel = np.inf
    worst_closure_rel = 0.0
    scale = tol.scale()
    last_curve = None
    for i, frame in enumerate(frames):
        z = _complex_pairs(frame["samples"], f"frame {i}")
        try:
            curve = PeriodicCurve(z)
            degree = rotation_degree(curve)
        except Imm0Error as err:
            raise type(err)(f"frame {i}: {err}") from err
        if degree != 0:
            raise InvariantViolation(f"frame {i}: rotation degree {degree} is not 0")
        speed_rel = float(np.min(curve.speed) / np.mean(curve.speed))
        residual = 2.0 * np.pi * abs(complex(np.mean(curve.velocity)))
        closure_rel = residual / curve.length()
        if closure_rel >= tol.CLOSURE_REL * scale:
            raise InvariantViolation(f"frame {i}: closure residual {residual:.3e} too large")
        recorded = float(frame["min_speed"])
        if abs(recorded - float(np.min(curve.speed))) > 1e-6 * (1.0 + recorded):
            raise InvariantViolation(f"frame {i}: recorded min speed {recorded} is stale")
        worst_speed_rel = min(worst_speed_rel, speed_rel)
        worst_closure_rel = max(worst_closure_rel, closure_rel)
        last_curve = curve

    target = canonical_curve(phi, last_curve.n)
    endpoint_error = float(np.max(np.abs(last_curve.z - target.z)))
    if endpoint_error >= tol.ENDPOINT * scale:
        raise InvariantViolation(
            f"endpoint misses the canonical curve for phi_final by {endpoint_error:.3e}"
        )
    return {
        "frames": len(frames),
        "min_speed_rel": worst_speed_rel,
        "max_closure_rel": worst_closure_rel,
        "endpoint_error": endpoint_error,
        "phi_final": [phi.real, phi.imag],
    }
