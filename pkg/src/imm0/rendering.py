"""Deterministic file rendering of retraction paths.

Every byte written here is a pure function of the path data: floats are
formatted with fixed precision (SVG) or shortest round-trip repr (JSON, CSV),
and no timestamps or environment details enter the output.
"""

from __future__ import annotations

import json
import os

import numpy as np

from .documents import path_to_document
from .retraction import HomotopyPath


def shared_view_box(path: HomotopyPath, margin: float = 0.05) -> tuple[float, float, float, float]:
    """(min_x, min_y, width, height) over all frames in SVG coordinates (y down)."""
    xs = np.concatenate([f.curve.z.real for f in path.frames])
    ys = np.concatenate([-f.curve.z.imag for f in path.frames])
    lo_x, hi_x = float(np.min(xs)), float(np.max(xs))
    lo_y, hi_y = float(np.min(ys)), float(np.max(ys))
    pad = margin * max(hi_x - lo_x, hi_y - lo_y, 1e-9)
    return lo_x - pad, lo_y - pad, (hi_x - lo_x) + 2 * pad, (hi_y - lo_y) + 2 * pad


def frame_svg(z: np.ndarray, view_box: tuple[float, float, float, float]) -> str:
    """Standalone SVG of one closed polyline; y axis flipped to screen sense."""
    stroke = 0.004 * max(view_box[2], view_box[3])
    pts = np.concatenate([z, z[:1]])  # close the polyline
    coords = " ".join(f"{w.real:.6f},{-w.imag:.6f}" for w in pts)
    vb = " ".join(f"{v:.6f}" for v in view_box)
    return (
        '<svg xmlns="http://www.w3.org/2000/svg" '
        f'viewBox="{vb}" width="640" height="640">\n'
        f'  <polyline points="{coords}" fill="none" '
        f'stroke="black" stroke-width="{stroke:.6f}" '
        'stroke-linejoin="round" stroke-linecap="round"/>\n'
        "</svg>\n"
    )


def frame_csv(z: np.ndarray) -> str:
    lines = ["x,y"]
    lines.extend(f"{float(w.real)!r},{float(w.imag)!r}" for w in z)
    return "\n".join(lines) + "\n"


def diagnostics_csv(path: HomotopyPath) -> str:
    lines = ["frame,t,stage,min_speed,closure_residual"]
    lines.extend(
        f"{i},{f.t!r},{f.stage},{f.min_speed!r},{f.closure_residual!r}"
        for i, f in enumerate(path.frames)
    )
    return "\n".join(lines) + "\n"


def render_path(path: HomotopyPath, out_dir: str, fmt: str = "svg") -> list[str]:
    """Write one file per frame plus index.json, diagnostics.csv, and path.json.

    Returns the written file names (relative to out_dir, in index order).
    """
    if fmt not in ("svg", "json", "csv"):
        raise ValueError(f"format must be svg, json, or csv, got {fmt!r}")
    os.makedirs(out_dir, exist_ok=True)
    view_box = shared_view_box(path)
    written = []
    doc = path_to_document(path)
    for i, frame in enumerate(path.frames):
        name = f"frame_{i:04d}.{fmt}"
        if fmt == "svg":
            content = frame_svg(frame.curve.z, view_box)
        elif fmt == "csv":
            content = frame_csv(frame.curve.z)
        else:
            content = json.dumps(doc["frames"][i], indent=2) + "\n"
        with open(os.path.join(out_dir, name), "w") as handle:
            handle.write(content)
        written.append(name)
    with open(os.path.join(out_dir, "diagnostics.csv"), "w") as handle:
        handle.write(diagnostics_csv(path))
    written.append("diagnostics.csv")
    with open(os.path.join(out_dir, "path.json"), "w") as handle:
        json.dump(doc, handle, indent=2)
        handle.write("\n")
    written.append("path.json")
    index = {
        "frames": len(path.frames),
        "format": fmt,
        "files": [f"frame_{i:04d}.{fmt}" for i in range(len(path.frames))],
        "view_box": list(view_box),
        "phi_final": doc["phi_final"],
        "stages": [f.stage for f in path.frames],
    }
    with open(os.path.join(out_dir, "index.json"), "w") as handle:
        json.dump(index, handle, indent=2)
        handle.write("\n")
    written.append("index.json")
    return written
