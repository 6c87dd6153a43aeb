"""Matplotlib figures for analysis reports and retraction paths.

matplotlib is imported lazily with the Agg backend so that library use never
drags a GUI toolkit in; everything here writes PNG files.
"""

from __future__ import annotations

import numpy as np

from .curves import (
    PeriodicCurve,
    UnitLoop,
    argument_lift,
    average_argument,
    image_gap,
    rotation_degree,
)
from .retraction import HomotopyPath, STAGE_FIBER, STAGE_LOOP, STAGE_TRANSLATE


def _plt():
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    return plt


_STAGE_COLORS = {
    STAGE_TRANSLATE: "#d9e7f5",
    STAGE_FIBER: "#dff0dd",
    STAGE_LOOP: "#f6e3d3",
}


def analysis_figure(c: PeriodicCurve, out_path: str) -> None:
    """Two panels: the curve itself and its tangent image on the unit circle."""
    plt = _plt()
    fig, (ax_curve, ax_circle) = plt.subplots(1, 2, figsize=(10, 5))

    ax_curve.plot(c.z.real, c.z.imag, color="#1f4e79", lw=1.2)
    ax_curve.plot([c.z[0].real], [c.z[0].imag], "o", color="#c0392b", ms=5)
    ax_curve.set_aspect("equal")
    ax_curve.set_title("curve")

    circle = np.exp(1j * np.linspace(0.0, 2.0 * np.pi, 361))
    ax_circle.plot(circle.real, circle.imag, color="#cccccc", lw=0.8)
    ax_circle.plot(c.tangent.real, c.tangent.imag, color="#1f4e79", lw=2.0)
    degree = rotation_degree(c)
    if degree == 0:
        loop = UnitLoop(c.tangent)
        gap, center = image_gap(loop)
        if center is not None:
            ax_circle.annotate(
                "",
                xy=(center.real, center.imag),
                xytext=(0.0, 0.0),
                arrowprops={"arrowstyle": "->", "color": "#c0392b"},
            )
        alpha = average_argument(c)
        ax_circle.annotate(
            "",
            xy=(alpha.real, alpha.imag),
            xytext=(0.0, 0.0),
            arrowprops={"arrowstyle": "->", "color": "#27ae60"},
        )
        lift = argument_lift(loop)
        span = float(np.max(lift.samples) - np.min(lift.samples))
        ax_circle.set_title(f"tangent image (degree 0, arc {min(span, 2 * np.pi):.3f}, gap {gap:.3f})")
    else:
        ax_circle.set_title(f"tangent image (degree {degree})")
    ax_circle.set_aspect("equal")
    ax_circle.set_xlim(-1.3, 1.3)
    ax_circle.set_ylim(-1.3, 1.3)

    fig.tight_layout()
    fig.savefig(out_path, dpi=110)
    plt.close(fig)


def overlay_figure(path: HomotopyPath, out_path: str, max_frames: int = 12) -> None:
    """A handful of frames drawn together, colored from start to end time."""
    plt = _plt()
    fig, ax = plt.subplots(figsize=(6.5, 6.5))
    count = len(path.frames)
    picks = sorted(set(np.linspace(0, count - 1, max_frames).astype(int)))
    cmap = plt.get_cmap("viridis")
    for i in picks:
        frame = path.frames[i]
        z = np.concatenate([frame.curve.z, frame.curve.z[:1]])
        ax.plot(z.real, z.imag, color=cmap(frame.t), lw=1.1, alpha=0.85)
    ax.set_aspect("equal")
    ax.set_title("retraction path")
    sm = plt.cm.ScalarMappable(cmap=cmap, norm=plt.Normalize(0.0, 1.0))
    fig.colorbar(sm, ax=ax, label="t", shrink=0.8)
    fig.tight_layout()
    fig.savefig(out_path, dpi=110)
    plt.close(fig)


def diagnostics_figure(path: HomotopyPath, out_path: str) -> None:
    """Minimum speed and closure residual against time, stages shaded."""
    plt = _plt()
    fig, (ax_speed, ax_close) = plt.subplots(2, 1, figsize=(7, 6), sharex=True)
    times = [f.t for f in path.frames]
    for ax in (ax_speed, ax_close):
        start = 0.0
        current = path.frames[0].stage
        for f in path.frames[1:]:
            if f.stage != current:
                ax.axvspan(start, f.t, color=_STAGE_COLORS[current], lw=0)
                start, current = f.t, f.stage
        ax.axvspan(start, 1.0, color=_STAGE_COLORS[current], lw=0)
    ax_speed.plot(times, [f.min_speed for f in path.frames], color="#1f4e79", lw=1.4)
    ax_speed.set_ylabel("min speed")
    floor = 1e-17
    ax_close.semilogy(
        times,
        [max(f.closure_residual, floor) for f in path.frames],
        color="#7d3c98",
        lw=1.4,
    )
    ax_close.set_ylabel("closure residual")
    ax_close.set_xlabel("t")
    handles = [
        plt.Rectangle((0, 0), 1, 1, color=color) for color in _STAGE_COLORS.values()
    ]
    ax_speed.legend(handles, list(_STAGE_COLORS), loc="upper right", fontsize=8)
    fig.tight_layout()
    fig.savefig(out_path, dpi=110)
    plt.close(fig)
