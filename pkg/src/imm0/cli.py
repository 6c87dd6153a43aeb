"""Command line interface: analyze, retract, validate, demo."""

from __future__ import annotations

import argparse
import json
import os
import sys

import numpy as np

from .curves import (
    PeriodicCurve,
    UnitLoop,
    arclength_resample,
    average_argument,
    image_gap,
    image_length,
    rotation_degree,
)
from .documents import (
    document_from_curve,
    dump_document,
    fourier_document,
    load_curve_document,
    load_path_document,
    validate_path_document,
)
from .errors import Imm0Error
from .gallery import gerono_figure_eight, random_immersion
from .rendering import render_path
from .retraction import canonical_curve, retract_curve, retraction_parameter


def _load_curve(args) -> PeriodicCurve:
    doc = load_curve_document(args.input)
    curve = doc.to_curve(args.resample)
    if getattr(args, "arclength", False):
        curve = arclength_resample(curve)
    return curve


def _format_unit(w: complex) -> str:
    return f"{w.real:+.9f}{w.imag:+.9f}i (angle {np.angle(w):+.6f})"


def _cmd_analyze(args) -> int:
    curve = _load_curve(args)
    degree = rotation_degree(curve)
    report = {
        "samples": curve.n,
        "length": curve.length(),
        "rotation_degree": degree,
        "min_speed": float(np.min(curve.speed)),
        "mean_speed": float(np.mean(curve.speed)),
        "average_argument": None,
        "image_arc_length": None,
        "image_gap": None,
        "gap_center": None,
        "retraction_parameter": None,
    }
    if degree == 0:
        loop = UnitLoop(curve.tangent)
        alpha = average_argument(curve)
        gap, center = image_gap(loop)
        report["average_argument"] = [alpha.real, alpha.imag]
        report["image_arc_length"] = image_length(loop)
        report["image_gap"] = gap
        report["gap_center"] = None if center is None else [center.real, center.imag]
        phi = retraction_parameter(loop)
        report["retraction_parameter"] = [phi.real, phi.imag]
    if args.json:
        print(json.dumps(report, indent=2))
    else:
        print(f"samples:             {report['samples']}")
        print(f"length:              {report['length']:.9f}")
        print(f"rotation degree:     {degree}")
        print(f"min / mean speed:    {report['min_speed']:.9f} / {report['mean_speed']:.9f}")
        if degree == 0:
            alpha = complex(*report["average_argument"])
            phi = complex(*report["retraction_parameter"])
            print(f"average argument:    {_format_unit(alpha)}")
            print(f"image arc length:    {report['image_arc_length']:.9f}")
            if report["gap_center"] is None:
                print("image gap:           none (the tangent covers the circle)")
            else:
                center = complex(*report["gap_center"])
                print(f"image gap:           {report['image_gap']:.9f} at {_format_unit(center)}")
            print(f"retraction target:   {_format_unit(phi)}")
        else:
            print("degree-0 analysis:   not applicable")
    if args.figure:
        from .figures import analysis_figure

        analysis_figure(curve, args.figure)
        print(f"figure written to {args.figure}", file=sys.stderr)
    return 0


def _cmd_retract(args) -> int:
    curve = _load_curve(args)
    path = retract_curve(curve, n_frames=args.frames, modes=args.modes)
    written = render_path(path, args.out, fmt=args.format)
    target = canonical_curve(path.phi_final, path.frames[-1].curve.n)
    endpoint = float(np.max(np.abs(path.frames[-1].curve.z - target.z)))
    if not args.no_figures:
        from .figures import diagnostics_figure, overlay_figure

        overlay_figure(path, os.path.join(args.out, "overlay.png"))
        diagnostics_figure(path, os.path.join(args.out, "diagnostics.png"))
        written.extend(["overlay.png", "diagnostics.png"])
    print(f"phi_final: {_format_unit(path.phi_final)}")
    print(f"endpoint distance to canonical curve: {endpoint:.3e}")
    print(f"wrote {len(written)} files to {args.out}")
    return 0


def _cmd_validate(args) -> int:
    doc = load_path_document(args.input)
    report = validate_path_document(doc)
    print(f"frames:              {report['frames']}")
    print(f"min speed ratio:     {report['min_speed_rel']:.6f}")
    print(f"max closure ratio:   {report['max_closure_rel']:.3e}")
    print(f"endpoint error:      {report['endpoint_error']:.3e}")
    phi = complex(*report["phi_final"])
    print(f"phi_final:           {_format_unit(phi)}")
    print("ok")
    return 0


def _cmd_demo(args) -> int:
    if args.fourier and args.kind != "figure-eight":
        raise Imm0Error("--fourier is only available for the figure-eight demo")
    if args.kind == "figure-eight":
        if args.fourier:
            coeff = [-0.25, 0.5j, 0.0, -0.5j, 0.25]
            doc = fourier_document(coeff, n_min=-2, name="figure-eight")
        else:
            doc = document_from_curve(gerono_figure_eight(args.n), name="figure-eight")
    elif args.kind == "canonical":
        phi = complex(np.exp(1j * args.angle))
        doc = document_from_curve(canonical_curve(phi, args.n), name="canonical")
    else:
        doc = document_from_curve(
            random_immersion(args.seed, n=args.n), name=f"random-{args.seed}"
        )
    if args.out:
        dump_document(doc, args.out)
        print(f"wrote {args.out}")
    else:
        print(json.dumps(doc, indent=2))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="imm0",
        description="Analyze degree-0 immersed plane curves and retract them "
        "onto the canonical family.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_resample(p):
        p.add_argument(
            "--resample",
            "--samples",
            dest="resample",
            type=int,
            default=None,
            metavar="N",
            help="evaluate the input on an N-point grid (N a power of two)",
        )

    p_analyze = sub.add_parser("analyze", help="report invariants of a curve document")
    p_analyze.add_argument("input", help="curve document (JSON)")
    add_resample(p_analyze)
    p_analyze.add_argument("--json", action="store_true", help="machine readable report")
    p_analyze.add_argument("--figure", metavar="PATH", help="also write a PNG figure")
    p_analyze.set_defaults(func=_cmd_analyze)

    p_retract = sub.add_parser("retract", help="run the retraction and write every frame")
    p_retract.add_argument("input", help="curve document (JSON)")
    p_retract.add_argument("--out", default="retraction", metavar="DIR", help="output directory")
    p_retract.add_argument("--frames", type=int, default=100, metavar="K", help="frame count")
    p_retract.add_argument("--modes", type=int, default=64, metavar="M", help="coefficient window")
    add_resample(p_retract)
    p_retract.add_argument("--arclength", action="store_true", help="constant-speed input first")
    p_retract.add_argument(
        "--format", choices=("svg", "json", "csv"), default="svg", help="frame file format"
    )
    p_retract.add_argument(
        "--no-figures", action="store_true", help="skip the PNG overview figures"
    )
    p_retract.set_defaults(func=_cmd_retract)

    p_validate = sub.add_parser("validate", help="check a stored retraction path")
    p_validate.add_argument("input", help="path document (JSON)")
    p_validate.set_defaults(func=_cmd_validate)

    p_demo = sub.add_parser("demo", help="write a ready-made curve document")
    p_demo.add_argument("kind", choices=("figure-eight", "canonical", "random"))
    p_demo.add_argument("--n", type=int, default=1024, help="sample count")
    p_demo.add_argument("--seed", type=int, default=0, help="random demo seed")
    p_demo.add_argument(
        "--angle", type=float, default=0.7, help="canonical-family angle (canonical demo)"
    )
    p_demo.add_argument("--fourier", action="store_true", help="write Fourier form instead")
    p_demo.add_argument("--out", metavar="FILE", help="write here instead of stdout")
    p_demo.set_defaults(func=_cmd_demo)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except Imm0Error as err:
        print(f"error: {err}", file=sys.stderr)
        return err.exit_code
    except OSError as err:
        print(f"error: {err}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
