"""Command-line interface: deform, force, fit, loocv, mesh, design.

Units are mm for lengths, N for forces, N/m for stiffness, radians for the
link angle. Exit codes: 0 success, 2 input or validation error, 3 numeric
failure, 4 I/O error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import __version__
from .calibration import evaluate_fit, loocv, read_measurement_csv
from .catenary import deformed_geometry
from .design import (
    design_csv_lines,
    evaluate_design,
    load_design_input,
    resolve_constants,
    sweep_designs,
)
from .errors import (
    DegenerateAngle,
    FlatRibbon,
    KirisheetError,
    SingularDesign,
    UnknownConstants,
)
from .force import SpringConstants, stiffness_table, tensile_force
from .linkage import deform
from .sheet import _normalize_preset, resolve_sheet
from .shape import build_shape, export_shape

_NUMERIC_ERRORS = (SingularDesign, DegenerateAngle, FlatRibbon)


def _parse_sweep(text: str) -> list[float]:
    parts = text.split(":")
    if len(parts) != 3:
        raise ValueError(f"--sweep expects START:STOP:STEP in mm, got {text!r}")
    start, stop, step = (float(p) for p in parts)
    if step <= 0:
        raise ValueError("--sweep step must be positive")
    if stop < start:
        raise ValueError("--sweep stop must not be below start")
    count = int((stop - start) / step + 1e-9) + 1
    return [start + i * step for i in range(count)]


def _displacements(args) -> list[float]:
    if args.sweep is not None:
        return _parse_sweep(args.sweep)
    if args.delta_x is not None:
        return [args.delta_x]
    raise ValueError("provide --delta-x or --sweep")


def _load_constants(source: str, spec_name: str) -> SpringConstants:
    """Constants from a bundled sheet name or a JSON file with kx/ky in N/m."""
    path = Path(source)
    if path.suffix == ".json" or path.exists():
        payload = json.loads(path.read_text(encoding="utf-8"))
        if not isinstance(payload, dict) or set(payload) != {"kx", "ky"}:
            raise UnknownConstants(f"{path}: expected an object with exactly kx and ky (N/m)")
        return SpringConstants(float(payload["kx"]), float(payload["ky"]))
    table = stiffness_table()
    key = _normalize_preset(source)
    if key not in table:
        raise UnknownConstants(
            f"unknown constants {source!r}; bundled names: {', '.join(sorted(table))}"
        )
    if _normalize_preset(spec_name) != key:
        print(
            f"warning: constants are for sheet {key!r} but the spec is {spec_name!r}",
            file=sys.stderr,
        )
    return table[key].constants


def _emit(header: list[str], rows: list[list[str]], args) -> None:
    """Render a table as text, CSV, or JSON, to stdout or --out."""
    fmt = args.format
    if fmt == "csv":
        lines = [",".join(header)] + [",".join(row) for row in rows]
        payload = "\n".join(lines) + "\n"
    elif fmt == "json":
        payload = json.dumps([dict(zip(header, row)) for row in rows], indent=2) + "\n"
    else:
        widths = [max(len(h), *(len(r[i]) for r in rows)) if rows else len(h)
                  for i, h in enumerate(header)]
        lines = ["  ".join(h.ljust(w) for h, w in zip(header, widths))]
        for row in rows:
            lines.append("  ".join(cell.ljust(w) for cell, w in zip(row, widths)))
        payload = "\n".join(lines) + "\n"
    _write_payload(payload, args)


def _write_payload(payload: str, args) -> None:
    out = getattr(args, "out", None)
    if out:
        with open(out, "w", encoding="utf-8", newline="\n") as handle:
            handle.write(payload)
    else:
        sys.stdout.write(payload)


def _cmd_deform(args) -> int:
    spec = resolve_sheet(args.spec)
    rows = []
    for delta in _displacements(args):
        state, _ = deformed_geometry(spec, delta)
        rows.append([
            f"{state.delta_x:.6f}", f"{state.lx:.6f}", f"{state.ly:.6f}",
            f"{state.lz:.6f}", f"{state.theta:.6f}", f"{state.delta_y:.6f}",
        ])
    _emit(["delta_x_mm", "lx_mm", "ly_mm", "lz_mm", "theta_rad", "delta_y_mm"], rows, args)
    return 0


def _cmd_force(args) -> int:
    spec = resolve_sheet(args.spec)
    constants = _load_constants(args.constants, spec.name)
    rows = []
    for delta in _displacements(args):
        force = tensile_force(deform(spec, delta), constants)
        rows.append([f"{delta:.6f}", f"{force:.6f}"])
    _emit(["delta_x_mm", "force_n"], rows, args)
    return 0


def _cmd_fit(args) -> int:
    spec = resolve_sheet(args.spec)
    data = read_measurement_csv(args.csv, spec)
    report = evaluate_fit(data, min_displacement=args.min_displacement)
    if args.format == "json":
        _write_payload(json.dumps(report.to_dict(), indent=2) + "\n", args)
        return 0
    d = report.to_dict()
    lines = [
        f"sheet: {spec.name}",
        f"kx: {d['kx_n_per_m']:.6f} N/m",
        f"ky: {d['ky_n_per_m']:.6f} N/m",
        f"mae_force: {d['mae_force_n']:.6f} N",
        f"r2_force: {_fmt_opt(d['r2_force'])}",
        f"mae_width: {_fmt_opt(d['mae_width_mm'], ' mm')}",
        f"r2_width: {_fmt_opt(d['r2_width'])}",
        f"mae_depth: {_fmt_opt(d['mae_depth_mm'], ' mm')}",
        f"r2_depth: {_fmt_opt(d['r2_depth'])}",
    ]
    _write_payload("\n".join(lines) + "\n", args)
    return 0


def _fmt_opt(value, unit: str = "") -> str:
    return "n/a" if value is None else f"{value:.6f}{unit}"


def _cmd_loocv(args) -> int:
    spec = resolve_sheet(args.spec)
    data = read_measurement_csv(args.csv, spec)
    result = loocv(data)
    header = ["row_index", "delta_x_mm", "predicted_force_n", "actual_force_n", "abs_error_n"]
    rows = [
        [str(r.row_index), f"{r.delta_x:.6f}", f"{r.predicted_force:.6f}",
         f"{r.actual_force:.6f}", f"{r.abs_error:.6f}"]
        for r in result.records
    ]
    if args.format == "json":
        payload = {
            "rows": [dict(zip(header, row)) for row in rows],
            "mae_force_n": result.mae,
        }
        _write_payload(json.dumps(payload, indent=2) + "\n", args)
        return 0
    _emit(header, rows, args)
    if args.format == "text":
        sys.stdout.write(f"mae: {result.mae:.6f} N\n")
    return 0


def _cmd_mesh(args) -> int:
    spec = resolve_sheet(args.spec)
    model = build_shape(spec, args.delta_x, samples_per_ribbon=args.samples)
    export_shape(model, args.out)
    n_points = len(model.boundary_points) + sum(len(p) for p in model.ribbon_polylines)
    print(f"wrote {args.out} ({n_points} vertices, {len(model.ribbon_polylines)} ribbons)")
    return 0


def _cmd_design(args) -> int:
    spec_arg = getattr(args, "spec", None)
    design_input = load_design_input(args.input)
    base_spec = resolve_sheet(spec_arg) if spec_arg else design_input.base_spec
    if base_spec is None:
        raise UnknownConstants("no sheet given: set base_spec in the input file or pass --spec")
    constants = design_input.constants
    if constants is None:
        raise UnknownConstants(
            "no constants source given: set 'constants' in the input file "
            "(sheet name, 'nearest', or {kx, ky})"
        )
    if design_input.has_grid:
        candidates = sweep_designs(
            base_spec,
            design_input.requirement,
            constants,
            lx_values=design_input.lx_values,
            ly_values=design_input.ly_values,
            ribbon_width_values=design_input.ribbon_width_values,
            grid_step=args.grid_step,
            scale_thickness=design_input.scale_thickness,
        )
    else:
        resolved = resolve_constants(
            constants, base_spec, scale_thickness=design_input.scale_thickness
        )
        candidates = [
            evaluate_design(base_spec, resolved, design_input.requirement, args.grid_step)
        ]
    _write_payload("\n".join(design_csv_lines(candidates)) + "\n", args)
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="kirisheet",
        description="Buckling kirigami sheet toolkit: geometry, forces, calibration, "
                    "shape export, design search. Lengths in mm, forces in N, "
                    "stiffness in N/m.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_spec(p):
        p.add_argument("spec", help="sheet spec: JSON path or bundled preset name (A..E)")

    def add_sweep(p):
        p.add_argument("--delta-x", type=float, default=None, metavar="MM",
                       help="single slider displacement in mm")
        p.add_argument("--sweep", default=None, metavar="START:STOP:STEP",
                       help="displacement sweep in mm, inclusive of STOP")

    def add_format(p, choices=("text", "csv", "json")):
        p.add_argument("--format", choices=choices, default="text",
                       help="output format (default: text)")
        p.add_argument("--out", default=None, metavar="PATH",
                       help="write output to PATH instead of stdout")

    p = sub.add_parser("deform", help="deformed geometry table (mm, radians)")
    add_spec(p); add_sweep(p); add_format(p)
    p.set_defaults(handler=_cmd_deform)

    p = sub.add_parser("force", help="tensile force table (N)")
    add_spec(p)
    p.add_argument("--constants", required=True, metavar="NAME|PATH",
                   help="bundled sheet name (A..E) or JSON file with kx/ky in N/m")
    add_sweep(p); add_format(p)
    p.set_defaults(handler=_cmd_force)

    p = sub.add_parser("fit", help="fit spring constants (N/m) from a measurement CSV")
    add_spec(p)
    p.add_argument("csv", help="measurement CSV (header delta_x_mm,width_mm,depth_mm,force_n)")
    p.add_argument("--min-displacement", type=float, default=0.0, metavar="MM",
                   help="exclude rows below this displacement from width/depth metrics "
                        "(default: 0)")
    add_format(p, choices=("text", "json"))
    p.set_defaults(handler=_cmd_fit)

    p = sub.add_parser("loocv", help="leave-one-out cross-validation of the force fit")
    add_spec(p)
    p.add_argument("csv", help="measurement CSV with at least 3 force rows")
    add_format(p)
    p.set_defaults(handler=_cmd_loocv)

    p = sub.add_parser("mesh", help="export the deformed shape (.obj or .csv by extension)")
    add_spec(p)
    p.add_argument("--delta-x", type=float, required=True, metavar="MM",
                   help="slider displacement in mm")
    p.add_argument("--samples", type=int, default=41, metavar="N",
                   help="samples per ribbon polyline (default: 41)")
    p.add_argument("--out", required=True, metavar="PATH", help="output file path")
    p.set_defaults(handler=_cmd_mesh)

    p = sub.add_parser("design", help="search displacements/designs meeting a grasp requirement")
    p.add_argument("input", help="requirement/grid JSON file")
    p.add_argument("--spec", default=None, help="override base sheet (path or preset name)")
    p.add_argument("--grid-step", type=float, default=0.1, metavar="MM",
                   help="displacement scan step in mm (default: 0.1)")
    p.add_argument("--out", default=None, metavar="PATH",
                   help="write the result CSV to PATH instead of stdout")
    p.set_defaults(handler=_cmd_design)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except _NUMERIC_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except (ValueError, KirisheetError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 4


if __name__ == "__main__":
    sys.exit(main())
