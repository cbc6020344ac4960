"""Assemble the deformed 3D shape and write it to OBJ or CSV point-cloud files.

The physical sheet is a set of strips with gaps, so the export is polylines
(boundary loop plus one polyline per ribbon), not a closed surface. z is
negative downward: the bowl sags below the boundary plane.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .catenary import deformed_geometry, ribbon_profile
from .linkage import boundary_chord
from .sheet import SheetSpec


@dataclass(frozen=True)
class ShapeModel:
    """Sampled deformed shape: boundary loop, ribbon polylines, bounding box."""

    boundary_points: np.ndarray              # (n, 3) closed loop in the z=0 plane
    ribbon_polylines: tuple[np.ndarray, ...]  # (m_i, 3) per ribbon, station order
    bounding_box: tuple[float, float, float]  # (lx, ly, lz) mm


def build_shape(
    spec: SheetSpec,
    delta_x: float,
    samples_per_ribbon: int = 41,
    boundary_samples: int = 128,
) -> ShapeModel:
    """Compose boundary kinematics and ribbon catenaries into one shape model.

    Ribbon endpoints are inserted into the boundary loop exactly, so the
    polylines are watertight against the boundary. Even sample counts are
    bumped to odd so the sag minimum is always sampled. Unbuckled ribbons
    become straight segments; fully folded ones a vertical segment.
    """
    if samples_per_ribbon < 3:
        raise ValueError(f"samples_per_ribbon must be at least 3, got {samples_per_ribbon}")
    n_profile = samples_per_ribbon | 1
    state, layout = deformed_geometry(spec, delta_x)

    stations = [curve.station_frac * state.lx for curve in layout.ribbons]
    half_span = {x: curve.dy / 2.0 for x, curve in zip(stations, layout.ribbons)}

    grid = np.linspace(0.0, state.lx, max(boundary_samples, 16))
    xs = np.union1d(grid, np.asarray(stations))
    # ribbon stations reuse the solved spans so the loop passes through the
    # ribbon endpoints exactly
    ys = np.array(
        [half_span[x] if x in half_span else 0.5 * boundary_chord(state, x) for x in xs]
    )
    upper = np.column_stack((xs, ys, np.zeros_like(xs)))
    interior = slice(1, len(xs) - 1)
    lower = np.column_stack((xs[interior][::-1], -ys[interior][::-1], np.zeros(len(xs) - 2)))
    boundary = np.vstack((upper, lower))

    polylines = []
    for x, curve in zip(stations, layout.ribbons):
        if curve.is_flat:
            half = curve.dy / 2.0
            points = np.array([[x, -half, 0.0], [x, half, 0.0]])
        elif curve.a == 0.0:
            # fully folded: two coincident legs hanging straight down
            points = np.array([[x, 0.0, 0.0], [x, 0.0, -curve.dz]])
        else:
            yz = ribbon_profile(curve, n_profile)
            points = np.column_stack((np.full(len(yz), x), yz[:, 0], yz[:, 1]))
        polylines.append(points)

    return ShapeModel(
        boundary_points=boundary,
        ribbon_polylines=tuple(polylines),
        bounding_box=(state.lx, state.ly, state.lz),
    )


def _format_vertex(point) -> str:
    return f"v {point[0]:.6f} {point[1]:.6f} {point[2]:.6f}"


def export_obj(model: ShapeModel, path: str | Path) -> None:
    """Write a Wavefront OBJ: vertices in mm (6 decimals) and polyline l-elements.

    Vertex order is deterministic: boundary loop first, then ribbons in
    station order, so identical models produce byte-identical files.
    """
    lines = []
    for point in model.boundary_points:
        lines.append(_format_vertex(point))
    for polyline in model.ribbon_polylines:
        for point in polyline:
            lines.append(_format_vertex(point))
    n_boundary = len(model.boundary_points)
    if n_boundary:
        loop = " ".join(str(i) for i in range(1, n_boundary + 1))
        lines.append(f"l {loop} 1")
    offset = n_boundary
    for polyline in model.ribbon_polylines:
        ids = " ".join(str(offset + i) for i in range(1, len(polyline) + 1))
        lines.append(f"l {ids}")
        offset += len(polyline)
    with open(path, "w", encoding="utf-8", newline="\n") as handle:
        handle.write("\n".join(lines) + "\n")


def export_csv_pointcloud(model: ShapeModel, path: str | Path) -> None:
    """Write the sampled points as CSV with header x_mm,y_mm,z_mm,element_id.

    Element 0 is the boundary loop; ribbons are numbered from 1 in station
    order.
    """
    lines = ["x_mm,y_mm,z_mm,element_id"]
    for point in model.boundary_points:
        lines.append(f"{point[0]:.6f},{point[1]:.6f},{point[2]:.6f},0")
    for element, polyline in enumerate(model.ribbon_polylines, start=1):
        for point in polyline:
            lines.append(f"{point[0]:.6f},{point[1]:.6f},{point[2]:.6f},{element}")
    with open(path, "w", encoding="utf-8", newline="\n") as handle:
        handle.write("\n".join(lines) + "\n")


def export_shape(model: ShapeModel, path: str | Path) -> None:
    """Write the model to ``path``; the format follows the extension (.obj or .csv)."""
    suffix = Path(path).suffix.lower()
    if suffix == ".obj":
        export_obj(model, path)
    elif suffix == ".csv":
        export_csv_pointcloud(model, path)
    else:
        raise ValueError(f"unsupported export extension {suffix!r}; use .obj or .csv")
