"""Stiffness calibration from experimental data, with LOOCV and fit metrics.

The measured tensile force is linear in the two spring constants, so the fit
is a two-column linear least-squares problem. The regressors are the model
forces at unit stiffness, which keeps every mm-to-m conversion inside the
force model itself.
"""

from __future__ import annotations

import csv
import math
import warnings
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .catenary import layout_ribbons
from .errors import (
    CsvFormatError,
    InsufficientData,
    InvalidMeasurement,
    MissingColumn,
    NegativeStiffnessWarning,
    SingularDesign,
)
from .force import SpringConstants, tensile_force
from .linkage import deform
from .sheet import SheetSpec

MEASUREMENT_HEADER = ("delta_x_mm", "width_mm", "depth_mm", "force_n")

LARGE_DISPLACEMENT_CUTOFF_MM = 5.0
"""Conventional minimum-displacement filter for width/depth metrics.

Near rest the width change is within measurement noise, so error statistics
are often quoted for displacements of at least this value. The default filter
is 0 (keep everything); pass this constant to match the conventional cut.
"""

_UNIT_KX = SpringConstants(1.0, 0.0)
_UNIT_KY = SpringConstants(0.0, 1.0)
_SINGULAR_RTOL = 1e-10


@dataclass(frozen=True)
class MeasurementRow:
    """One experimental record; geometry and force columns are optional."""

    delta_x: float           # mm
    width: float | None = None   # measured ly, mm
    depth: float | None = None   # measured lz, mm
    force: float | None = None   # measured tensile force, N


@dataclass(frozen=True)
class MeasurementSet:
    """Experimental records for one sheet, ordered by displacement."""

    sheet: SheetSpec
    rows: tuple[MeasurementRow, ...]

    def __post_init__(self) -> None:
        deltas = [row.delta_x for row in self.rows]
        if any(d < 0 for d in deltas):
            raise InvalidMeasurement("delta_x values must be non-negative")
        if any(b <= a for a, b in zip(deltas, deltas[1:])):
            raise InvalidMeasurement("delta_x values must be strictly increasing")

    def force_rows(self) -> tuple[list[int], np.ndarray, np.ndarray]:
        """Indices, displacements, and forces of the rows that carry a force."""
        idx = [i for i, row in enumerate(self.rows) if row.force is not None]
        deltas = np.array([self.rows[i].delta_x for i in idx], dtype=float)
        forces = np.array([self.rows[i].force for i in idx], dtype=float)
        return idx, deltas, forces


@dataclass(frozen=True)
class GeometryMetrics:
    """Width/depth prediction errors; fields are None when a column is absent.

    R-squared is NaN when the measured column has zero variance (the
    coefficient of determination is undefined there); the MAE stays valid.
    """

    mae_width: float | None
    r2_width: float | None
    mae_depth: float | None
    r2_depth: float | None


@dataclass(frozen=True)
class FitReport:
    """Calibrated constants plus in-sample force metrics and geometry metrics."""

    constants: SpringConstants
    residuals: tuple[float, ...]  # actual - predicted force, N
    mae_force: float
    r2_force: float
    mae_width: float | None
    r2_width: float | None
    mae_depth: float | None
    r2_depth: float | None

    def to_dict(self) -> dict:
        def clean(value):
            if value is None or (isinstance(value, float) and math.isnan(value)):
                return None
            return value

        return {
            "kx_n_per_m": self.constants.kx,
            "ky_n_per_m": self.constants.ky,
            "residuals_n": list(self.residuals),
            "mae_force_n": self.mae_force,
            "r2_force": clean(self.r2_force),
            "mae_width_mm": clean(self.mae_width),
            "r2_width": clean(self.r2_width),
            "mae_depth_mm": clean(self.mae_depth),
            "r2_depth": clean(self.r2_depth),
        }


@dataclass(frozen=True)
class LoocvRecord:
    """One held-out prediction."""

    row_index: int
    delta_x: float
    predicted_force: float
    actual_force: float
    abs_error: float


@dataclass(frozen=True)
class LoocvResult:
    records: tuple[LoocvRecord, ...]
    mae: float


def read_measurement_csv(path: str | Path, sheet: SheetSpec) -> MeasurementSet:
    """Parse a measurement CSV with the exact header delta_x_mm,width_mm,depth_mm,force_n.

    Values are '.'-decimal floats, missing entries are empty cells. Format
    errors name the offending line and column.
    """
    path = Path(path)
    with path.open("r", encoding="utf-8", newline="") as handle:
        reader = csv.reader(handle)
        try:
            header = next(reader)
        except StopIteration:
            raise CsvFormatError(f"{path}: empty file, expected header "
                                 f"{','.join(MEASUREMENT_HEADER)}") from None
        if tuple(header) != MEASUREMENT_HEADER:
            raise CsvFormatError(
                f"{path}: line 1: bad header {','.join(header)!r}, "
                f"expected {','.join(MEASUREMENT_HEADER)!r}"
            )
        rows = []
        for line_no, cells in enumerate(reader, start=2):
            if len(cells) != len(MEASUREMENT_HEADER):
                raise CsvFormatError(
                    f"{path}: line {line_no}: expected {len(MEASUREMENT_HEADER)} "
                    f"columns, got {len(cells)}"
                )
            parsed = {}
            for col, cell in zip(MEASUREMENT_HEADER, cells):
                parsed[col] = _parse_cell(cell, path, line_no, col)
            if parsed["delta_x_mm"] is None:
                raise CsvFormatError(f"{path}: line {line_no}: column delta_x_mm: value required")
            rows.append(
                MeasurementRow(
                    delta_x=parsed["delta_x_mm"],
                    width=parsed["width_mm"],
                    depth=parsed["depth_mm"],
                    force=parsed["force_n"],
                )
            )
    return MeasurementSet(sheet=sheet, rows=tuple(rows))


def _parse_cell(cell: str, path: Path, line_no: int, col: str) -> float | None:
    text = cell.strip()
    if text == "":
        return None
    try:
        value = float(text)
    except ValueError:
        raise CsvFormatError(
            f"{path}: line {line_no}: column {col}: not a number: {cell!r}"
        ) from None
    if not math.isfinite(value):
        raise CsvFormatError(f"{path}: line {line_no}: column {col}: non-finite value {cell!r}")
    return value


def design_matrix(spec: SheetSpec, deltas: np.ndarray) -> np.ndarray:
    """(n, 2) regressor matrix: model force at unit kx and at unit ky.

    The force model is linear in the constants, so these columns are exactly
    the coefficients of kx and ky, with the unit conversion handled in one
    place (inside the force model).
    """
    states = [deform(spec, float(d)) for d in deltas]
    return np.array(
        [[tensile_force(s, _UNIT_KX), tensile_force(s, _UNIT_KY)] for s in states]
    )


def _solve_constants(design: np.ndarray, forces: np.ndarray) -> SpringConstants:
    """Stable least-squares solve (SVD via lstsq, never raw normal equations)."""
    singular = np.linalg.svd(design, compute_uv=False)
    if singular[0] == 0.0 or singular[-1] <= _SINGULAR_RTOL * singular[0]:
        raise SingularDesign(
            "displacement regressors are collinear; cannot separate kx from ky"
        )
    coef, *_ = np.linalg.lstsq(design, forces, rcond=None)
    constants = SpringConstants(float(coef[0]), float(coef[1]))
    if constants.kx < 0.0 or constants.ky < 0.0:
        warnings.warn(
            f"fitted constants kx={constants.kx:.4g}, ky={constants.ky:.4g} N/m "
            "include a negative value",
            NegativeStiffnessWarning,
            stacklevel=3,
        )
    return constants


def fit_spring_constants(data: MeasurementSet) -> SpringConstants:
    """Fit (kx, ky) in N/m to the measured forces by linear least squares.

    Width reductions and link angles come from the deformation model, not
    from the measured widths; measured geometry feeds only
    :func:`geometry_metrics`.
    """
    _, deltas, forces = data.force_rows()
    if len(forces) < 2:
        raise InsufficientData(
            f"need at least 2 force rows to fit two constants, got {len(forces)}"
        )
    return _solve_constants(design_matrix(data.sheet, deltas), forces)


def _loocv_arrays(spec: SheetSpec, deltas: np.ndarray, forces: np.ndarray) -> np.ndarray:
    """Held-out force predictions, one per row, in input order."""
    design = design_matrix(spec, deltas)
    predictions = np.empty(len(forces))
    for i in range(len(forces)):
        kept = np.arange(len(forces)) != i
        constants = _solve_constants(design[kept], forces[kept])
        predictions[i] = design[i] @ (constants.kx, constants.ky)
    return predictions


def loocv(data: MeasurementSet) -> LoocvResult:
    """Leave-one-out cross-validation of the force fit.

    Each force row is predicted from a fit on all the other rows of the same
    sheet; the result reports per-row absolute errors and their mean.
    """
    idx, deltas, forces = data.force_rows()
    if len(forces) < 3:
        raise InsufficientData(
            f"LOOCV needs at least 3 force rows (each held-out fit needs 2), got {len(forces)}"
        )
    predictions = _loocv_arrays(data.sheet, deltas, forces)
    records = tuple(
        LoocvRecord(
            row_index=idx[i],
            delta_x=float(deltas[i]),
            predicted_force=float(predictions[i]),
            actual_force=float(forces[i]),
            abs_error=float(abs(predictions[i] - forces[i])),
        )
        for i in range(len(forces))
    )
    mae = float(np.mean([r.abs_error for r in records]))
    return LoocvResult(records=records, mae=mae)


def _mae_r2(measured: np.ndarray, predicted: np.ndarray) -> tuple[float, float]:
    mae = float(np.mean(np.abs(measured - predicted)))
    ss_res = float(np.sum((measured - predicted) ** 2))
    ss_tot = float(np.sum((measured - measured.mean()) ** 2))
    r2 = 1.0 - ss_res / ss_tot if ss_tot > 0.0 else math.nan
    return mae, r2


def geometry_metrics(data: MeasurementSet, min_displacement: float = 0.0) -> GeometryMetrics:
    """MAE and R-squared of the width and depth predictions against measurements.

    No fitting is involved: widths come straight from the boundary kinematics
    and depths from the ribbon layout. Rows below ``min_displacement`` are
    excluded (see :data:`LARGE_DISPLACEMENT_CUTOFF_MM`).
    """
    spec = data.sheet
    width_rows = [
        r for r in data.rows if r.width is not None and r.delta_x >= min_displacement
    ]
    depth_rows = [
        r for r in data.rows if r.depth is not None and r.delta_x >= min_displacement
    ]
    if not width_rows and not depth_rows:
        raise MissingColumn(
            "no width or depth values present (after the minimum-displacement filter)"
        )
    mae_width = r2_width = mae_depth = r2_depth = None
    if width_rows:
        measured = np.array([r.width for r in width_rows])
        predicted = np.array([deform(spec, r.delta_x).ly for r in width_rows])
        mae_width, r2_width = _mae_r2(measured, predicted)
    if depth_rows:
        measured = np.array([r.depth for r in depth_rows])
        predicted = np.array(
            [layout_ribbons(spec, deform(spec, r.delta_x)).lz for r in depth_rows]
        )
        mae_depth, r2_depth = _mae_r2(measured, predicted)
    return GeometryMetrics(mae_width, r2_width, mae_depth, r2_depth)


def evaluate_fit(data: MeasurementSet, min_displacement: float = 0.0) -> FitReport:
    """Fit the constants and report force residuals plus geometry metrics."""
    _, deltas, forces = data.force_rows()
    if len(forces) < 2:
        raise InsufficientData(
            f"need at least 2 force rows to fit two constants, got {len(forces)}"
        )
    design = design_matrix(data.sheet, deltas)
    constants = _solve_constants(design, forces)
    predicted = design @ (constants.kx, constants.ky)
    residuals = forces - predicted
    mae_force, r2_force = _mae_r2(forces, predicted)
    try:
        geo = geometry_metrics(data, min_displacement)
    except MissingColumn:
        geo = GeometryMetrics(None, None, None, None)
    return FitReport(
        constants=constants,
        residuals=tuple(float(r) for r in residuals),
        mae_force=mae_force,
        r2_force=r2_force,
        mae_width=geo.mae_width,
        r2_width=geo.r2_width,
        mae_depth=geo.mae_depth,
        r2_depth=geo.r2_depth,
    )
