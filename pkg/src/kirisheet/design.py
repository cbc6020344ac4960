"""Design-space exploration: smallest actuation meeting a grasp requirement.

The cavity criterion is deliberately simple: the bowl must be at least
``food_depth`` deep while the opening across the ribbons is still at least
``food_width`` wide, and the actuation force must stay within budget. That
operationalises "can this sheet hold an item of this size" without modelling
the item itself.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence

from .catenary import deformed_geometry
from .errors import DegenerateAngle, EmptyGrid, SpecValidationError, UnknownConstants
from .force import SpringConstants, stiffness_table, tensile_force
from .linkage import max_displacement
from .sheet import SheetSpec, _normalize_preset, sheet_spec_from_dict

REASON_DEPTH = "DepthUnreachable"
REASON_WIDTH = "WidthCollapsed"
REASON_FORCE = "ForceExceeded"

DESIGN_CSV_HEADER = "spec_name,lx_init,ly_init,ribbon_width,delta_x_grasp_mm,force_n,feasible,reason"

NEAREST = "nearest"
"""Constants strategy: closest bundled record of the same material."""


@dataclass(frozen=True)
class GraspRequirement:
    """Target cavity size and the force the actuator can supply."""

    food_width: float   # mm, opening needed across the ribbons
    food_depth: float   # mm, cavity depth needed
    force_budget: float  # N

    def __post_init__(self) -> None:
        if self.food_width <= 0:
            raise ValueError("food_width must be positive")
        if self.food_depth < 0:
            raise ValueError("food_depth must be non-negative")
        if self.force_budget <= 0:
            raise ValueError("force_budget must be positive")


@dataclass(frozen=True)
class DesignCandidate:
    """Outcome of evaluating one sheet against one requirement."""

    spec: SheetSpec
    constants: SpringConstants
    delta_x_grasp: float | None  # mm, smallest displacement meeting the cavity
    force_at_grasp: float | None  # N
    feasible: bool
    reason: str  # empty when feasible, else one of the REASON_* codes


def resolve_constants(
    source: SpringConstants | str, spec: SheetSpec, *, scale_thickness: bool = False
) -> SpringConstants:
    """Resolve a stiffness source for one sheet.

    ``source`` is either an explicit :class:`SpringConstants`, a bundled sheet
    name, or :data:`NEAREST` (closest bundled record of the same material, by
    thickness then ribbon width). Constants are never interpolated silently;
    ``scale_thickness`` opts into a linear-in-thickness rescaling of the
    bundled values, which is a coarse heuristic.
    """
    if isinstance(source, SpringConstants):
        return source
    if not isinstance(source, str):
        raise UnknownConstants(f"unsupported constants source {source!r}")
    table = stiffness_table()
    if source == NEAREST:
        same_material = [
            rec for rec in table.values() if rec.material.lower() == spec.material.lower()
        ]
        if not same_material:
            raise UnknownConstants(
                f"no bundled constants for material {spec.material!r}"
            )
        record = min(
            same_material,
            key=lambda rec: (
                abs(rec.thickness - spec.thickness),
                abs(rec.ribbon_width - spec.ribbon_width),
                rec.sheet,
            ),
        )
    else:
        key = _normalize_preset(source)
        if key not in table:
            raise UnknownConstants(
                f"no bundled constants named {source!r}; available: "
                f"{', '.join(sorted(table))} or {NEAREST!r}"
            )
        record = table[key]
    constants = record.constants
    if scale_thickness:
        ratio = spec.thickness / record.thickness
        constants = SpringConstants(constants.kx * ratio, constants.ky * ratio)
    return constants


def evaluate_design(
    spec: SheetSpec,
    constants: SpringConstants,
    requirement: GraspRequirement,
    grid_step: float = 0.1,
) -> DesignCandidate:
    """Scan displacements for the first state meeting the cavity criteria.

    Depth grows and width shrinks monotonically with displacement, so the
    first depth crossing decides the outcome: if the opening has already
    collapsed there it never recovers, and the force only rises beyond it.
    """
    if grid_step <= 0:
        raise ValueError("grid_step must be positive")
    limit = max_displacement(spec)
    k = 0
    while (delta := k * grid_step) < limit:
        state, layout = deformed_geometry(spec, delta)
        if layout.lz >= requirement.food_depth:
            if state.ly < requirement.food_width:
                return DesignCandidate(spec, constants, None, None, False, REASON_WIDTH)
            try:
                force = tensile_force(state, constants)
            except DegenerateAngle:
                force = math.inf
            if force <= requirement.force_budget:
                return DesignCandidate(spec, constants, delta, force, True, "")
            return DesignCandidate(spec, constants, None, None, False, REASON_FORCE)
        k += 1
    return DesignCandidate(spec, constants, None, None, False, REASON_DEPTH)


def sweep_designs(
    base_spec: SheetSpec,
    requirement: GraspRequirement,
    constants: SpringConstants | str,
    *,
    lx_values: Sequence[float] | None = None,
    ly_values: Sequence[float] | None = None,
    ribbon_width_values: Sequence[float] | None = None,
    grid_step: float = 0.1,
    scale_thickness: bool = False,
) -> list[DesignCandidate]:
    """Evaluate a grid of boundary/ribbon dimensions against one requirement.

    Grid axes default to the base spec's value; explicit empty axes are an
    error. Variants take the base sheet's thickness and material and default
    their margin to the ribbon width. Feasible candidates come first, ranked
    by force ascending with (lx, ly, ribbon width) as the deterministic
    tie-break; infeasible candidates follow in grid order with their reasons.
    """
    axes = []
    for values, fallback in (
        (lx_values, base_spec.lx_init),
        (ly_values, base_spec.ly_init),
        (ribbon_width_values, base_spec.ribbon_width),
    ):
        axis = sorted(float(v) for v in values) if values is not None else [fallback]
        if not axis:
            raise EmptyGrid("design grid has an empty axis")
        axes.append(axis)

    candidates = []
    for lx in axes[0]:
        for ly in axes[1]:
            for width in axes[2]:
                spec = SheetSpec(
                    name=f"{base_spec.name}-lx{lx:g}-ly{ly:g}-w{width:g}",
                    lx_init=lx,
                    ly_init=ly,
                    ribbon_width=width,
                    thickness=base_spec.thickness,
                    material=base_spec.material,
                )
                resolved = resolve_constants(constants, spec, scale_thickness=scale_thickness)
                candidates.append(evaluate_design(spec, resolved, requirement, grid_step))

    feasible = [c for c in candidates if c.feasible]
    infeasible = [c for c in candidates if not c.feasible]
    feasible.sort(
        key=lambda c: (c.force_at_grasp, c.spec.lx_init, c.spec.ly_init, c.spec.ribbon_width)
    )
    return feasible + infeasible


def design_csv_lines(candidates: Iterable[DesignCandidate]) -> list[str]:
    """Result rows in the exchange CSV layout (header included)."""
    lines = [DESIGN_CSV_HEADER]
    for c in candidates:
        grasp = f"{c.delta_x_grasp:.6f}" if c.delta_x_grasp is not None else ""
        force = f"{c.force_at_grasp:.6f}" if c.force_at_grasp is not None else ""
        lines.append(
            f"{c.spec.name},{c.spec.lx_init:.6g},{c.spec.ly_init:.6g},"
            f"{c.spec.ribbon_width:.6g},{grasp},{force},"
            f"{'true' if c.feasible else 'false'},{c.reason}"
        )
    return lines


def write_design_csv(candidates: Iterable[DesignCandidate], path: str | Path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as handle:
        handle.write("\n".join(design_csv_lines(candidates)) + "\n")


@dataclass(frozen=True)
class DesignInput:
    """Parsed contents of a design-exploration input file."""

    requirement: GraspRequirement
    base_spec: SheetSpec | None
    constants: SpringConstants | str | None
    lx_values: tuple[float, ...] | None
    ly_values: tuple[float, ...] | None
    ribbon_width_values: tuple[float, ...] | None
    scale_thickness: bool

    @property
    def has_grid(self) -> bool:
        return any(
            axis is not None
            for axis in (self.lx_values, self.ly_values, self.ribbon_width_values)
        )


_INPUT_KEYS = {"requirement", "base_spec", "grid", "constants", "scale_thickness"}
_REQUIREMENT_KEYS = {"food_width_mm", "food_depth_mm", "force_budget_n"}
_GRID_KEYS = {"lx_init", "ly_init", "ribbon_width"}


def load_design_input(path: str | Path) -> DesignInput:
    """Parse the requirement/grid JSON file driving a design run.

    Schema: ``requirement`` (food_width_mm, food_depth_mm, force_budget_n,
    required), ``base_spec`` (preset name or inline spec object), ``grid``
    (lists per axis), ``constants`` (sheet name, "nearest", or {kx, ky} in
    N/m), ``scale_thickness`` (bool). Unknown keys are rejected.
    """
    path = Path(path)
    payload = json.loads(path.read_text(encoding="utf-8"))
    if not isinstance(payload, dict):
        raise SpecValidationError(f"{path}: expected a JSON object")
    unknown = sorted(set(payload) - _INPUT_KEYS)
    if unknown:
        raise SpecValidationError(f"{path}: unknown keys {unknown}")
    if "requirement" not in payload:
        raise SpecValidationError(f"{path}: missing 'requirement'")
    req = payload["requirement"]
    if not isinstance(req, dict) or set(req) != _REQUIREMENT_KEYS:
        raise SpecValidationError(
            f"{path}: requirement must have exactly the keys {sorted(_REQUIREMENT_KEYS)}"
        )
    try:
        requirement = GraspRequirement(
            food_width=float(req["food_width_mm"]),
            food_depth=float(req["food_depth_mm"]),
            force_budget=float(req["force_budget_n"]),
        )
    except ValueError as exc:
        raise SpecValidationError(f"{path}: {exc}") from None

    base_spec = None
    if "base_spec" in payload:
        raw = payload["base_spec"]
        if isinstance(raw, str):
            from .sheet import sheet_preset

            base_spec = sheet_preset(raw)
        else:
            base_spec = sheet_spec_from_dict(raw, source=f"{path}:base_spec")

    constants: SpringConstants | str | None = None
    if "constants" in payload:
        raw = payload["constants"]
        if isinstance(raw, str):
            constants = raw
        elif isinstance(raw, dict) and set(raw) == {"kx", "ky"}:
            constants = SpringConstants(float(raw["kx"]), float(raw["ky"]))
        else:
            raise SpecValidationError(
                f"{path}: constants must be a name, 'nearest', or an object with kx and ky (N/m)"
            )

    axes: dict[str, tuple[float, ...] | None] = {k: None for k in _GRID_KEYS}
    if "grid" in payload:
        grid = payload["grid"]
        if not isinstance(grid, dict):
            raise SpecValidationError(f"{path}: grid must be an object")
        unknown = sorted(set(grid) - _GRID_KEYS)
        if unknown:
            raise SpecValidationError(f"{path}: unknown grid keys {unknown}")
        for key, values in grid.items():
            if not isinstance(values, list):
                raise SpecValidationError(f"{path}: grid.{key} must be a list of mm values")
            axes[key] = tuple(float(v) for v in values)

    scale_thickness = bool(payload.get("scale_thickness", False))
    return DesignInput(
        requirement=requirement,
        base_spec=base_spec,
        constants=constants,
        lx_values=axes["lx_init"],
        ly_values=axes["ly_init"],
        ribbon_width_values=axes["ribbon_width"],
        scale_thickness=scale_thickness,
    )
