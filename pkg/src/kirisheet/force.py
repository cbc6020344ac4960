"""Two-spring force model: boundary bending plus ribbon reaction through the links."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from importlib import resources
from typing import Iterable

from .errors import DegenerateAngle, UnknownConstants
from .linkage import DeformedState, deform
from .sheet import SheetSpec, _normalize_preset

MM_PER_M = 1000.0
ANGLE_EPSILON = 1e-9  # radians; below this the transmission term diverges


@dataclass(frozen=True)
class SpringConstants:
    """Lumped stiffness pair, N/m: kx for boundary bending, ky for ribbon reaction."""

    kx: float
    ky: float


def tensile_force(state: DeformedState, constants: SpringConstants) -> float:
    """Tensile actuation force in N for one deformed state.

    Displacements are converted mm to m here, and only here, so the constants
    keep their N/m units. The linkage transmits the ribbon reaction through
    1/tan(theta), which diverges as the links flatten; near-degenerate angles
    are a hard error because the physical sheet fails well before that regime.
    """
    if state.theta <= ANGLE_EPSILON:
        raise DegenerateAngle(
            f"link angle {state.theta:g} rad is at or below {ANGLE_EPSILON:g}; "
            "force diverges as the linkage flattens"
        )
    return (
        constants.kx * state.delta_x
        + constants.ky * state.delta_y / math.tan(state.theta)
    ) / MM_PER_M


def link_force(state: DeformedState, constants: SpringConstants) -> float:
    """Reaction force carried by each link pair, N (diagnostic output)."""
    if state.theta <= ANGLE_EPSILON:
        raise DegenerateAngle(
            f"link angle {state.theta:g} rad is at or below {ANGLE_EPSILON:g}"
        )
    return constants.ky * state.delta_y / math.sin(state.theta) / MM_PER_M


def force_curve(
    spec: SheetSpec, constants: SpringConstants, displacements: Iterable[float]
) -> list[tuple[float, float]]:
    """Ordered (delta_x mm, force N) table over a displacement sweep."""
    return [(float(d), tensile_force(deform(spec, d), constants)) for d in displacements]


@dataclass(frozen=True)
class StiffnessRecord:
    """One bundled reference row: sheet metadata plus its calibrated constants."""

    sheet: str
    material: str
    thickness: float      # mm
    ribbon_width: float   # mm
    constants: SpringConstants


def stiffness_table() -> dict[str, StiffnessRecord]:
    """Bundled reference constants for the built-in sheets, keyed by name."""
    payload = json.loads(
        resources.files("kirisheet")
        .joinpath("data/table1_constants.json")
        .read_text(encoding="utf-8")
    )
    table = {}
    for name, row in payload.items():
        table[name] = StiffnessRecord(
            sheet=name,
            material=row["material"],
            thickness=float(row["thickness_mm"]),
            ribbon_width=float(row["ribbon_width_mm"]),
            constants=SpringConstants(float(row["kx_n_per_m"]), float(row["ky_n_per_m"])),
        )
    return table


def stiffness_preset(name: str) -> SpringConstants:
    """Bundled spring constants for one built-in sheet name ("A".."E")."""
    table = stiffness_table()
    key = _normalize_preset(name)
    if key not in table:
        raise UnknownConstants(
            f"no bundled constants for sheet {name!r}; available: {', '.join(sorted(table))}"
        )
    return table[key].constants
