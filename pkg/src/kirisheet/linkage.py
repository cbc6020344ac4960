"""Spring-loaded four-bar kinematics of the deforming elliptical boundary.

The boundary is idealised as four rigid links of equal length joined at the
ellipse vertices. Pulling the slider joint apart lengthens the sheet along
the pull axis and narrows it across the ribbons; the deformed outline is
approximated by an ellipse with the linkage dimensions as principal axes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DisplacementOutOfRange, StationOutOfRange
from .sheet import SheetSpec


@dataclass(frozen=True)
class DeformedState:
    """Boundary geometry at one slider displacement.

    ``lz`` stays zero until the ribbon layout fills in the bowl depth.
    """

    delta_x: float  # slider displacement, mm
    lx: float       # deformed length along the pull axis, mm
    ly: float       # deformed width across the ribbons, mm
    delta_y: float  # width reduction ly_init - ly, mm
    theta: float    # link angle arctan(ly / lx), radians
    lz: float = 0.0  # maximum bowl depth, mm


def link_length(spec: SheetSpec) -> float:
    """Length of each rigid link, mm: half-diagonal of the undeformed axes."""
    return math.sqrt((spec.lx_init / 2.0) ** 2 + (spec.ly_init / 2.0) ** 2)


def max_displacement(spec: SheetSpec) -> float:
    """Slider displacement at which the boundary width reaches zero, mm."""
    return 2.0 * link_length(spec) - spec.lx_init


def deform(spec: SheetSpec, delta_x: float) -> DeformedState:
    """Boundary state after displacing the slider by ``delta_x`` mm.

    The link lengths are conserved, so the deformed width follows from the
    deformed length. Out-of-range displacements are a hard error, never
    clamped.
    """
    limit = max_displacement(spec)
    if delta_x < 0.0 or delta_x > limit:
        raise DisplacementOutOfRange(
            f"delta_x={delta_x:g} mm out of range for sheet {spec.name!r}: "
            f"max_displacement is {limit:.9g} mm"
        )
    if delta_x == 0.0:
        # the undeformed sheet is an exact fixed point
        return DeformedState(
            0.0, spec.lx_init, spec.ly_init, 0.0, math.atan2(spec.ly_init, spec.lx_init)
        )
    llink = link_length(spec)
    lx = spec.lx_init + delta_x
    half = lx / 2.0
    # factored difference of squares keeps ly exactly zero at full extension
    ly = 2.0 * math.sqrt(max((llink - half) * (llink + half), 0.0))
    return DeformedState(delta_x, lx, ly, spec.ly_init - ly, math.atan2(ly, lx))


def boundary_chord(state: DeformedState, x: float) -> float:
    """Chord of the deformed elliptical boundary at station ``x``, mm.

    The ellipse is centred on the pull axis at ``(lx/2, 0)`` so the anchored
    and slider joints sit at its vertices; the chord is the full y-extent at
    the given station.
    """
    if x < 0.0 or x > state.lx:
        raise StationOutOfRange(f"station x={x:g} mm outside [0, {state.lx:g}] mm")
    half = state.lx / 2.0
    t = (x - half) / half
    return state.ly * math.sqrt(max(1.0 - t * t, 0.0))
