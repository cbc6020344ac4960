"""Catenary buckling of the discrete ribbons and assembly of the full layout.

Each slit-separated strip keeps its rest length while its endpoints move
closer, so it arches out of plane. The arch is modelled as a catenary hanging
below the boundary plane; z is negative downward.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from .errors import FlatRibbon, InvalidRibbon
from .linkage import DeformedState, boundary_chord, deform
from .sheet import SheetSpec

FLAT = math.inf
"""Shape-parameter sentinel for an unbuckled ribbon (endpoint span >= rest length)."""

_BRACKET_LO = 1e-6   # initial root bracket, relative to rest length
_BRACKET_HI = 1e6
_SINH_OVERFLOW = 700.0
_NEWTON_STEPS = 50
_BISECT_RTOL = 1e-6
_NEWTON_RTOL = 1e-12


@dataclass(frozen=True)
class RibbonCurve:
    """One discrete ribbon's catenary solution.

    ``station_frac`` is the ribbon's normalised position along the pull axis
    (0..1); ``a`` is the catenary shape parameter, FLAT when the ribbon is
    unbuckled and 0.0 in the fully folded limit.
    """

    station_frac: float
    rest_length: float  # undeformed chord, mm
    dy: float           # endpoint span after boundary deformation, mm
    a: float            # shape parameter, mm
    dz: float           # maximum sag depth, mm

    @property
    def is_flat(self) -> bool:
        return math.isinf(self.a)


@dataclass(frozen=True)
class RibbonLayout:
    """All ribbons of one sheet at one boundary state, plus the bowl depth."""

    ribbons: tuple[RibbonCurve, ...]
    lz: float  # max sag over all ribbons, mm


def _sinhc_m1(x: float) -> float:
    """sinh(x)/x - 1, accurate for small x where the direct form cancels."""
    if x < 0.5:
        x2 = x * x
        return (x2 / 6.0) * (1.0 + (x2 / 20.0) * (1.0 + (x2 / 42.0) * (1.0 + x2 / 72.0)))
    return math.sinh(x) / x - 1.0


def _arc_residual(a: float, dy: float, rest_length: float) -> float:
    """2a*sinh(dy/(2a)) - rest_length, formulated to avoid cancellation.

    Returns +inf once sinh would overflow (very small a), which keeps the
    sign information bisection needs.
    """
    x = dy / (2.0 * a)
    if x > _SINH_OVERFLOW:
        return math.inf
    return dy * _sinhc_m1(x) - (rest_length - dy)


def _arc_residual_slope(a: float, x: float) -> float:
    """d/da of the arc residual; series branch avoids cancellation at small x."""
    if x < 1e-4:
        return -(2.0 / 3.0) * x**3 * (1.0 + 0.1 * x * x)
    return 2.0 * (math.sinh(x) - x * math.cosh(x))


def _solve_shape_parameter(rest_length: float, dy: float) -> float:
    """Unique a > 0 with 2a*sinh(dy/(2a)) = rest_length, for 0 < dy < rest_length.

    Bracketed bisection followed by a bracket-safeguarded Newton polish. The
    residual is strictly decreasing in a, so the root is unique; the pinned
    bracket is widened in the rare cases where the root falls outside it.
    """
    lo = _BRACKET_LO * rest_length
    hi = _BRACKET_HI * rest_length
    while _arc_residual(lo, dy, rest_length) <= 0.0:
        lo *= 0.5
        if lo < 1e-300:
            raise InvalidRibbon(f"no shape parameter for rest_length={rest_length:g}, dy={dy:g}")
    while _arc_residual(hi, dy, rest_length) >= 0.0:
        hi *= 10.0
        if hi > 1e12 * rest_length:
            return FLAT  # sag below numerical resolution
    while hi - lo > _BISECT_RTOL * lo:
        mid = 0.5 * (lo + hi)
        if _arc_residual(mid, dy, rest_length) > 0.0:
            lo = mid
        else:
            hi = mid
    a = 0.5 * (lo + hi)
    for _ in range(_NEWTON_STEPS):
        f = _arc_residual(a, dy, rest_length)
        if f > 0.0:
            lo = a
        elif f < 0.0:
            hi = a
        else:
            break
        df = _arc_residual_slope(a, dy / (2.0 * a))
        nxt = a - f / df if df != 0.0 else 0.5 * (lo + hi)
        if not lo < nxt < hi:
            nxt = 0.5 * (lo + hi)
        done = abs(nxt - a) <= _NEWTON_RTOL * a
        a = nxt
        if done:
            break
    return a


def solve_catenary(rest_length: float, dy: float) -> tuple[float, float]:
    """Shape parameter and sag depth ``(a, dz)`` in mm for one ribbon.

    Parameters
    ----------
    rest_length : undeformed ribbon length, mm (> 0)
    dy : distance between the ribbon endpoints, mm (>= 0)

    ``dy >= rest_length`` yields ``(FLAT, 0.0)`` (no buckling). ``dy == 0``
    yields the fully folded limit ``(0.0, rest_length / 2)``. Otherwise ``a``
    solves ``2a*sinh(dy/(2a)) = rest_length`` and ``dz`` is the positive root
    of ``dz**2 + 2*a*dz = (rest_length/2)**2``.
    """
    if rest_length <= 0.0:
        raise InvalidRibbon(f"rest_length must be positive, got {rest_length:g}")
    if dy < 0.0:
        raise InvalidRibbon(f"dy must be non-negative, got {dy:g}")
    if dy >= rest_length:
        return FLAT, 0.0
    if dy == 0.0:
        return 0.0, rest_length / 2.0
    a = _solve_shape_parameter(rest_length, dy)
    if math.isinf(a):
        return FLAT, 0.0
    half = rest_length / 2.0
    # rearranged quadratic root, stable when a >> rest_length
    dz = half * half / (a + math.sqrt(a * a + half * half))
    return a, dz


def catenary_sag(a: float, dy: float) -> float:
    """Sag depth from the shape route: a*(cosh(dy/(2a)) - 1), mm.

    Algebraically equal to the quadratic-root sag in :func:`solve_catenary`;
    written as 2a*sinh^2(dy/(4a)) to stay accurate for shallow arches. Used
    as an independent cross-check of the solved curve.
    """
    if a <= 0.0 or math.isinf(a):
        raise InvalidRibbon("catenary_sag needs a finite positive shape parameter")
    s = math.sinh(dy / (4.0 * a))
    return 2.0 * a * s * s


def ribbon_profile(curve: RibbonCurve, n_samples: int) -> np.ndarray:
    """Sample the buckled profile as an (n_samples, 2) array of (y, z), mm.

    Endpoints sit on the boundary plane (z = 0); odd sample counts place one
    sample exactly at the sag minimum (0, -dz).
    """
    if curve.is_flat:
        raise FlatRibbon("ribbon is not buckled; emit a straight segment instead")
    if n_samples < 3:
        raise ValueError(f"n_samples must be at least 3, got {n_samples}")
    if curve.a <= 0.0:
        raise InvalidRibbon("fully folded ribbon has no open profile")
    y = np.linspace(-curve.dy / 2.0, curve.dy / 2.0, n_samples)
    z = curve.a * np.cosh(y / curve.a) - (curve.a + curve.dz)
    return np.column_stack((y, z))


def ribbon_stations(spec: SheetSpec) -> np.ndarray:
    """Centre stations of the slit-separated ribbons, mm along the pull axis.

    Full-width strips are tiled at ribbon_width pitch (slit kerf taken as
    zero) and the band is centred between the boundary margins, so symmetric
    sheets deform symmetrically.
    """
    span = spec.lx_init - 2.0 * spec.boundary_margin
    count = int(span / spec.ribbon_width + 1e-9)
    if count <= 0:
        return np.empty(0)
    start = (spec.lx_init - count * spec.ribbon_width) / 2.0
    return start + (np.arange(count) + 0.5) * spec.ribbon_width


def layout_ribbons(spec: SheetSpec, state: DeformedState) -> RibbonLayout:
    """Solve every ribbon's catenary at the given boundary state.

    Rest lengths are chords of the undeformed ellipse at the ribbon centre
    stations; the deformed endpoint span is the chord at the same normalised
    station, which makes all ribbons buckle with the same span-to-length
    ratio. Strips whose rest chord is shorter than twice the ribbon width are
    dropped as unmanufacturable ellipse-tip slivers.
    """
    rest_state = deform(spec, 0.0)
    stretch = state.lx / spec.lx_init  # exactly 1.0 when undeformed
    curves = []
    for x0 in ribbon_stations(spec):
        rest = boundary_chord(rest_state, x0)
        if rest < 2.0 * spec.ribbon_width:
            continue
        dy = boundary_chord(state, x0 * stretch)
        a, dz = solve_catenary(rest, dy)
        curves.append(
            RibbonCurve(station_frac=x0 / spec.lx_init, rest_length=rest, dy=dy, a=a, dz=dz)
        )
    lz = max((c.dz for c in curves), default=0.0)
    return RibbonLayout(ribbons=tuple(curves), lz=lz)


def deformed_geometry(spec: SheetSpec, delta_x: float) -> tuple[DeformedState, RibbonLayout]:
    """Deform the boundary and solve the ribbons in one call.

    Returns a state whose ``lz`` carries the bowl depth, plus the layout.
    """
    state = deform(spec, delta_x)
    layout = layout_ribbons(spec, state)
    return replace(state, lz=layout.lz), layout
