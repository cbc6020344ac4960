"""Two-spring force model: closed forms, identities, and bundled constants."""

import math

import numpy as np
import pytest

from kirisheet import (
    DegenerateAngle,
    DeformedState,
    SheetSpec,
    SpringConstants,
    UnknownConstants,
    deform,
    force_curve,
    link_force,
    link_length,
    max_displacement,
    stiffness_preset,
    stiffness_table,
    tensile_force,
)


def test_zero_displacement_zero_force(sheet_e, constants_e):
    assert tensile_force(deform(sheet_e, 0.0), constants_e) == 0.0


def test_pure_boundary_spring(sheet_e):
    # ky = 0 decouples the ribbons: force is exactly kx * delta_x (m)
    constants = SpringConstants(kx=100.0, ky=0.0)
    for delta in (1.0, 5.0, 12.0):
        state = deform(sheet_e, delta)
        assert tensile_force(state, constants) == 100.0 * delta / 1000.0


def test_link_force_zero_without_width_reduction(sheet_e, constants_e):
    assert link_force(deform(sheet_e, 0.0), constants_e) == 0.0


def test_link_force_at_45_degrees():
    # construct a state directly with theta = pi/4
    state = DeformedState(delta_x=3.0, lx=20.0, ly=20.0, delta_y=6.0, theta=math.pi / 4)
    constants = SpringConstants(kx=50.0, ky=8.0)
    expected = 8.0 * 6.0 * math.sqrt(2) / 1000.0
    assert link_force(state, constants) == pytest.approx(expected, rel=1e-12)


def test_transmission_identity(sheet_e, constants_e):
    # F_t - kx*dx equals the link force resolved along the pull axis
    for delta in np.linspace(0.5, 13.0, 20):
        state = deform(sheet_e, float(delta))
        lhs = tensile_force(state, constants_e) - constants_e.kx * state.delta_x / 1000.0
        rhs = link_force(state, constants_e) * math.cos(state.theta)
        assert lhs == pytest.approx(rhs, rel=1e-12)


def test_degenerate_angle_rejected(sheet_e, constants_e):
    state = deform(sheet_e, max_displacement(sheet_e))  # theta == 0
    with pytest.raises(DegenerateAngle):
        tensile_force(state, constants_e)
    with pytest.raises(DegenerateAngle):
        link_force(state, constants_e)


def test_force_strictly_increasing_and_convex(sheet_e, constants_e):
    deltas = np.arange(0.0, 13.75, 0.25)
    forces = [tensile_force(deform(sheet_e, float(d)), constants_e) for d in deltas]
    diffs = np.diff(forces)
    assert np.all(diffs > 0.0)
    assert np.all(np.diff(diffs) >= 0.0)


def test_slope_at_zero_pure_kx(sheet_e):
    # with ky = 0 the initial stiffness is exactly kx
    constants = SpringConstants(kx=171.78, ky=0.0)
    h = 1e-6
    slope = tensile_force(deform(sheet_e, h), constants) / h  # N per mm
    assert slope == pytest.approx(constants.kx / 1000.0, rel=1e-3)


def test_slope_at_zero_with_ribbons(sheet_e, constants_e):
    # the ribbon term contributes ky * (lx_init/ly_init)^2 at first order
    h = 1e-6
    slope = tensile_force(deform(sheet_e, h), constants_e) / h
    aspect = sheet_e.lx_init / sheet_e.ly_init
    expected = (constants_e.kx + constants_e.ky * aspect**2) / 1000.0
    assert slope == pytest.approx(expected, rel=1e-3)


def test_force_curve_empty_and_duplicates(sheet_e, constants_e):
    assert force_curve(sheet_e, constants_e, []) == []
    table = force_curve(sheet_e, constants_e, [5.0, 5.0])
    assert table[0] == table[1]


def test_force_curve_matches_pointwise_sweep(sheet_e, constants_e):
    deltas = [2.5, 5.0, 7.5, 10.0, 12.5]
    table = force_curve(sheet_e, constants_e, deltas)
    assert [d for d, _ in table] == deltas
    forces = [f for _, f in table]
    assert forces == sorted(forces)
    for (d, f) in table:
        assert f == tensile_force(deform(sheet_e, d), constants_e)


def test_bundled_constants_values():
    table = stiffness_table()
    assert set(table) == {"A", "B", "C", "D", "E"}
    assert table["E"].constants == SpringConstants(171.78, 9.25)
    assert table["A"].constants == SpringConstants(320.02, 54.07)
    assert table["E"].ribbon_width == 1.0
    assert table["C"].material == "TPU"


def test_bundled_constants_orderings():
    table = {name: rec.constants for name, rec in stiffness_table().items()}
    # thicker sheet stiffer than thinner
    assert table["A"].kx > table["B"].kx
    # wider ribbons push back harder than narrow ones
    assert table["D"].ky > table["E"].ky
    # the TPU sheet is softer than both PET circular sheets
    assert table["C"].kx < table["A"].kx and table["C"].kx < table["B"].kx
    assert table["C"].ky < table["A"].ky and table["C"].ky < table["B"].ky


def test_stiffness_preset_lookup():
    assert stiffness_preset("e") == SpringConstants(171.78, 9.25)
    with pytest.raises(UnknownConstants):
        stiffness_preset("Z")


def test_force_scale_with_link_angle():
    # same delta_y costs more force when the linkage is flatter
    spec_wide = SheetSpec(name="w", lx_init=40.0, ly_init=20.0, ribbon_width=2.0,
                          thickness=0.25)
    constants = SpringConstants(kx=0.0, ky=10.0)
    llink = link_length(spec_wide)
    assert llink > 0
    states = [deform(spec_wide, d) for d in (1.0, 4.0)]
    # normalise by delta_y: the transmission factor 1/tan(theta) grows
    factors = [tensile_force(s, constants) / s.delta_y for s in states]
    assert factors[1] > factors[0]
