import numpy as np
import pytest

from kirisheet import (
    MeasurementRow,
    MeasurementSet,
    SheetSpec,
    deform,
    deformed_geometry,
    sheet_preset,
    stiffness_preset,
    tensile_force,
)


@pytest.fixture(scope="session")
def sheet_e() -> SheetSpec:
    return sheet_preset("E")


@pytest.fixture(scope="session")
def sheet_a() -> SheetSpec:
    return sheet_preset("A")


@pytest.fixture(scope="session")
def constants_e():
    return stiffness_preset("E")


SWEEP_DELTAS = (2.5, 5.0, 7.5, 10.0, 12.5)


def model_forces(spec, constants, deltas) -> np.ndarray:
    return np.array([tensile_force(deform(spec, d), constants) for d in deltas])


def synthetic_measurements(spec, constants, deltas=SWEEP_DELTAS, noise=None,
                           with_geometry=False) -> MeasurementSet:
    """MeasurementSet generated from the model itself, optionally with force noise."""
    forces = model_forces(spec, constants, deltas)
    if noise is not None:
        forces = forces + np.asarray(noise, dtype=float)
    rows = []
    for d, f in zip(deltas, forces):
        if with_geometry:
            state, layout = deformed_geometry(spec, d)
            rows.append(MeasurementRow(delta_x=d, width=state.ly, depth=layout.lz,
                                       force=float(f)))
        else:
            rows.append(MeasurementRow(delta_x=d, force=float(f)))
    return MeasurementSet(sheet=spec, rows=tuple(rows))


def random_spec(rng: np.random.Generator) -> SheetSpec:
    """Random valid sheet with sane manufacturable proportions."""
    lx = rng.uniform(10.0, 60.0)
    ly = rng.uniform(10.0, 60.0)
    width = rng.uniform(0.5, 3.0)
    return SheetSpec(
        name="random",
        lx_init=lx,
        ly_init=ly,
        ribbon_width=width,
        thickness=rng.uniform(0.1, 1.0),
        material="PET",
    )
