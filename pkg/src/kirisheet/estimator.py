"""Scikit-learn compatible wrappers around the deformation and force models.

These adapters let the calibration compose with the wider ecosystem
(pipelines, ``cross_val_score`` with ``LeaveOneOut``, grid search) while the
underlying math lives in :mod:`kirisheet.calibration`.
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, RegressorMixin, TransformerMixin
from sklearn.utils.validation import check_array, check_is_fitted, check_X_y

from .calibration import _solve_constants, design_matrix
from .catenary import deformed_geometry
from .errors import InsufficientData
from .sheet import SheetSpec, resolve_sheet


def _displacement_column(X: np.ndarray) -> np.ndarray:
    if X.ndim != 2 or X.shape[1] != 1:
        raise ValueError(
            f"expected a single displacement column of shape (n, 1) in mm, got {X.shape}"
        )
    return X[:, 0].astype(float)


class TensileForceRegressor(RegressorMixin, BaseEstimator):
    """Predict tensile actuation force (N) from slider displacement (mm).

    Fitting solves the two-column linear least-squares problem for the spring
    constants of one sheet; prediction runs the forward force model at the
    fitted constants.

    Parameters
    ----------
    sheet : SheetSpec or str, default="E"
        Sheet the data was measured on; a spec object, a bundled preset name,
        or a spec JSON path.

    Attributes
    ----------
    constants_ : SpringConstants
        Fitted stiffness pair in N/m.
    coef_ : ndarray of shape (2,)
        ``[kx, ky]`` in N/m, for ecosystem introspection.
    """

    def __init__(self, sheet: SheetSpec | str = "E"):
        self.sheet = sheet

    def fit(self, X, y) -> "TensileForceRegressor":
        X, y = check_X_y(X, y, y_numeric=True)
        deltas = _displacement_column(X)
        if len(deltas) < 2:
            raise InsufficientData(
                f"need at least 2 samples to fit two constants, got {len(deltas)}"
            )
        spec = resolve_sheet(self.sheet)
        self.constants_ = _solve_constants(design_matrix(spec, deltas), y)
        self.coef_ = np.array([self.constants_.kx, self.constants_.ky])
        self.n_features_in_ = 1
        return self

    def predict(self, X) -> np.ndarray:
        check_is_fitted(self, "constants_")
        X = check_array(X)
        deltas = _displacement_column(X)
        spec = resolve_sheet(self.sheet)
        design = design_matrix(spec, deltas)
        return design @ self.coef_


class DeformationTransformer(TransformerMixin, BaseEstimator):
    """Map displacements (mm) to deformed-geometry features.

    Stateless feature construction: each input row ``[delta_x]`` becomes
    ``[lx, ly, lz, theta, delta_y]`` (mm and radians). ``fit`` only validates.
    """

    def __init__(self, sheet: SheetSpec | str = "E"):
        self.sheet = sheet

    def fit(self, X, y=None) -> "DeformationTransformer":
        X = check_array(X)
        _displacement_column(X)
        self.n_features_in_ = 1
        return self

    def transform(self, X) -> np.ndarray:
        X = check_array(X)
        deltas = _displacement_column(X)
        spec = resolve_sheet(self.sheet)
        out = np.empty((len(deltas), 5))
        for i, d in enumerate(deltas):
            state, _ = deformed_geometry(spec, float(d))
            out[i] = (state.lx, state.ly, state.lz, state.theta, state.delta_y)
        return out

    def get_feature_names_out(self, input_features=None) -> np.ndarray:
        return np.asarray(
            ["lx_mm", "ly_mm", "lz_mm", "theta_rad", "delta_y_mm"], dtype=object
        )
