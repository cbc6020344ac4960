"""Buckling kirigami sheet toolkit.

Predicts the deformed 3D geometry and actuation force of slit kirigami sheets
(four-bar boundary kinematics plus catenary ribbon buckling), calibrates the
two lumped spring constants from experimental data, exports the deformed
shape, and searches the design space for grasp requirements.

The scikit-learn adapters live in :mod:`kirisheet.estimator` and are not
imported here, so the core stays light for command-line use.
"""

__version__ = "0.1.0"

from .calibration import (
    LARGE_DISPLACEMENT_CUTOFF_MM,
    MEASUREMENT_HEADER,
    FitReport,
    GeometryMetrics,
    LoocvRecord,
    LoocvResult,
    MeasurementRow,
    MeasurementSet,
    design_matrix,
    evaluate_fit,
    fit_spring_constants,
    geometry_metrics,
    loocv,
    read_measurement_csv,
)
from .catenary import (
    FLAT,
    RibbonCurve,
    RibbonLayout,
    catenary_sag,
    deformed_geometry,
    layout_ribbons,
    ribbon_profile,
    ribbon_stations,
    solve_catenary,
)
from .design import (
    DESIGN_CSV_HEADER,
    NEAREST,
    DesignCandidate,
    DesignInput,
    GraspRequirement,
    design_csv_lines,
    evaluate_design,
    load_design_input,
    resolve_constants,
    sweep_designs,
    write_design_csv,
)
from .errors import (
    CsvFormatError,
    DegenerateAngle,
    DisplacementOutOfRange,
    EmptyGrid,
    FlatRibbon,
    InsufficientData,
    InvalidMeasurement,
    InvalidRibbon,
    KirisheetError,
    MissingColumn,
    NegativeStiffnessWarning,
    SingularDesign,
    SpecValidationError,
    StationOutOfRange,
    UnknownConstants,
)
from .force import (
    ANGLE_EPSILON,
    MM_PER_M,
    SpringConstants,
    StiffnessRecord,
    force_curve,
    link_force,
    stiffness_preset,
    stiffness_table,
    tensile_force,
)
from .linkage import (
    DeformedState,
    boundary_chord,
    deform,
    link_length,
    max_displacement,
)
from .shape import (
    ShapeModel,
    build_shape,
    export_csv_pointcloud,
    export_obj,
    export_shape,
)
from .sheet import (
    SheetSpec,
    load_sheet_spec,
    preset_names,
    resolve_sheet,
    sheet_preset,
    sheet_spec_from_dict,
)
