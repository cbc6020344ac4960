"""Exception types shared across the package."""


class KirisheetError(Exception):
    """Base class for all errors raised by this package."""


class SpecValidationError(KirisheetError, ValueError):
    """A sheet specification (object or JSON file) is invalid."""


class DisplacementOutOfRange(KirisheetError, ValueError):
    """Slider displacement is negative or exceeds the kinematic limit."""


class StationOutOfRange(KirisheetError, ValueError):
    """Requested chord station lies outside the deformed boundary."""


class InvalidRibbon(KirisheetError, ValueError):
    """Ribbon geometry is unphysical or degenerate."""


class FlatRibbon(KirisheetError):
    """Profile requested for an unbuckled ribbon; callers emit a straight segment instead."""


class DegenerateAngle(KirisheetError):
    """Link angle is too close to zero; the force transmission term diverges."""


class InvalidMeasurement(KirisheetError, ValueError):
    """Measurement rows violate ordering or completeness requirements."""


class CsvFormatError(KirisheetError, ValueError):
    """Measurement CSV does not match the expected schema."""


class MissingColumn(KirisheetError, ValueError):
    """Metrics were requested for columns with no data."""


class InsufficientData(KirisheetError, ValueError):
    """Not enough force rows to fit or cross-validate the spring constants."""


class SingularDesign(KirisheetError):
    """Least-squares regressors are (near-)collinear; constants are not identifiable."""


class UnknownConstants(KirisheetError, ValueError):
    """No stiffness constants available for the requested sheet."""


class EmptyGrid(KirisheetError, ValueError):
    """Design sweep grid contains no points."""


class NegativeStiffnessWarning(UserWarning):
    """A fitted spring constant came out negative, which is physically implausible."""
