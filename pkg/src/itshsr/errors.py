"""Exception types shared across the package."""


class ItshsrError(Exception):
    """Base class for every error raised by this package."""


class DimensionError(ItshsrError, ValueError):
    """An input has the wrong shape, length, or index range."""


class PhysicsError(ItshsrError, ValueError):
    """A scalar quantity lies outside its meaningful domain."""


class DesignError(ItshsrError, ValueError):
    """A pilot or refraction design is infeasible or malformed."""


class GeometryError(ItshsrError, ValueError):
    """An array geometry cannot support the requested operation."""


class ConfigError(ItshsrError, ValueError):
    """A configuration is unparseable or infeasible to run."""


class CsvFormatError(ItshsrError, ValueError):
    """A sweep CSV file could not be written or does not match the schema."""


class DegenerateInnerProductError(ItshsrError, ArithmeticError):
    """A ratio estimator hit an exactly-zero inner product."""


class SingularMatrixError(ItshsrError, ArithmeticError):
    """A matrix that must be invertible is numerically singular."""
