class LatticeError(Exception):
    """Base class for errors raised by this package."""


class DegenerateBasisError(LatticeError, ValueError):
    pass


class DimensionError(LatticeError, ValueError):
    pass


class ResourceLimitError(LatticeError):
    """Instance exceeds the desk-scale limits of an exponential-time solver."""


class InvalidParameterError(LatticeError, ValueError):
    pass


class OracleError(LatticeError):
    """A user-supplied oracle returned something unusable."""
