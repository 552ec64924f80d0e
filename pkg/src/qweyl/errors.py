"""Exception types raised across the package."""


class QWeylError(Exception):
    """Base class for all package errors."""


class DegreeOutOfRangeError(QWeylError, ValueError):
    pass


class CutoffOverflowError(QWeylError, ArithmeticError):
    """Raised under the ``strict`` policy when ``zeta * p`` leaves the truncated space."""


class DegenerateDeformationError(QWeylError, ValueError):
    """Raised where the q-derivative denominator ``q - 1`` vanishes."""


class RealParameterRequiredError(QWeylError, ValueError):
    pass


class SingularScalingError(QWeylError, ValueError):
    pass


class DimensionError(QWeylError, ValueError):
    pass


class IncompatibleGridError(QWeylError, ValueError):
    pass
