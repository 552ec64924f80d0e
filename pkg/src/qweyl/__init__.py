"""Numerical q-deformed Weyl-Heisenberg algebra: Bargmann polynomials, truncated
Fock matrices, Weyl systems and a many-mode vacuum-overlap probe."""

__version__ = "0.1.0"

from .bargmann import BargmannPoly, Deformation
from .checks import CheckResult
from .fock import BogoliubovCoefficients, OperatorMatrix
from .foliation import FoliationScan, TestFunction
from .weyl import ScaledWeylLabel, WeylLabel

__all__ = [
    "BargmannPoly",
    "BogoliubovCoefficients",
    "CheckResult",
    "Deformation",
    "FoliationScan",
    "OperatorMatrix",
    "ScaledWeylLabel",
    "TestFunction",
    "WeylLabel",
    "__version__",
]
