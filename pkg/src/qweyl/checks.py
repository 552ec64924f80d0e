from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class CheckResult:
    """Outcome of one numerical identity check: measured deviation against a threshold."""

    name: str
    deviation: float
    tolerance: float
    passed: bool

    @classmethod
    def compare(cls, name: str, deviation: float, tolerance: float) -> "CheckResult":
        deviation = float(deviation)
        return cls(name, deviation, float(tolerance), bool(deviation <= tolerance))

    def as_dict(self) -> dict:
        return {
            "name": self.name,
            "deviation": self.deviation,
            "tolerance": self.tolerance,
            "pass": self.passed,
        }


def max_abs_dev(a, b) -> float:
    """Largest entrywise modulus of ``a - b``."""
    d = np.abs(np.asarray(a) - np.asarray(b))
    return float(d.max()) if d.size else 0.0
