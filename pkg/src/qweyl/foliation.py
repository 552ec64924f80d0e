"""Many-mode limit probed through test functions and vacuum overlaps.

Test functions ``F = f + i g`` are sampled on a uniform grid; their scalar
product is built from the real weighted dot product ``(f, g)``. Rescaling
``f -> f/rho``, ``g -> rho g`` leaves the imaginary (symplectic) part alone.

Inequivalence of differently labelled representations is witnessed by the
overlap between the reference vacuum and the vacuum rotated by ``S(eps)``.
For ``M`` independent modes with the same ``eps`` the overlap is the
single-mode value to the power ``M``, which goes to zero as ``M`` grows
whenever ``eps != 0``. Multimode states are never built explicitly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DimensionError, IncompatibleGridError, SingularScalingError
from .fock import _real_epsilon, squeeze_generator

__all__ = [
    "FoliationScan",
    "TestFunction",
    "closed_form_overlap",
    "foliation_scan",
    "overlap_convergence",
    "per_mode_vacuum_overlap",
    "relative_deformation",
    "scalar_product",
    "scale_test_function",
    "transformed_vacuum_overlap",
]


@dataclass(frozen=True)
class TestFunction:
    """Samples of ``F = f + i g`` on a uniform grid with quadrature weight ``grid_weight``."""

    __test__ = False  # keep pytest from collecting this class

    f: np.ndarray
    g: np.ndarray
    grid_weight: float = 1.0

    def __post_init__(self):
        f = np.array(self.f, dtype=float).reshape(-1)
        g = np.array(self.g, dtype=float).reshape(-1)
        if f.size == 0 or f.size != g.size:
            raise IncompatibleGridError(
                f"f and g need equal nonzero length, got {f.size} and {g.size}"
            )
        if not (self.grid_weight > 0 and math.isfinite(self.grid_weight)):
            raise IncompatibleGridError(f"grid weight must be positive, got {self.grid_weight}")
        if not (np.all(np.isfinite(f)) and np.all(np.isfinite(g))):
            raise ValueError("test function samples must be finite")
        f.setflags(write=False)
        g.setflags(write=False)
        object.__setattr__(self, "f", f)
        object.__setattr__(self, "g", g)
        object.__setattr__(self, "grid_weight", float(self.grid_weight))

    def __add__(self, other: "TestFunction") -> "TestFunction":
        _check_compatible(self, other)
        return TestFunction(self.f + other.f, self.g + other.g, self.grid_weight)

    def __mul__(self, a: float) -> "TestFunction":
        return TestFunction(a * self.f, a * self.g, self.grid_weight)

    __rmul__ = __mul__


def _check_compatible(F1: TestFunction, F2: TestFunction) -> None:
    if F1.f.size != F2.f.size or F1.grid_weight != F2.grid_weight:
        raise IncompatibleGridError(
            f"grids differ: {F1.f.size} samples @ {F1.grid_weight} vs "
            f"{F2.f.size} samples @ {F2.grid_weight}"
        )


def scalar_product(F1: TestFunction, F2: TestFunction) -> complex:
    """``(f1,f2) + (g1,g2) + i[(f1,g2) - (f2,g1)]`` with the weighted real dot product."""
    _check_compatible(F1, F2)
    w = F1.grid_weight
    re = w * (np.dot(F1.f, F2.f) + np.dot(F1.g, F2.g))
    im = w * (np.dot(F1.f, F2.g) - np.dot(F2.f, F1.g))
    return complex(re, im)


def scale_test_function(F: TestFunction, rho: float) -> TestFunction:
    """``f -> f / rho``, ``g -> rho g``."""
    rho = float(rho)
    if rho == 0 or not math.isfinite(rho):
        raise SingularScalingError(f"rho must be finite and nonzero, got {rho}")
    return TestFunction(F.f / rho, rho * F.g, F.grid_weight)


def closed_form_overlap(epsilon: float) -> float:
    """``<0|S(eps)|0> = cosh(eps)**-1/2`` for the untruncated mode."""
    return 1.0 / math.sqrt(math.cosh(epsilon))


def per_mode_vacuum_overlap(epsilon: float, n: int = 64) -> float:
    """``<0|S(eps)|0>`` from the truncated squeeze matrix."""
    if n < 16:
        raise DimensionError(f"per-mode overlap needs n >= 16, got {n}")
    eps = _real_epsilon(epsilon)
    if eps == 0.0:
        return 1.0
    return float(squeeze_generator(n, eps).entries[0, 0].real)


def transformed_vacuum_overlap(eps1: float, eps2: float, n: int = 64) -> float:
    """``<0|S(eps1)_dag S(eps2)|0>``: overlap of two differently rotated vacua."""
    s1 = squeeze_generator(n, eps1).entries
    s2 = squeeze_generator(n, eps2).entries
    return float((s1.conj().T @ s2)[0, 0].real)


def relative_deformation(eps1: float, eps2: float) -> float:
    """Relative Bogoliubov parameter ``eps2 - eps1``; the vacuum overlap depends only on it."""
    return _real_epsilon(eps2) - _real_epsilon(eps1)


@dataclass(frozen=True)
class FoliationScan:
    """Multimode vacuum overlaps ``per_mode_overlap ** M`` for each ``M`` in ``mode_counts``."""

    epsilon: float
    mode_counts: list[int]
    per_mode_overlap: float
    products: list[float]
    matrix_dim: int

    def rows(self) -> list[dict]:
        return [{"M": m, "overlap": p} for m, p in zip(self.mode_counts, self.products)]


def foliation_scan(epsilon: float, mode_counts, n: int = 64) -> FoliationScan:
    """Vacuum overlaps for ``M`` identical independently deformed modes.

    ``mode_counts`` is kept in the given order.
    """
    counts = [int(m) for m in mode_counts]
    if not counts:
        raise ValueError("mode_counts must be nonempty")
    if any(m < 1 for m in counts):
        raise ValueError(f"mode counts must be >= 1, got {counts}")
    per_mode = per_mode_vacuum_overlap(epsilon, n)
    products = [per_mode**m for m in counts]
    return FoliationScan(float(_real_epsilon(epsilon)), counts, per_mode, products, int(n))


def overlap_convergence(epsilon: float, dims=(16, 32, 64, 128)) -> list[tuple[int, float]]:
    """``(n, |<0|S|0>_n - closed form|)`` for each truncation ``n``."""
    ref = closed_form_overlap(epsilon)
    return [(n, abs(per_mode_vacuum_overlap(epsilon, n) - ref)) for n in dims]
