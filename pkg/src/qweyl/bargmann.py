"""Weyl-Heisenberg and q-deformed WH algebras on truncated entire functions.

A function ``f(zeta) = sum_k c_k zeta**k`` is stored by its monomial
coefficients up to a cutoff degree ``D``. The undeformed algebra acts as

* creation ``zeta``           (shift up one degree),
* annihilation ``d/dzeta``    (``k c_k`` moves to degree ``k - 1``),
* number ``zeta d/dzeta``     (``c_k -> k c_k``),

and the deformed annihilator is the Jackson finite difference
``D_q f(zeta) = (f(q zeta) - f(zeta)) / ((q - 1) zeta)``, which sends
``zeta**k`` to ``[k]_q zeta**(k-1)`` with ``[k]_q = (q**k - 1)/(q - 1)``.

All matrices in this module are written in the monomial basis, which is
not orthonormal; comparisons are entrywise and algebraic.
"""

from __future__ import annotations

import cmath
from functools import lru_cache
from dataclasses import dataclass, field
from typing import Callable, Literal

import numpy as np

from .checks import CheckResult, max_abs_dev
from .errors import (
    CutoffOverflowError,
    DegenerateDeformationError,
    DegreeOutOfRangeError,
    RealParameterRequiredError,
    SingularScalingError,
)
from .linalg import expm

__all__ = [
    "BargmannPoly",
    "Deformation",
    "OverflowPolicy",
    "apply_annihilation",
    "apply_creation",
    "apply_number",
    "ccr_defect",
    "dilation",
    "monomial",
    "number_exponential_identity_check",
    "number_identity_defect",
    "operator_matrix",
    "q_commutator",
    "q_derivative",
    "q_number",
    "squeeze_exponent_matrix",
]

OverflowPolicy = Literal["strict", "project"]

# below this |q - 1| the closed form (q**k - 1)/(q - 1) loses digits to cancellation
_SUMMATION_THRESHOLD = 1e-3
_REL = 4 * np.finfo(float).eps


@dataclass(frozen=True)
class Deformation:
    """Deformation label ``q = exp(epsilon)`` with ``rho = 1/q``.

    Build it with :meth:`from_epsilon`, :meth:`from_q` or :meth:`from_rho`;
    the direct constructor validates that the three fields agree.
    """

    epsilon: complex
    q: complex
    rho: complex

    def __post_init__(self):
        eps, q, rho = complex(self.epsilon), complex(self.q), complex(self.rho)
        for name, val in (("epsilon", eps), ("q", q), ("rho", rho)):
            if not cmath.isfinite(val):
                raise ValueError(f"{name} must be finite, got {val}")
        if q == 0 or rho == 0:
            raise SingularScalingError("q and rho must be nonzero")
        if abs(cmath.exp(eps) - q) > 8 * _REL * max(1.0, abs(q)):
            raise ValueError(f"q={q} is not exp(epsilon={eps})")
        if abs(q * rho - 1) > 8 * _REL:
            raise ValueError(f"rho={rho} is not 1/q for q={q}")
        object.__setattr__(self, "epsilon", eps)
        object.__setattr__(self, "q", q)
        object.__setattr__(self, "rho", rho)

    @classmethod
    def from_epsilon(cls, epsilon) -> "Deformation":
        eps = complex(epsilon)
        return cls(eps, cmath.exp(eps), cmath.exp(-eps))

    @classmethod
    def from_q(cls, q) -> "Deformation":
        q = complex(q)
        if q == 0:
            raise SingularScalingError("q = 0 has no logarithm")
        return cls(cmath.log(q), q, 1 / q)

    @classmethod
    def from_rho(cls, rho) -> "Deformation":
        rho = complex(rho)
        if rho == 0:
            raise SingularScalingError("rho must be nonzero")
        return cls(-cmath.log(rho), 1 / rho, rho)

    @property
    def is_real(self) -> bool:
        return self.epsilon.imag == 0.0

    @property
    def is_trivial(self) -> bool:
        return self.q == 1

    def real_epsilon(self) -> float:
        """``epsilon`` as a float; only for operations defined for real deformation."""
        if not self.is_real:
            raise RealParameterRequiredError(f"real epsilon required, got {self.epsilon}")
        return self.epsilon.real


@dataclass(frozen=True)
class BargmannPoly:
    """Polynomial ``sum_k coeffs[k] zeta**k`` truncated at degree ``len(coeffs) - 1``.

    ``overflow`` is set when a ``project`` policy dropped a coefficient that
    would have landed above the cutoff.
    """

    coeffs: np.ndarray
    overflow: bool = field(default=False, compare=False)

    def __post_init__(self):
        c = np.array(self.coeffs, dtype=complex).reshape(-1)
        if c.size == 0:
            raise DegreeOutOfRangeError("a polynomial needs at least one coefficient")
        c.setflags(write=False)
        object.__setattr__(self, "coeffs", c)

    @classmethod
    def _trusted(cls, coeffs: np.ndarray, overflow: bool = False) -> "BargmannPoly":
        # skips validation; coeffs must be a fresh 1-d complex array
        coeffs.setflags(write=False)
        obj = object.__new__(cls)
        object.__setattr__(obj, "coeffs", coeffs)
        object.__setattr__(obj, "overflow", overflow)
        return obj

    @property
    def cutoff_degree(self) -> int:
        return self.coeffs.size - 1

    @classmethod
    def zeros(cls, cutoff_degree: int) -> "BargmannPoly":
        if cutoff_degree < 0:
            raise DegreeOutOfRangeError(f"cutoff degree must be >= 0, got {cutoff_degree}")
        return cls(np.zeros(cutoff_degree + 1, dtype=complex))

    def with_cutoff(self, cutoff_degree: int) -> "BargmannPoly":
        """Zero-pad to a larger cutoff, or drop top coefficients (which must vanish)."""
        n = cutoff_degree + 1
        if n >= self.coeffs.size:
            out = np.zeros(n, dtype=complex)
            out[: self.coeffs.size] = self.coeffs
            return BargmannPoly._trusted(out, self.overflow)
        if np.any(self.coeffs[n:] != 0):
            raise CutoffOverflowError(
                f"cannot lower cutoff to {cutoff_degree}: nonzero coefficients above it"
            )
        return BargmannPoly._trusted(self.coeffs[:n].copy(), self.overflow)

    def __call__(self, zeta):
        return np.polynomial.polynomial.polyval(zeta, self.coeffs)

    def __add__(self, other: "BargmannPoly") -> "BargmannPoly":
        return BargmannPoly._trusted(self.coeffs + other.coeffs, self.overflow or other.overflow)

    def __sub__(self, other: "BargmannPoly") -> "BargmannPoly":
        return BargmannPoly._trusted(self.coeffs - other.coeffs, self.overflow or other.overflow)

    def __mul__(self, scalar) -> "BargmannPoly":
        return BargmannPoly(self.coeffs * scalar, self.overflow)

    __rmul__ = __mul__


def monomial(k: int, D: int) -> BargmannPoly:
    """``zeta**k`` at cutoff degree ``D``."""
    if D < 0 or not 0 <= k <= D:
        raise DegreeOutOfRangeError(f"need 0 <= k <= D, got k={k}, D={D}")
    c = np.zeros(D + 1, dtype=complex)
    c[k] = 1.0
    return BargmannPoly(c)


def apply_creation(p: BargmannPoly, policy: OverflowPolicy = "strict") -> BargmannPoly:
    """Multiply by ``zeta``.

    The top coefficient has nowhere to go: ``strict`` raises
    :class:`CutoffOverflowError` if it is nonzero, ``project`` drops it and
    flags the result.
    """
    if policy not in ("strict", "project"):
        raise ValueError(f"unknown overflow policy {policy!r}")
    c = p.coeffs
    lost = c[-1] != 0
    if lost and policy == "strict":
        raise CutoffOverflowError(
            f"zeta * p exceeds cutoff degree {p.cutoff_degree} (top coefficient {c[-1]})"
        )
    out = np.zeros_like(c)
    out[1:] = c[:-1]
    return BargmannPoly._trusted(out, p.overflow or bool(lost))


def apply_annihilation(p: BargmannPoly) -> BargmannPoly:
    c = p.coeffs
    out = np.zeros_like(c)
    out[:-1] = np.arange(1, c.size) * c[1:]
    return BargmannPoly._trusted(out, p.overflow)


def apply_number(p: BargmannPoly) -> BargmannPoly:
    return BargmannPoly._trusted(np.arange(p.coeffs.size) * p.coeffs, p.overflow)


def q_number(k, q: complex) -> np.ndarray:
    """Basic number ``[k]_q = (q**k - 1)/(q - 1)`` for integer ``k >= 0``.

    Close to ``q = 1`` the finite geometric sum ``1 + q + ... + q**(k-1)`` is
    used instead of the quotient. ``q = 1`` gives ``k``.
    """
    k = np.asarray(k, dtype=int)
    q = complex(q)
    if abs(q - 1) >= _SUMMATION_THRESHOLD:
        return (q ** k.astype(float) - 1) / (q - 1)
    kmax = int(k.max()) if k.size else 0
    partial = np.concatenate(([0.0], np.cumsum(q ** np.arange(kmax, dtype=float))))
    return partial[k]


@lru_cache(maxsize=256)
def _q_number_table(q: complex, size: int) -> np.ndarray:
    table = q_number(np.arange(size), q)
    table.setflags(write=False)
    return table


@lru_cache(maxsize=256)
def _power_table(q: complex, size: int) -> np.ndarray:
    table = q ** np.arange(size, dtype=float)
    table.setflags(write=False)
    return table


def q_derivative(p: BargmannPoly, d: Deformation) -> BargmannPoly:
    """Jackson derivative: ``zeta**k -> [k]_q zeta**(k-1)``."""
    if d.is_trivial:
        raise DegenerateDeformationError("the q-derivative needs q != 1")
    c = p.coeffs
    out = np.zeros_like(c)
    out[:-1] = _q_number_table(d.q, c.size)[1:] * c[1:]
    return BargmannPoly._trusted(out, p.overflow)


def dilation(p: BargmannPoly, d: Deformation) -> BargmannPoly:
    """``q**N``: evaluates ``p`` at ``q * zeta``."""
    return BargmannPoly._trusted(_power_table(d.q, p.coeffs.size) * p.coeffs, p.overflow)


def q_commutator(p: BargmannPoly, d: Deformation) -> BargmannPoly:
    """``(D_q zeta - zeta D_q) p`` from the creation and q-derivative actions.

    The composite preserves degree, but ``zeta * p`` alone does not; the
    intermediate steps run at cutoff ``D + 1`` so the result is exact at ``D``.
    """
    if d.is_trivial:
        raise DegenerateDeformationError("the q-commutator needs q != 1")
    D = p.cutoff_degree
    wide = p.with_cutoff(D + 1)
    lowered_after = q_derivative(apply_creation(wide), d)
    raised_after = apply_creation(q_derivative(wide, d))
    return (lowered_after - raised_after).with_cutoff(D)


def operator_matrix(op: Callable[[BargmannPoly], BargmannPoly], D: int) -> np.ndarray:
    """Matrix of a linear map on polynomials of degree <= D, columns indexed by monomial."""
    cols = [op(monomial(k, D)).coeffs for k in range(D + 1)]
    return np.stack(cols, axis=1)


def _extended_ladder(D: int, pad: int = 2) -> tuple[np.ndarray, np.ndarray]:
    # creation/annihilation at cutoff D + pad; leading (D+1) blocks of quadratic
    # composites are then free of truncation
    E = D + pad
    zeta = operator_matrix(lambda p: apply_creation(p, policy="project"), E)
    ddz = operator_matrix(apply_annihilation, E)
    return zeta, ddz


def squeeze_exponent_matrix(D: int) -> np.ndarray:
    """Monomial-basis matrix of ``c~**2 - c~dag**2`` with ``c~ = (zeta + d/dzeta)/sqrt 2``,
    ``c~dag = (zeta - d/dzeta)/sqrt 2``.

    The ``1/sqrt 2`` factors are collected into one exact ``1/2`` so that all
    intermediate entries are integers.
    """
    zeta, ddz = _extended_ladder(D)
    plus = zeta + ddz
    minus = zeta - ddz
    m = 0.5 * (plus @ plus - minus @ minus)
    return m[: D + 1, : D + 1]


def number_identity_defect(D: int) -> float:
    """Max entrywise gap between ``(c~**2 - c~dag**2)/2 - 1/2`` and ``zeta d/dzeta``."""
    lhs = 0.5 * squeeze_exponent_matrix(D) - 0.5 * np.eye(D + 1)
    return max_abs_dev(lhs, operator_matrix(apply_number, D))


def ccr_defect(p: BargmannPoly) -> float:
    """``max |(a a_dag - a_dag a) p - p|`` for ``p`` with vanishing top coefficient."""
    up_down = apply_annihilation(apply_creation(p))
    down_up = apply_creation(apply_annihilation(p))
    return max_abs_dev((up_down - down_up).coeffs, p.coeffs)


def number_exponential_identity_check(D: int, d: Deformation, tol: float) -> CheckResult:
    """Compare ``q**N`` with ``q**(-1/2) exp((epsilon/2)(c~**2 - c~dag**2))`` at cutoff ``D``.

    The left side comes from the dilation action on monomials, the right side
    from exponentiating the composite built out of ``zeta`` and ``d/dzeta``.
    Entries grow like ``|q|**D``, so each entry's deviation is measured
    relative to ``max(1, |lhs entry|)``.
    """
    if D < 2:
        raise DegreeOutOfRangeError(f"identity check needs D >= 2, got {D}")
    lhs = operator_matrix(lambda p: dilation(p, d), D)
    gen = squeeze_exponent_matrix(D)
    rhs = cmath.exp(-d.epsilon / 2) * expm((d.epsilon / 2) * gen)
    dev = float(np.max(np.abs(lhs - rhs) / np.maximum(1.0, np.abs(lhs))))
    return CheckResult.compare(f"number_exponential_identity[D={D},eps={d.epsilon:.6g}]", dev, tol)
