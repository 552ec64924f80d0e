"""Single-mode Weyl system on the truncated Fock space.

``U(a) = exp(i a p)``, ``V(b) = exp(i b x)`` and the Weyl operator

    W(alpha + i beta) = exp(i alpha beta) V(sqrt2 alpha) U(sqrt2 beta),

which obeys ``W(z1) W(z2) = exp(-i Im(conj(z1) z2)) W(z1 + z2)``. The
rho-labelled family evaluates ``W`` at ``rho alpha + i beta / rho``; the
area ``Im(conj(z1) z2)`` and hence the composition phase are unchanged.

Matrix identities hold only on a leading block and improve with ``n``.
"""

from __future__ import annotations

import cmath
import math
import warnings
from dataclasses import dataclass

import numpy as np

from .checks import CheckResult, max_abs_dev
from .errors import SingularScalingError
from .fock import OperatorMatrix, _check_dim, quadratures
from .linalg import expm

__all__ = [
    "ScaledWeylLabel",
    "TruncationWarning",
    "WeylLabel",
    "composition_check",
    "composition_convergence",
    "displacement",
    "scale_label",
    "scaled_composition_check",
    "scaled_weyl_W",
    "symplectic_area",
    "symplectic_invariance_check",
    "validated_radius",
    "weyl_U",
    "weyl_V",
    "weyl_W",
    "weyl_relation_checks",
]


class TruncationWarning(UserWarning):
    """Displacement too large for the requested Fock dimension."""


@dataclass(frozen=True)
class WeylLabel:
    alpha: float
    beta: float

    def __post_init__(self):
        object.__setattr__(self, "alpha", float(self.alpha))
        object.__setattr__(self, "beta", float(self.beta))

    @property
    def z(self) -> complex:
        return complex(self.alpha, self.beta)

    @classmethod
    def from_complex(cls, z) -> "WeylLabel":
        z = complex(z)
        return cls(z.real, z.imag)


@dataclass(frozen=True)
class ScaledWeylLabel:
    base: WeylLabel
    rho: float

    def __post_init__(self):
        if self.rho == 0 or not math.isfinite(self.rho):
            raise SingularScalingError(f"rho must be finite and nonzero, got {self.rho}")

    @property
    def scaled(self) -> WeylLabel:
        return WeylLabel(self.rho * self.base.alpha, self.base.beta / self.rho)

    @property
    def scaled_z(self) -> complex:
        return self.scaled.z


def _as_label(z) -> WeylLabel:
    return z if isinstance(z, WeylLabel) else WeylLabel.from_complex(z)


def validated_radius(n: int) -> float:
    """Largest ``|z|`` treated as safe at dimension ``n`` (2 at ``n = 128``)."""
    return 2.0 * math.sqrt(n / 128)


def _warn_range(n: int, z: complex) -> None:
    if abs(z) > validated_radius(n):
        warnings.warn(
            f"|z| = {abs(z):.3g} exceeds the validated radius {validated_radius(n):.3g} "
            f"at n = {n}; increase the Fock dimension",
            TruncationWarning,
            stacklevel=3,
        )


def weyl_U(n: int, alpha: float) -> OperatorMatrix:
    _, p = quadratures(n)
    return OperatorMatrix(expm(1j * float(alpha) * p.entries))


def weyl_V(n: int, beta: float) -> OperatorMatrix:
    x, _ = quadratures(n)
    return OperatorMatrix(expm(1j * float(beta) * x.entries))


def weyl_W(n: int, label) -> OperatorMatrix:
    """Phased product ``exp(i alpha beta) V(sqrt2 alpha) U(sqrt2 beta)``.

    ``label`` is a :class:`WeylLabel` or a complex number ``alpha + i beta``.
    """
    n = _check_dim(n)
    lab = _as_label(label)
    _warn_range(n, lab.z)
    v = weyl_V(n, math.sqrt(2) * lab.alpha).entries
    u = weyl_U(n, math.sqrt(2) * lab.beta).entries
    return OperatorMatrix(cmath.exp(1j * lab.alpha * lab.beta) * (v @ u))


def displacement(n: int, label) -> OperatorMatrix:
    """Single exponential ``exp(i sqrt2 (alpha x + beta p))``; equals ``W`` in infinite dimension.

    Diagnostic only; :func:`weyl_W` is the definition used everywhere else.
    """
    lab = _as_label(label)
    x, p = quadratures(n)
    return OperatorMatrix(expm(1j * math.sqrt(2) * (lab.alpha * x.entries + lab.beta * p.entries)))


def symplectic_area(z1, z2) -> float:
    """``Im(conj(z1) z2) = alpha1 beta2 - beta1 alpha2``."""
    z1, z2 = _as_label(z1), _as_label(z2)
    return z1.alpha * z2.beta - z1.beta * z2.alpha


def composition_phase(z1, z2) -> complex:
    return cmath.exp(-1j * symplectic_area(z1, z2))


def composition_check(n: int, z1, z2, tol: float = 1e-6) -> CheckResult:
    """``W(z1) W(z2)`` against ``exp(-i Im(conj(z1) z2)) W(z1 + z2)`` on the leading ``n/2`` block."""
    n = _check_dim(n)
    l1, l2 = _as_label(z1), _as_label(z2)
    lhs = weyl_W(n, l1).entries @ weyl_W(n, l2).entries
    rhs = composition_phase(l1, l2) * weyl_W(n, l1.z + l2.z).entries
    b = n // 2
    return CheckResult.compare(
        f"composition[n={n},z1={l1.z:.4g},z2={l2.z:.4g}]", max_abs_dev(lhs[:b, :b], rhs[:b, :b]), tol
    )


def scale_label(label, rho: float) -> ScaledWeylLabel:
    return ScaledWeylLabel(_as_label(label), float(rho))


def scaled_weyl_W(n: int, slabel: ScaledWeylLabel) -> OperatorMatrix:
    return weyl_W(n, slabel.scaled)


def scaled_composition_check(n: int, z1, z2, rho: float, tol: float = 1e-6) -> CheckResult:
    """Composition law of the rho-labelled family, with the phase taken from the unscaled labels."""
    n = _check_dim(n)
    s1, s2 = scale_label(z1, rho), scale_label(z2, rho)
    s12 = scale_label(s1.base.z + s2.base.z, rho)
    lhs = scaled_weyl_W(n, s1).entries @ scaled_weyl_W(n, s2).entries
    rhs = composition_phase(s1.base, s2.base) * scaled_weyl_W(n, s12).entries
    b = n // 2
    return CheckResult.compare(
        f"scaled_composition[n={n},rho={rho:g},z1={s1.base.z:.4g},z2={s2.base.z:.4g}]",
        max_abs_dev(lhs[:b, :b], rhs[:b, :b]),
        tol,
    )


def symplectic_invariance_check(z1, z2, rho: float, tol: float = 1e-14) -> CheckResult:
    """Relative change of ``Im(conj(z1) z2)`` when both labels are rho-scaled."""
    s1, s2 = scale_label(z1, rho), scale_label(z2, rho)
    before = symplectic_area(s1.base, s2.base)
    after = symplectic_area(s1.scaled, s2.scaled)
    scale = max(abs(s1.base.alpha * s2.base.beta), abs(s1.base.beta * s2.base.alpha))
    dev = abs(after - before) / scale if scale > 0 else abs(after - before)
    return CheckResult.compare(f"symplectic_invariance[rho={rho:g}]", dev, tol)


def weyl_relation_checks(n: int, alpha: float, alpha2: float, beta: float, beta2: float,
                         tol: float = 1e-6) -> list[CheckResult]:
    """The three Weyl-system relations on the leading ``n/2`` block.

    ``U(a)U(a') = U(a+a')``, ``V(b)V(b') = V(b+b')`` and
    ``U(a)V(b) = exp(i a b) V(b) U(a)``.
    """
    b = n // 2
    u1, u2 = weyl_U(n, alpha).entries, weyl_U(n, alpha2).entries
    v1, v2 = weyl_V(n, beta).entries, weyl_V(n, beta2).entries
    u12 = weyl_U(n, alpha + alpha2).entries
    v12 = weyl_V(n, beta + beta2).entries
    uv = u1 @ v1
    vu = cmath.exp(1j * alpha * beta) * (v1 @ u1)
    return [
        CheckResult.compare(f"U_group[n={n}]", max_abs_dev((u1 @ u2)[:b, :b], u12[:b, :b]), tol),
        CheckResult.compare(f"V_group[n={n}]", max_abs_dev((v1 @ v2)[:b, :b], v12[:b, :b]), tol),
        CheckResult.compare(f"UV_exchange[n={n}]", max_abs_dev(uv[:b, :b], vu[:b, :b]), tol),
    ]


def composition_convergence(points, dims=(32, 64, 128), rho: float | None = None):
    """Worst composition deviation over all pairs from ``points`` for each dimension.

    Returns a list of ``(n, deviation)``.
    """
    rows = []
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", TruncationWarning)
        for n in dims:
            worst = 0.0
            for z1 in points:
                for z2 in points:
                    if rho is None:
                        r = composition_check(n, z1, z2, tol=np.inf)
                    else:
                        r = scaled_composition_check(n, z1, z2, rho, tol=np.inf)
                    worst = max(worst, r.deviation)
            rows.append((n, worst))
    return rows
