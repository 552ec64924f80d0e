"""Truncated Fock-space matrices for one bosonic mode.

Basis ``|0>, ..., |n-1>``. Truncation spoils the ccr only in the top corner:
``c c_dag - c_dag c = diag(1, ..., 1, -(n-1))``. Identities involving
products of ladder operators are therefore compared on a leading block of
Fock indices ``0 .. block-1``, and accuracy is judged by how the deviation
shrinks as ``n`` grows.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .checks import CheckResult, max_abs_dev
from .errors import DimensionError, RealParameterRequiredError, SingularScalingError
from .linalg import expm

__all__ = [
    "BogoliubovCoefficients",
    "OperatorMatrix",
    "bargmann_generator",
    "bogoliubov_conjugate",
    "ccr_matrix",
    "cross_representation_check",
    "equivalence_convergence",
    "generator_equivalence_check",
    "ladder_pair",
    "number_operator",
    "quadratures",
    "scaled_quadratures",
    "squeeze_generator",
    "transformed_ladder",
]


@dataclass(frozen=True, eq=False)
class OperatorMatrix:
    """Dense complex matrix on the truncated Fock basis.

    ``tag`` records how the matrix was built (``annihilation``, ``creation``,
    ``number``, ``quadrature`` or ``general``) and is only used in reprs.
    """

    entries: np.ndarray
    tag: str = "general"

    def __post_init__(self):
        a = np.array(self.entries, dtype=complex)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise DimensionError(f"operator matrix must be square, got shape {a.shape}")
        if a.shape[0] < 2:
            raise DimensionError(f"dimension must be >= 2, got {a.shape[0]}")
        if not np.all(np.isfinite(a)):
            raise ValueError("operator matrix has non-finite entries")
        a.setflags(write=False)
        object.__setattr__(self, "entries", a)

    @property
    def dim(self) -> int:
        return self.entries.shape[0]

    @property
    def dag(self) -> "OperatorMatrix":
        return OperatorMatrix(self.entries.conj().T)

    def block(self, k: int) -> np.ndarray:
        """Leading ``k x k`` submatrix (Fock indices ``0 .. k-1``)."""
        return self.entries[:k, :k]

    def __array__(self, dtype=None, copy=None):
        return self.entries if dtype is None else self.entries.astype(dtype)

    def __matmul__(self, other):
        return OperatorMatrix(self.entries @ np.asarray(other))

    def __add__(self, other):
        return OperatorMatrix(self.entries + np.asarray(other))

    def __sub__(self, other):
        return OperatorMatrix(self.entries - np.asarray(other))

    def __mul__(self, scalar):
        return OperatorMatrix(self.entries * scalar)

    __rmul__ = __mul__

    def __neg__(self):
        return OperatorMatrix(-self.entries)

    def __repr__(self):
        return f"OperatorMatrix(dim={self.dim}, tag={self.tag!r})"


@dataclass(frozen=True)
class BogoliubovCoefficients:
    """``u = (rho + 1/rho)/2``, ``v = (rho - 1/rho)/2`` with ``rho = exp(-epsilon)``."""

    u: float
    v: float
    rho: float
    epsilon: float

    @classmethod
    def from_rho(cls, rho: float) -> "BogoliubovCoefficients":
        rho = _real_scale(rho)
        return cls(0.5 * (rho + 1 / rho), 0.5 * (rho - 1 / rho), rho, -math.log(abs(rho)))

    @classmethod
    def from_epsilon(cls, epsilon: float) -> "BogoliubovCoefficients":
        return cls.from_rho(math.exp(-_real_epsilon(epsilon)))

    @property
    def symplectic_defect(self) -> float:
        """``|u**2 - v**2 - 1|``."""
        return abs(self.u**2 - self.v**2 - 1.0)


def _check_dim(n: int) -> int:
    if int(n) != n or n < 2:
        raise DimensionError(f"Fock dimension must be an integer >= 2, got {n}")
    return int(n)


def _real_epsilon(epsilon) -> float:
    if isinstance(epsilon, complex) or np.iscomplexobj(epsilon):
        if complex(epsilon).imag != 0:
            raise RealParameterRequiredError(
                f"squeezing is defined here for real epsilon only, got {epsilon}"
            )
        epsilon = complex(epsilon).real
    epsilon = float(epsilon)
    if not math.isfinite(epsilon):
        raise RealParameterRequiredError(f"epsilon must be finite, got {epsilon}")
    return epsilon


def _real_scale(rho) -> float:
    if isinstance(rho, complex) or np.iscomplexobj(rho):
        if complex(rho).imag != 0:
            raise RealParameterRequiredError(f"rho must be real, got {rho}")
        rho = complex(rho).real
    rho = float(rho)
    if rho == 0 or not math.isfinite(rho):
        raise SingularScalingError(f"rho must be finite and nonzero, got {rho}")
    return rho


def ladder_pair(n: int) -> tuple[OperatorMatrix, OperatorMatrix]:
    """Annihilation and creation matrices, ``c|k> = sqrt(k)|k-1>``."""
    n = _check_dim(n)
    c = np.diag(np.sqrt(np.arange(1, n, dtype=float)), 1).astype(complex)
    return OperatorMatrix(c, "annihilation"), OperatorMatrix(c.conj().T, "creation")


def number_operator(n: int) -> OperatorMatrix:
    n = _check_dim(n)
    return OperatorMatrix(np.diag(np.arange(n, dtype=float)), "number")


def ccr_matrix(c: OperatorMatrix, cdag: OperatorMatrix) -> np.ndarray:
    """``c cdag - cdag c`` as an array."""
    c, cdag = np.asarray(c), np.asarray(cdag)
    return c @ cdag - cdag @ c


def quadratures(n: int) -> tuple[OperatorMatrix, OperatorMatrix]:
    """Position ``(c + c_dag)/sqrt 2`` and momentum ``-i(c - c_dag)/sqrt 2``, exactly Hermitian."""
    c, cdag = (np.asarray(m) for m in ladder_pair(n))
    x = (c + cdag) / math.sqrt(2)
    p = -1j * (c - cdag) / math.sqrt(2)
    x = 0.5 * (x + x.conj().T)
    p = 0.5 * (p + p.conj().T)
    return OperatorMatrix(x, "quadrature"), OperatorMatrix(p, "quadrature")


def squeeze_generator(n: int, epsilon: float) -> OperatorMatrix:
    """``S(eps) = exp((eps/2)(c**2 - c_dag**2))`` on the truncated space.

    The exponent is real antisymmetric in the Fock basis, so ``S`` is real
    orthogonal up to rounding.
    """
    eps = _real_epsilon(epsilon)
    c, cdag = (np.asarray(m).real for m in ladder_pair(n))
    gen = 0.5 * eps * (c @ c - cdag @ cdag)
    return OperatorMatrix(expm(gen))


def bogoliubov_conjugate(
    n: int, epsilon: float, exact_inverse: bool = False
) -> tuple[OperatorMatrix, OperatorMatrix]:
    """``(S^-1 c S, S^-1 c_dag S)`` by explicit conjugation.

    ``S^-1`` is taken as ``S_dag``; pass ``exact_inverse=True`` to use a
    numerical inverse instead (useful to measure how far ``S`` is from unitary).
    """
    s = np.asarray(squeeze_generator(n, epsilon))
    s_inv = np.linalg.inv(s) if exact_inverse else s.conj().T
    c, cdag = (np.asarray(m) for m in ladder_pair(n))
    return OperatorMatrix(s_inv @ c @ s), OperatorMatrix(s_inv @ cdag @ s)


def scaled_quadratures(n: int, rho: float) -> tuple[OperatorMatrix, OperatorMatrix]:
    """``(rho x, p / rho)``; the commutator is unchanged."""
    rho = _real_scale(rho)
    x, p = quadratures(n)
    return OperatorMatrix(rho * x.entries, "quadrature"), OperatorMatrix(p.entries / rho, "quadrature")


def transformed_ladder(
    n: int, rho: float
) -> tuple[OperatorMatrix, OperatorMatrix, BogoliubovCoefficients]:
    """Ladder pair of the rescaled quadratures, ``c(rho) = u c + v c_dag``.

    With ``rho = exp(-eps)`` this is ``c cosh eps - c_dag sinh eps``.
    """
    coeffs = BogoliubovCoefficients.from_rho(rho)
    c, cdag = (np.asarray(m) for m in ladder_pair(n))
    c_rho = coeffs.u * c + coeffs.v * cdag
    cdag_rho = coeffs.u * cdag + coeffs.v * c
    return OperatorMatrix(c_rho), OperatorMatrix(cdag_rho), coeffs


def generator_equivalence_check(
    n: int, epsilon: float, block: int | None = None, tol: float = 1e-8
) -> CheckResult:
    """Squeeze conjugation against the rescaling ladder pair on the leading block.

    ``block`` defaults to ``n // 4`` and may not exceed ``n // 2``.
    """
    n = _check_dim(n)
    eps = _real_epsilon(epsilon)
    block = n // 4 if block is None else int(block)
    if not 1 <= block <= n // 2:
        raise DimensionError(f"block must lie in [1, n/2] = [1, {n // 2}], got {block}")
    c_conj, cdag_conj = bogoliubov_conjugate(n, eps)
    c_rho, cdag_rho, _ = transformed_ladder(n, math.exp(-eps))
    dev = max(
        max_abs_dev(c_conj.block(block), c_rho.block(block)),
        max_abs_dev(cdag_conj.block(block), cdag_rho.block(block)),
    )
    return CheckResult.compare(f"generator_equivalence[n={n},eps={eps:g},block={block}]", dev, tol)


def equivalence_convergence(
    epsilon: float, dims=(16, 32, 64, 128), block: int | None = None
) -> list[tuple[int, float]]:
    """``(n, deviation)`` pairs of :func:`generator_equivalence_check`.

    With ``block=None`` each ``n`` is compared on its own leading half block.
    """
    rows = []
    for n in dims:
        b = n // 2 if block is None else block
        rows.append((n, generator_equivalence_check(n, epsilon, b, tol=np.inf).deviation))
    return rows


def bargmann_generator(n: int, epsilon: complex) -> OperatorMatrix:
    """Fock image of ``exp((eps/2)(c~**2 - c~dag**2))`` acting on entire functions.

    Under ``zeta -> c_dag`` and ``d/dzeta -> c`` the pair
    ``c~ = (zeta + d/dzeta)/sqrt 2``, ``c~dag = (zeta - d/dzeta)/sqrt 2``
    becomes ``(c_dag + c)/sqrt 2`` and ``(c_dag - c)/sqrt 2``; the exponent is
    then ``eps (N + 1/2)`` away from the top corner. Complex ``eps`` is allowed.
    This is not the unitary squeeze operator of :func:`squeeze_generator`.
    """
    c, cdag = (np.asarray(m) for m in ladder_pair(n))
    plus = cdag + c
    minus = cdag - c
    gen = 0.5 * (plus @ plus - minus @ minus)
    return OperatorMatrix(expm(0.5 * complex(epsilon) * gen))


def cross_representation_check(
    n: int, epsilon: complex, tol: float = 1e-6, block: int | None = None
) -> CheckResult:
    """Dilation spectrum ``q**k`` from the coefficient-space action against the
    eigenvalues of ``q**(-1/2)`` times :func:`bargmann_generator` on the leading block.
    """
    from .bargmann import Deformation, dilation, monomial

    n = _check_dim(n)
    block = n // 4 if block is None else int(block)
    d = Deformation.from_epsilon(epsilon)
    spectrum = np.array([dilation(monomial(k, block - 1), d).coeffs[k] for k in range(block)])
    g = np.exp(-d.epsilon / 2) * bargmann_generator(n, d.epsilon).block(block)
    eig = np.linalg.eigvals(g)
    # pair each eigenvalue with its nearest spectral value
    order = np.argmin(np.abs(eig[:, None] - spectrum[None, :]), axis=1)
    if len(set(order.tolist())) != block:
        return CheckResult(f"cross_representation[n={n},eps={d.epsilon:.6g}]", np.inf, tol, False)
    dev = float(np.max(np.abs(eig - spectrum[order])))
    return CheckResult.compare(f"cross_representation[n={n},eps={d.epsilon:.6g}]", dev, tol)
