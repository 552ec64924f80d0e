"""Dense matrix exponential by scaling and squaring with Pade approximants.

Follows Higham's 2005 selection of Pade degrees (3, 5, 7, 9, 13) with
1-norm thresholds; the argument is scaled by 2**-s so that the degree-13
approximant is accurate to double precision and then squared back.
"""

from __future__ import annotations

import numpy as np

__all__ = ["expm", "expm_eig"]

_PADE_COEFFS = {
    3: (120.0, 60.0, 12.0, 1.0),
    5: (30240.0, 15120.0, 3360.0, 420.0, 30.0, 1.0),
    7: (17297280.0, 8648640.0, 1995840.0, 277200.0, 25200.0, 1512.0, 56.0, 1.0),
    9: (
        17643225600.0, 8821612800.0, 2075673600.0, 302702400.0, 30270240.0,
        2162160.0, 110880.0, 3960.0, 90.0, 1.0,
    ),
    13: (
        64764752532480000.0, 32382376266240000.0, 7771770303897600.0,
        1187353796428800.0, 129060195264000.0, 10559470521600.0,
        670442572800.0, 33522128640.0, 1323241920.0, 40840800.0,
        960960.0, 16380.0, 182.0, 1.0,
    ),
}

# largest 1-norm for which the degree-m approximant meets unit roundoff
_THETA = {
    3: 1.495585217958292e-2,
    5: 2.539398330063230e-1,
    7: 9.504178996162932e-1,
    9: 2.097847961257068e0,
    13: 5.371920351148152e0,
}


def _pade_uv(a: np.ndarray, m: int) -> tuple[np.ndarray, np.ndarray]:
    b = _PADE_COEFFS[m]
    ident = np.eye(a.shape[0], dtype=a.dtype)
    a2 = a @ a
    if m == 13:
        a4 = a2 @ a2
        a6 = a2 @ a4
        u = a @ (a6 @ (b[13] * a6 + b[11] * a4 + b[9] * a2)
                 + b[7] * a6 + b[5] * a4 + b[3] * a2 + b[1] * ident)
        v = (a6 @ (b[12] * a6 + b[10] * a4 + b[8] * a2)
             + b[6] * a6 + b[4] * a4 + b[2] * a2 + b[0] * ident)
        return u, v
    powers = [ident, a2]
    for _ in range(2, (m + 1) // 2):
        powers.append(powers[-1] @ a2)
    u = sum(b[j] * powers[j // 2] for j in range(m, 0, -2))
    v = sum(b[j] * powers[j // 2] for j in range(m - 1, -1, -2))
    return a @ u, v


def expm(a) -> np.ndarray:
    """Matrix exponential of a square real or complex array.

    Parameters
    ----------
    a : array_like, shape (n, n)

    Returns
    -------
    ndarray
        ``exp(a)``; real input gives real output.
    """
    a = np.asarray(a)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"expm needs a square matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise ValueError("expm argument contains NaN or Inf")
    if not np.iscomplexobj(a):
        a = a.astype(float)
    n = a.shape[0]
    if n == 0:
        return a.copy()

    norm1 = np.linalg.norm(a, 1)
    s = 0
    for m in (3, 5, 7, 9):
        if norm1 <= _THETA[m]:
            break
    else:
        m = 13
        if norm1 > _THETA[13]:
            s = max(0, int(np.ceil(np.log2(norm1 / _THETA[13]))))
            a = a / 2.0**s

    u, v = _pade_uv(a, m)
    r = np.linalg.solve(v - u, v + u)
    for _ in range(s):
        r = r @ r
    return r


def expm_eig(a, hermitian: bool = False) -> np.ndarray:
    """Exponential through an eigendecomposition; a reference for diagonalizable input.

    With ``hermitian=True`` the input must be Hermitian or anti-Hermitian
    (``i*a`` Hermitian), and a unitary eigenbasis is used.
    """
    a = np.asarray(a, dtype=complex)
    if hermitian:
        if np.allclose(a, a.conj().T):
            w, vecs = np.linalg.eigh(a)
            return (vecs * np.exp(w)) @ vecs.conj().T
        w, vecs = np.linalg.eigh(1j * a)
        return (vecs * np.exp(-1j * w)) @ vecs.conj().T
    w, vecs = np.linalg.eig(a)
    return (vecs * np.exp(w)) @ np.linalg.inv(vecs)
