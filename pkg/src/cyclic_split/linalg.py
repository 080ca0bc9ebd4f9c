"""Dense complex square-matrix helpers.

Matrices are plain 2-D ``numpy`` arrays of dtype ``complex128``.  The
exponential is a Padé scaling-and-squaring kernel; the logarithm goes through
an eigendecomposition and refuses inputs it cannot handle reliably.
"""

from __future__ import annotations

import numpy as np

__all__ = [
    "as_matrix",
    "matmul",
    "commutator",
    "expm",
    "logm_principal",
    "frobenius_norm",
]

# Padé numerators b_k for degrees 3, 5, 7, 9, 13 and the 1-norm thresholds
# below which each degree reaches unit roundoff (Higham 2005, double precision).
_PADE_COEFFS = {
    3: (120.0, 60.0, 12.0, 1.0),
    5: (30240.0, 15120.0, 3360.0, 420.0, 30.0, 1.0),
    7: (17297280.0, 8648640.0, 1995840.0, 277200.0, 25200.0, 1512.0, 56.0, 1.0),
    9: (17643225600.0, 8821612800.0, 2075673600.0, 302702400.0, 30270240.0,
        2162160.0, 110880.0, 3960.0, 90.0, 1.0),
    13: (64764752532480000.0, 32382376266240000.0, 7771770303897600.0,
         1187353796428800.0, 129060195264000.0, 10559470521600.0,
         670442572800.0, 33522128640.0, 1323241920.0, 40840800.0, 960960.0,
         16380.0, 182.0, 1.0),
}
_THETA = {
    3: 1.495585217958292e-2,
    5: 2.539398330063230e-1,
    7: 9.504178996162932e-1,
    9: 2.097847961257068e0,
    13: 5.371920351148152e0,
}

LOG_CONDITION_LIMIT = 1e8


def as_matrix(A) -> np.ndarray:
    """Coerce to a square complex128 array, raising ``ValueError('shape')`` otherwise."""
    M = np.asarray(A, dtype=np.complex128)
    if M.ndim != 2 or M.shape[0] != M.shape[1] or M.shape[0] == 0:
        raise ValueError(f"shape: expected a non-empty square matrix, got {M.shape}")
    return M


def _same_shape(A, B) -> tuple[np.ndarray, np.ndarray]:
    A, B = as_matrix(A), as_matrix(B)
    if A.shape != B.shape:
        raise ValueError(f"shape: dimension mismatch {A.shape} vs {B.shape}")
    return A, B


def matmul(A, B) -> np.ndarray:
    A, B = _same_shape(A, B)
    return A @ B


def commutator(A, B) -> np.ndarray:
    """Return ``AB - BA``."""
    A, B = _same_shape(A, B)
    return A @ B - B @ A


def frobenius_norm(A) -> float:
    M = np.asarray(A, dtype=np.complex128)
    return float(np.sqrt(np.sum(M.real ** 2 + M.imag ** 2)))


def _pade(A: np.ndarray, degree: int) -> tuple[np.ndarray, np.ndarray]:
    b = _PADE_COEFFS[degree]
    ident = np.eye(A.shape[0], dtype=A.dtype)
    A2 = A @ A
    if degree == 13:
        A4 = A2 @ A2
        A6 = A4 @ A2
        U = A @ (A6 @ (b[13] * A6 + b[11] * A4 + b[9] * A2)
                 + b[7] * A6 + b[5] * A4 + b[3] * A2 + b[1] * ident)
        V = (A6 @ (b[12] * A6 + b[10] * A4 + b[8] * A2)
             + b[6] * A6 + b[4] * A4 + b[2] * A2 + b[0] * ident)
        return U, V
    powers = [ident, A2]
    for _ in range(2, degree // 2 + 1):
        powers.append(powers[-1] @ A2)
    U = A @ sum(b[2 * k + 1] * powers[k] for k in range(degree // 2 + 1))
    V = sum(b[2 * k] * powers[k] for k in range(degree // 2 + 1))
    return U, V


def expm(A) -> np.ndarray:
    """Matrix exponential by Padé approximation with scaling and squaring.

    The Padé degree and the number of squarings are picked from the 1-norm
    so that the truncation error of the kernel sits at unit roundoff.
    """
    A = as_matrix(A)
    if not np.all(np.isfinite(A)):
        raise ValueError("non-finite: matrix has NaN or infinite entries")
    n = A.shape[0]
    if n == 1:
        return np.exp(A)
    norm1 = float(np.max(np.sum(np.abs(A), axis=0)))
    if norm1 == 0.0:
        return np.eye(n, dtype=np.complex128)
    # Diagonal input: exact elementwise exponential.
    diag = np.diagonal(A)
    if np.count_nonzero(A - np.diag(diag)) == 0:
        return np.diag(np.exp(diag))

    squarings = 0
    for degree in (3, 5, 7, 9):
        if norm1 <= _THETA[degree]:
            break
    else:
        degree = 13
        if norm1 > _THETA[13]:
            squarings = max(0, int(np.ceil(np.log2(norm1 / _THETA[13]))))
    As = A / (2.0 ** squarings)
    U, V = _pade(As, degree)
    R = np.linalg.solve(V - U, V + U)
    for _ in range(squarings):
        R = R @ R
    return R


def logm_principal(A, condition_limit: float = LOG_CONDITION_LIMIT) -> np.ndarray:
    """Principal logarithm ``V diag(log λ) V⁻¹`` of a diagonalizable matrix.

    Raises ``ValueError('branch/conditioning: ...')`` when an eigenvalue lies
    on the closed negative real axis or the eigenvector basis is too poorly
    conditioned to trust.
    """
    A = as_matrix(A)
    if not np.all(np.isfinite(A)):
        raise ValueError("non-finite: matrix has NaN or infinite entries")
    evals, evecs = np.linalg.eig(A)
    scale = max(1.0, float(np.max(np.abs(evals))))
    for lam in evals:
        on_axis = abs(lam.imag) <= 1e-14 * scale
        if lam.real <= 0.0 and on_axis or abs(lam) == 0.0:
            raise ValueError(
                f"branch/conditioning: eigenvalue {lam!r} on the closed negative real axis"
            )
    cond = float(np.linalg.cond(evecs))
    if not np.isfinite(cond) or cond > condition_limit:
        raise ValueError(
            f"branch/conditioning: eigenvector condition estimate {cond:.3g} "
            f"exceeds {condition_limit:.0e}"
        )
    return (evecs * np.log(evals)) @ np.linalg.inv(evecs)
