"""Dense complex linear algebra kernel.

Matrices are plain ``numpy`` arrays of dtype ``complex128``.  Everything here
is a pure function of its inputs.
"""
from __future__ import annotations

import numpy as np

from .errors import DimensionError, NotHermitianError, SingularMatrixError

PIVOT_RTOL = 1e-14


def as_cmatrix(A, name: str = "matrix") -> np.ndarray:
    """Coerce ``A`` to a finite 2-D complex array (a copy is not forced)."""
    M = np.asarray(A, dtype=np.complex128)
    if M.ndim == 0:
        M = M.reshape(1, 1)
    if M.ndim != 2 or M.shape[0] == 0 or M.shape[1] == 0:
        raise DimensionError(f"{name} must be a non-empty 2-D array, got shape {M.shape}")
    if not np.all(np.isfinite(M)):
        raise ValueError(f"{name} has non-finite entries")
    return M


def mat_mul(A, B) -> np.ndarray:
    A = as_cmatrix(A, "A")
    B = as_cmatrix(B, "B")
    if A.shape[1] != B.shape[0]:
        raise DimensionError(f"cannot multiply {A.shape} by {B.shape}")
    return A @ B


def adjoint(A) -> np.ndarray:
    """Conjugate transpose."""
    return as_cmatrix(A).conj().T.copy()


def lu_solve_batched(A: np.ndarray, B: np.ndarray, pivot_rtol: float = PIVOT_RTOL) -> np.ndarray:
    """Solve ``A[k] X[k] = B[k]`` for a stack of square systems.

    Gaussian elimination with partial (row) pivoting, vectorised over the
    leading batch axis.  Raises :class:`SingularMatrixError` when a pivot falls
    below ``pivot_rtol * ||A[k]||_1``; the offending batch index is stored on
    the exception as ``index``.
    """
    A = np.array(A, dtype=np.complex128)
    B = np.array(B, dtype=np.complex128)
    if A.ndim != 3 or A.shape[1] != A.shape[2]:
        raise DimensionError(f"expected a stack of square matrices, got {A.shape}")
    if B.ndim != 3 or B.shape[:2] != A.shape[:2]:
        raise DimensionError(f"right-hand side {B.shape} does not match {A.shape}")
    k, n, _ = A.shape
    scale = np.abs(A).sum(axis=1).max(axis=1)
    thresh = pivot_rtol * scale
    batch = np.arange(k)
    for c in range(n):
        p = c + np.argmax(np.abs(A[:, c:, c]), axis=1)
        row_c = A[batch, c].copy()
        A[batch, c] = A[batch, p]
        A[batch, p] = row_c
        rhs_c = B[batch, c].copy()
        B[batch, c] = B[batch, p]
        B[batch, p] = rhs_c
        piv = A[:, c, c]
        bad = np.abs(piv) <= thresh
        if np.any(bad):
            err = SingularMatrixError(
                f"matrix is numerically singular (pivot {abs(piv[bad][0]):.3e} at column {c})"
            )
            err.index = int(np.flatnonzero(bad)[0])
            raise err
        if c + 1 < n:
            factors = A[:, c + 1:, c] / piv[:, None]
            A[:, c + 1:, c:] -= factors[:, :, None] * A[:, None, c, c:]
            B[:, c + 1:] -= factors[:, :, None] * B[:, None, c]
    X = np.zeros_like(B)
    for r in range(n - 1, -1, -1):
        acc = B[:, r] - np.einsum("kj,kjm->km", A[:, r, r + 1:], X[:, r + 1:])
        X[:, r] = acc / A[:, r, r][:, None]
    return X


def solve_linear(A, B) -> np.ndarray:
    """Return ``X`` with ``A X = B`` (dense LU with row pivoting)."""
    A = as_cmatrix(A, "A")
    B = as_cmatrix(B, "B")
    if A.shape[0] != A.shape[1]:
        raise DimensionError(f"A must be square, got {A.shape}")
    if B.shape[0] != A.shape[0]:
        raise DimensionError(f"B has {B.shape[0]} rows, expected {A.shape[0]}")
    return lu_solve_batched(A[None], B[None])[0]


def operator_norm(A) -> float:
    """Largest singular value of ``A`` (spectral norm)."""
    A = as_cmatrix(A)
    if not A.any():
        return 0.0
    return float(np.linalg.svd(A, compute_uv=False)[0])


def power_operator_norm(A, rtol: float = 1e-15, maxiter: int = 50_000) -> float:
    """Spectral norm by power iteration on ``A^* A``.

    Deterministic start vector: all ones with a ``1e-3 * k`` perturbation at
    index ``k``.  Slower than :func:`operator_norm`; kept as an independent
    route for cross-checking.
    """
    A = as_cmatrix(A)
    if not A.any():
        return 0.0
    G = A.conj().T @ A
    n = G.shape[0]
    x = (1.0 + 1e-3 * np.arange(n)).astype(np.complex128)
    x /= np.linalg.norm(x)
    lam = 0.0
    for _ in range(maxiter):
        y = G @ x
        lam_new = float(np.real(np.vdot(x, y)))
        ny = np.linalg.norm(y)
        if ny == 0.0:
            # start vector in the null space of G; nudge it
            x = np.roll(x, 1) + 1e-3
            x /= np.linalg.norm(x)
            continue
        x = y / ny
        if abs(lam_new - lam) <= rtol * abs(lam_new):
            lam = lam_new
            break
        lam = lam_new
    return float(np.sqrt(max(lam, 0.0)))


def hermitian_extreme_eig(H) -> tuple[float, np.ndarray]:
    """Largest eigenvalue of a Hermitian matrix and a unit eigenvector.

    The eigenvector phase is fixed so that its first entry of largest modulus
    is real and nonnegative.
    """
    H = as_cmatrix(H, "H")
    if H.shape[0] != H.shape[1]:
        raise DimensionError(f"H must be square, got {H.shape}")
    scale = np.abs(H).max()
    if np.abs(H - H.conj().T).max() > 1e-12 * max(scale, 1e-300):
        raise NotHermitianError("matrix is not Hermitian")
    w, V = np.linalg.eigh(0.5 * (H + H.conj().T))
    x = V[:, -1]
    k = int(np.argmax(np.abs(x)))
    if abs(x[k]) > 0:
        x = x * (abs(x[k]) / x[k])
    return float(w[-1]), x
