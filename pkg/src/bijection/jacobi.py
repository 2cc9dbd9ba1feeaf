"""Cyclic complex Jacobi eigensolver for Hermitian matrices"""

import logging
import math
from typing import Optional, Tuple

import numpy as np

from ..core.config import settings
from ..core.exceptions import ConvergenceError, DimensionError, StructureError

logger = logging.getLogger(__name__)


def is_hermitian(M, tau: Optional[float] = None) -> bool:
    tau = settings.tau_sym if tau is None else tau
    M = np.asarray(M)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        return False
    return bool(np.max(np.abs(M - M.conj().T), initial=0.0) <= tau)


def _rotate(A: np.ndarray, V: np.ndarray, p: int, q: int) -> None:
    """Annihilate A[p, q] with a unitary plane rotation, in place.

    The rotation first turns A[p, q] real with a phase on column q, then
    applies the real Jacobi rotation of the resulting 2x2 block.
    """
    apq = A[p, q]
    magnitude = abs(apq)
    phase = apq / magnitude
    alpha = A[p, p].real
    gamma = A[q, q].real
    theta = 0.5 * math.atan2(2.0 * magnitude, gamma - alpha)
    c, s = math.cos(theta), math.sin(theta)
    G = np.array([[c, s], [-s * np.conj(phase), c * np.conj(phase)]], dtype=np.complex128)

    cols = [p, q]
    A[:, cols] = A[:, cols] @ G
    A[cols, :] = G.conj().T @ A[cols, :]
    A[p, q] = A[q, p] = 0.0
    A[p, p] = A[p, p].real
    A[q, q] = A[q, q].real
    V[:, cols] = V[:, cols] @ G


def hermitian_eigh(M, tol: Optional[float] = None, max_sweeps: Optional[int] = None,
                   tau: Optional[float] = None) -> Tuple[np.ndarray, np.ndarray]:
    """Eigenvalues (ascending) and orthonormal eigenvector columns of a Hermitian matrix"""
    tol = settings.jacobi_tol if tol is None else tol
    max_sweeps = settings.jacobi_max_sweeps if max_sweeps is None else max_sweeps

    A = np.array(M, dtype=np.complex128)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise DimensionError(f"Expected a square matrix, got shape {A.shape}")
    scale = float(np.linalg.norm(A))
    if not is_hermitian(A, (settings.tau_sym if tau is None else tau) * max(1.0, scale)):
        raise StructureError("Matrix is not Hermitian")
    A = (A + A.conj().T) / 2

    n = A.shape[0]
    V = np.eye(n, dtype=np.complex128)
    threshold = tol * max(scale, np.finfo(float).tiny)

    for sweep in range(max_sweeps + 1):
        off = float(np.linalg.norm(A - np.diag(np.diag(A))))
        if off <= threshold:
            logger.debug(f"Jacobi converged after {sweep} sweeps (n={n}, off={off:.2e})")
            break
        if sweep == max_sweeps:
            raise ConvergenceError(f"Jacobi did not converge in {max_sweeps} sweeps", best_residual=off)
        for p in range(n - 1):
            for q in range(p + 1, n):
                if abs(A[p, q]) > threshold / n:
                    _rotate(A, V, p, q)

    w = np.real(np.diag(A))
    order = np.argsort(w, kind="stable")
    return w[order], V[:, order]
