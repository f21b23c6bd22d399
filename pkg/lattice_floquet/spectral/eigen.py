"""Dense self-adjoint eigenvalues through LAPACK."""

import logging
from typing import Optional, Tuple

import numpy as np
import scipy.linalg

from lattice_floquet.core.errors import EigenSolverError, HermiticityError

logger = logging.getLogger(__name__)

HERMITIAN_RTOL = 1e-14


def hermitian_deviation(matrix: np.ndarray) -> float:
    """Largest |M_ij - conj(M_ji)| over the last two axes."""
    m = np.asarray(matrix)
    if m.size == 0:
        return 0.0
    return float(np.max(np.abs(m - np.conj(np.swapaxes(m, -1, -2)))))


def as_hermitian(matrix: np.ndarray, rtol: float = HERMITIAN_RTOL) -> np.ndarray:
    """
    Validate and normalise a (stack of) Hermitian matrices.

    The result is exactly self-adjoint: it is symmetrised and its diagonal
    imaginary parts are zeroed.

    Args:
        matrix: Array of shape (P, P) or (N, P, P)
        rtol: Allowed deviation relative to the largest entry

    Returns:
        Complex array of the same shape

    Raises:
        HermiticityError: If the input is not square or deviates by more than rtol
    """
    m = np.asarray(matrix, dtype=complex)
    if m.ndim < 2 or m.shape[-1] != m.shape[-2]:
        raise HermiticityError(f"Expected square matrices, got shape {m.shape}", deviation=float("inf"))

    scale = float(np.max(np.abs(m))) if m.size else 0.0
    deviation = hermitian_deviation(m)
    if deviation > rtol * max(scale, 1.0):
        raise HermiticityError(
            f"Matrix is not Hermitian: max |M - M^H| = {deviation:.3e}", deviation=deviation
        )

    m = 0.5 * (m + np.conj(np.swapaxes(m, -1, -2)))
    idx = np.arange(m.shape[-1])
    m[..., idx, idx] = m[..., idx, idx].real
    return m


def eigvalsh(matrix: np.ndarray, theta: Optional[Tuple[float, float]] = None) -> np.ndarray:
    """
    Return the eigenvalues of a Hermitian matrix in ascending order.

    Args:
        matrix: P x P Hermitian matrix
        theta: Floquet point, attached to errors for diagnostics

    Returns:
        Array of P real eigenvalues with multiplicity

    Raises:
        HermiticityError: If the matrix is not Hermitian
        EigenSolverError: If LAPACK does not converge
    """
    m = as_hermitian(matrix)
    if m.ndim != 2:
        raise HermiticityError(f"Expected a single matrix, got shape {m.shape}", deviation=float("inf"))
    try:
        return scipy.linalg.eigvalsh(m, check_finite=True)
    except (np.linalg.LinAlgError, ValueError) as e:
        raise EigenSolverError(
            f"Eigenvalue iteration did not converge: {e}", size=m.shape[0], theta=theta
        ) from e


def eigvalsh_batch(stack: np.ndarray, thetas: Optional[np.ndarray] = None) -> np.ndarray:
    """
    Eigenvalues of a stack of Hermitian matrices in one LAPACK sweep.

    Args:
        stack: Array of shape (N, P, P)
        thetas: Optional (N, 2) Floquet points, attached to errors

    Returns:
        Array of shape (N, P), each row ascending

    Raises:
        EigenSolverError: If any matrix fails to converge
    """
    m = as_hermitian(stack)
    try:
        return np.linalg.eigvalsh(m)
    except np.linalg.LinAlgError as e:
        logger.debug("Batched eigensolve failed, retrying point by point")
        for k in range(m.shape[0]):
            try:
                scipy.linalg.eigvalsh(m[k])
            except (np.linalg.LinAlgError, ValueError):
                theta = None if thetas is None else (float(thetas[k][0]), float(thetas[k][1]))
                raise EigenSolverError(
                    f"Eigenvalue iteration did not converge for batch entry {k}",
                    size=m.shape[-1],
                    theta=theta,
                ) from e
        raise EigenSolverError(f"Batched eigensolve failed: {e}", size=m.shape[-1]) from e
