from typing import Tuple

import numpy as np
import scipy.linalg

from util.errors import NumericalError
from util.types import ErrorCode

SYMMETRY_TOL = 1e-12
UNITARITY_TOL = 1e-10


def residuals(M: np.ndarray, values: np.ndarray, vectors: np.ndarray) -> np.ndarray:
    """ ||M v_i - lambda_i v_i|| / ||v_i|| per column """
    if vectors.shape[1] == 0:
        return np.zeros(0)
    R = M @ vectors - vectors * values[np.newaxis, :]
    return np.linalg.norm(R, axis=0) / np.linalg.norm(vectors, axis=0)


def eig_symmetric(M: np.ndarray, tol: float = 1e-9) -> Tuple[np.ndarray, np.ndarray]:
    """ Ascending eigenvalues and orthonormal eigenvectors of a real symmetric matrix """
    M = np.asarray(M, dtype=np.float64)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise NumericalError(ErrorCode.NOT_SYMMETRIC, f"expected a square matrix, got shape {M.shape}")
    asym = float(np.max(np.abs(M - M.T))) if M.size else 0.0
    if asym > SYMMETRY_TOL:
        raise NumericalError(ErrorCode.NOT_SYMMETRIC, f"matrix is not symmetric (max |M - M^T| = {asym:.3e})")
    values, vectors = scipy.linalg.eigh(M, check_finite=True)
    worst = float(np.max(residuals(M, values, vectors), initial=0.0))
    if worst > tol * max(1.0, float(np.max(np.abs(M), initial=0.0))):
        raise NumericalError(ErrorCode.NOT_EIGENVECTOR, f"symmetric eigensolver residual {worst:.3e} exceeds {tol:.1e}")
    return values, vectors


def eig_unitary(M: np.ndarray, tol: float = 1e-9) -> Tuple[np.ndarray, np.ndarray]:
    """ Eigenvalues on the unit circle and orthonormal eigenvectors of a unitary matrix.

    The complex Schur form of a normal matrix is diagonal, so Z is a unitary
    eigenbasis even inside degenerate clusters. Pairs are sorted by (Re, Im).
    """
    M = np.asarray(M, dtype=np.complex128)
    n = M.shape[0]
    if M.ndim != 2 or n != M.shape[1]:
        raise NumericalError(ErrorCode.NOT_UNITARY, f"expected a square matrix, got shape {M.shape}")
    defect = float(np.max(np.abs(M.conj().T @ M - np.eye(n)), initial=0.0))
    if defect > UNITARITY_TOL:
        raise NumericalError(ErrorCode.NOT_UNITARY, f"matrix is not unitary (max |M*M - I| = {defect:.3e})")
    T, Z = scipy.linalg.schur(M, output="complex")
    values = np.diag(T).copy()
    order = np.lexsort((values.imag, values.real))
    values, Z = values[order], Z[:, order]
    off_circle = float(np.max(np.abs(np.abs(values) - 1.0), initial=0.0))
    worst = float(np.max(residuals(M, values, Z), initial=0.0))
    if off_circle > tol or worst > tol:
        raise NumericalError(ErrorCode.NOT_EIGENVECTOR,
                             f"unitary eigensolver failed: |1-|L|| = {off_circle:.3e}, residual = {worst:.3e}")
    return values, Z


def kernel(M: np.ndarray, tol: float = 1e-9) -> np.ndarray:
    """ Orthonormal basis (columns) of ker M; singular values <= tol * sigma_max count as zero """
    M = np.asarray(M)
    rows, cols = M.shape
    if rows == 0 or cols == 0:
        return np.eye(cols, dtype=M.dtype if M.dtype.kind == "c" else np.float64)
    _, s, Vh = scipy.linalg.svd(M, full_matrices=True)
    sigma_max = float(s[0]) if s.size else 0.0
    rank = int(np.count_nonzero(s > tol * sigma_max)) if sigma_max > 0 else 0
    return Vh[rank:].conj().T


def rank(M: np.ndarray, tol: float = 1e-9) -> int:
    M = np.asarray(M)
    if M.size == 0:
        return 0
    s = scipy.linalg.svdvals(M)
    if s[0] == 0:
        return 0
    return int(np.count_nonzero(s > tol * s[0]))


def min_singular_value(basis: np.ndarray) -> float:
    if basis.shape[1] == 0:
        return float("inf")
    return float(scipy.linalg.svdvals(basis)[-1])


def orthonormalize(basis: np.ndarray, tol: float = 1e-9) -> np.ndarray:
    """ Orthonormal basis of the column span """
    if basis.shape[1] == 0:
        return basis
    return scipy.linalg.orth(basis, rcond=tol)


def same_span(A: np.ndarray, B: np.ndarray, tol: float = 1e-8) -> bool:
    """ Equal column spans: equal dimension and all principal angles <= tol """
    if A.shape[1] != B.shape[1]:
        return False
    if A.shape[1] == 0:
        return True
    angles = scipy.linalg.subspace_angles(A, B)
    return bool(np.max(angles) <= tol)
