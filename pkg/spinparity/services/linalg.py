# spinparity/services/linalg.py
"""
Linear Algebra Kernel
=====================
Fixed-size matrix helpers used by every other service:
    - Cyclic Jacobi eigenvalues (Hermitian 4x4, real symmetric 3x3)
    - Pauli matrices and two-qubit Pauli strings
    - Hermiticity / symmetry measures

Complex matrices are diagonalized directly: each rotation first removes
the phase of the pivot with a diagonal unitary, then applies an ordinary
real Jacobi rotation.

Usage:
    from spinparity.services.linalg import hermitian_eigenvalues4
    hermitian_eigenvalues4(np.kron(pauli("x"), pauli("0")))  # [-1, -1, 1, 1]
"""

import logging
from functools import lru_cache, reduce
from typing import Dict, List, Tuple

import numpy as np

from spinparity.config import settings
from spinparity.exceptions import (
    ConvergenceFailure,
    NonHermitianInput,
    NonSymmetricInput,
)

logger = logging.getLogger(__name__)


# ============ PAULI ALGEBRA ============

PAULI_LABELS: Tuple[str, ...] = ("0", "x", "y", "z")

PAULI: Dict[str, np.ndarray] = {
    "0": np.eye(2, dtype=np.complex128),
    "x": np.array([[0, 1], [1, 0]], dtype=np.complex128),
    "y": np.array([[0, -1j], [1j, 0]], dtype=np.complex128),
    "z": np.array([[1, 0], [0, -1]], dtype=np.complex128),
}
for _matrix in PAULI.values():
    _matrix.setflags(write=False)


def pauli(label: str) -> np.ndarray:
    """
    Single-qubit Pauli matrix.

    Args:
        label: "0" (or "i") for the identity, "x", "y" or "z"

    Returns:
        Read-only 2x2 complex array
    """
    key = label.lower()
    if key in ("i", "1"):
        key = "0"
    if key not in PAULI:
        raise ValueError(f"unknown Pauli label '{label}'")
    return PAULI[key]


def kron(*factors: np.ndarray) -> np.ndarray:
    """Kronecker product of any number of factors, left to right."""
    return reduce(np.kron, factors)


def pauli_string(first: str, second: str) -> np.ndarray:
    """sigma_first (parity) ⊗ sigma_second (spin)."""
    return np.kron(pauli(first), pauli(second))


@lru_cache(maxsize=1)
def pauli_basis() -> np.ndarray:
    """
    All sixteen two-qubit Pauli strings.

    Returns:
        Array of shape (4, 4, 4, 4) with basis[i, j] = sigma_i ⊗ sigma_j,
        index order 0, x, y, z
    """
    basis = np.empty((4, 4, 4, 4), dtype=np.complex128)
    for i, first in enumerate(PAULI_LABELS):
        for j, second in enumerate(PAULI_LABELS):
            basis[i, j] = np.kron(PAULI[first], PAULI[second])
    basis.setflags(write=False)
    return basis


def is_hermitian(m: np.ndarray) -> float:
    """Largest |m_ij - conj(m_ji)|; zero for an exactly Hermitian matrix."""
    arr = np.asarray(m)
    return float(np.max(np.abs(arr - arr.conj().T)))


def symmetrize(m: np.ndarray) -> np.ndarray:
    """Hermitian (or symmetric, for real input) part of m."""
    arr = np.asarray(m)
    return (arr + arr.conj().T) / 2


# ============ JACOBI ROTATIONS ============

def _off_norm(a: np.ndarray) -> float:
    off = a - np.diag(np.diag(a))
    return float(np.sqrt(np.sum(np.abs(off) ** 2)))


def _rotate(a: np.ndarray, p: int, q: int) -> None:
    """Zero a[p, q] and a[q, p] of the Hermitian matrix a, in place."""
    apq = a[p, q]
    magnitude = abs(apq)
    if magnitude == 0.0:
        return

    # Diagonal unitary making the pivot real and positive
    phase = apq / magnitude
    a[:, q] *= np.conj(phase)
    a[q, :] *= phase

    # Real rotation (theta = cot 2phi, smaller root for t)
    theta = (a[q, q].real - a[p, p].real) / (2.0 * magnitude)
    t = 1.0 / (abs(theta) + np.sqrt(theta * theta + 1.0))
    if theta < 0:
        t = -t
    c = 1.0 / np.sqrt(t * t + 1.0)
    s = t * c

    col_p = a[:, p].copy()
    col_q = a[:, q].copy()
    a[:, p] = c * col_p - s * col_q
    a[:, q] = s * col_p + c * col_q

    row_p = a[p, :].copy()
    row_q = a[q, :].copy()
    a[p, :] = c * row_p - s * row_q
    a[q, :] = s * row_p + c * row_q

    a[p, q] = 0.0
    a[q, p] = 0.0


def jacobi_eigenvalues(m: np.ndarray) -> Tuple[np.ndarray, int]:
    """
    Eigenvalues of a Hermitian matrix by cyclic Jacobi sweeps.

    Converged when the off-diagonal Frobenius norm drops below
    JACOBI_TOLERANCE * max(1, ||m||_F).

    Args:
        m: Hermitian matrix (not checked here)

    Returns:
        Tuple of (unsorted real eigenvalues, sweeps used)

    Raises:
        ConvergenceFailure: after JACOBI_MAX_SWEEPS sweeps
    """
    a = np.array(m, dtype=np.complex128)
    n = a.shape[0]
    tolerance = settings.JACOBI_TOLERANCE * max(1.0, float(np.sqrt(np.sum(np.abs(a) ** 2))))

    off = _off_norm(a)
    sweeps = 0
    while off >= tolerance:
        if sweeps >= settings.JACOBI_MAX_SWEEPS:
            raise ConvergenceFailure(
                "Jacobi iteration did not converge",
                sweeps=sweeps,
                off_norm=off
            )
        for p in range(n - 1):
            for q in range(p + 1, n):
                _rotate(a, p, q)
        sweeps += 1
        off = _off_norm(a)

    logger.debug(f"Jacobi converged in {sweeps} sweeps (off-norm {off:.2e})")
    return np.real(np.diag(a)).copy(), sweeps


# ============ PUBLIC SOLVERS ============

def hermitian_eigenvalues4(m: np.ndarray) -> List[float]:
    """
    Eigenvalues of a 4x4 Hermitian matrix, ascending.

    Args:
        m: 4x4 complex matrix, Hermitian within HERMITIAN_TOLERANCE

    Returns:
        List of 4 floats

    Raises:
        NonHermitianInput: wrong shape, non-finite entries or not Hermitian

    Example:
        >>> hermitian_eigenvalues4(np.diag([2, -1, 0.5, 0]))
        [-1.0, 0.0, 0.5, 2.0]
    """
    arr = np.asarray(m, dtype=np.complex128)
    if arr.shape != (4, 4):
        raise NonHermitianInput("expected a 4x4 matrix", shape=arr.shape)
    if not np.all(np.isfinite(arr)):
        raise NonHermitianInput("matrix has non-finite entries")

    deviation = is_hermitian(arr)
    if deviation > settings.HERMITIAN_TOLERANCE:
        raise NonHermitianInput("matrix is not Hermitian", deviation=deviation)

    values, _ = jacobi_eigenvalues(symmetrize(arr))
    return sorted(float(v) for v in values)


def sym_eigenvalues3(m: np.ndarray) -> List[float]:
    """
    Eigenvalues of a 3x3 real symmetric matrix, ascending.

    Args:
        m: 3x3 real matrix, symmetric within SYMMETRIC_TOLERANCE

    Returns:
        List of 3 floats

    Raises:
        NonSymmetricInput: wrong shape, complex or non-finite entries, or not symmetric

    Example:
        >>> sym_eigenvalues3([[2, 1, 0], [1, 2, 0], [0, 0, 3]])
        [1.0, 3.0, 3.0]
    """
    arr = np.asarray(m)
    if np.iscomplexobj(arr):
        if np.max(np.abs(arr.imag)) > settings.SYMMETRIC_TOLERANCE:
            raise NonSymmetricInput("matrix has complex entries")
        arr = arr.real
    arr = arr.astype(np.float64)
    if arr.shape != (3, 3):
        raise NonSymmetricInput("expected a 3x3 matrix", shape=arr.shape)
    if not np.all(np.isfinite(arr)):
        raise NonSymmetricInput("matrix has non-finite entries")

    deviation = float(np.max(np.abs(arr - arr.T)))
    if deviation > settings.SYMMETRIC_TOLERANCE:
        raise NonSymmetricInput("matrix is not symmetric", deviation=deviation)

    values, _ = jacobi_eigenvalues(symmetrize(arr))
    return sorted(float(v) for v in values)
