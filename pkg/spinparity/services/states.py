# spinparity/services/states.py
"""
Two-Qubit State Service
=======================
Density-matrix semantics for the parity ⊗ spin space:
    - Validation (Hermitian, unit trace, positive)
    - Fano decomposition and composition
    - Partial transposes
    - Reference states and random states for property checks

Basis order: |+,up>, |+,down>, |-,up>, |-,down>.
"""

import logging
from typing import Tuple

import numpy as np
from scipy.stats import unitary_group

from spinparity.config import settings
from spinparity.exceptions import (
    NonRealExpectation,
    NotHermitian,
    NotPositive,
    TraceNotOne,
)
from spinparity.schemas import DensityMatrix, FanoDecomposition, PartialTransposeDecomposition
from spinparity.services.linalg import hermitian_eigenvalues4, is_hermitian, pauli_basis, symmetrize

logger = logging.getLogger(__name__)

# Transpose of one qubit flips the sign of its sigma_y component
_Y_FLIP = np.diag([1.0, -1.0, 1.0])


# ============ VALIDATION ============

def validate(m: np.ndarray) -> DensityMatrix:
    """
    Check the density-matrix invariants and wrap the matrix.

    Args:
        m: 4x4 complex matrix

    Returns:
        DensityMatrix holding the Hermitian part of m

    Raises:
        NotHermitian, TraceNotOne, NotPositive: first failed invariant,
        with the measured violation
    """
    arr = np.asarray(m, dtype=np.complex128)
    if arr.shape != (4, 4):
        raise NotHermitian("expected a 4x4 matrix", violation=float("inf"))
    if not np.all(np.isfinite(arr)):
        raise NotHermitian("matrix has non-finite entries", violation=float("inf"))

    deviation = is_hermitian(arr)
    if deviation > settings.HERMITIAN_TOLERANCE:
        raise NotHermitian("matrix is not Hermitian", violation=deviation)
    arr = symmetrize(arr)

    trace_error = abs(float(np.trace(arr).real) - 1.0)
    if trace_error > settings.TRACE_TOLERANCE:
        raise TraceNotOne("trace differs from 1", violation=trace_error)

    smallest = hermitian_eigenvalues4(arr)[0]
    if smallest < -settings.PSD_TOLERANCE:
        raise NotPositive("matrix has a negative eigenvalue", violation=-smallest)

    return DensityMatrix(matrix=arr)


def maximally_mixed() -> DensityMatrix:
    return DensityMatrix(matrix=np.eye(4) / 4)


def pure_state(psi: np.ndarray) -> DensityMatrix:
    """Projector onto a (not necessarily normalized) state vector."""
    vec = np.asarray(psi, dtype=np.complex128)
    vec = vec / np.linalg.norm(vec)
    return validate(np.outer(vec, vec.conj()))


def bell_state() -> DensityMatrix:
    """|Phi+> = (|+,up> + |-,down>) / sqrt(2)."""
    return pure_state(np.array([1, 0, 0, 1]))


def product_state(bloch1: np.ndarray, bloch2: np.ndarray) -> DensityMatrix:
    """rho1 ⊗ rho2 from two single-qubit Bloch vectors."""
    a1 = np.asarray(bloch1, dtype=np.float64)
    a2 = np.asarray(bloch2, dtype=np.float64)
    return fano_compose(FanoDecomposition(a1=a1, a2=a2, T=np.outer(a1, a2)))


# ============ FANO DECOMPOSITION ============

def pauli_expectations(rho: DensityMatrix) -> np.ndarray:
    """
    Tr[rho sigma_i ⊗ sigma_j] for all i, j in 0, x, y, z.

    Raises:
        NonRealExpectation: if any imaginary part exceeds REAL_EXPECTATION_TOLERANCE
    """
    values = np.einsum("ijab,ba->ij", pauli_basis(), rho.matrix)
    imaginary = float(np.max(np.abs(values.imag)))
    if imaginary > settings.REAL_EXPECTATION_TOLERANCE:
        raise NonRealExpectation("Pauli expectation has an imaginary part", violation=imaginary)
    return values.real


def fano_decompose(rho: DensityMatrix) -> FanoDecomposition:
    """
    Bloch vectors and correlation matrix of a state.

    a1_i = Tr[rho sigma_i ⊗ I], a2_j = Tr[rho I ⊗ sigma_j], t_ij = Tr[rho sigma_i ⊗ sigma_j]

    Example:
        >>> fano_decompose(bell_state()).T
        diag(1, -1, 1)
    """
    values = pauli_expectations(rho)
    return FanoDecomposition(a1=values[1:, 0], a2=values[0, 1:], T=values[1:, 1:])


def fano_matrix(f: FanoDecomposition) -> np.ndarray:
    """(I + a1·sigma ⊗ I + I ⊗ a2·sigma + sum t_ij sigma_i ⊗ sigma_j) / 4, unchecked."""
    coefficients = np.zeros((4, 4))
    coefficients[0, 0] = 1.0
    coefficients[1:, 0] = f.a1
    coefficients[0, 1:] = f.a2
    coefficients[1:, 1:] = f.T
    return np.einsum("ij,ijab->ab", coefficients, pauli_basis()) / 4


def fano_compose(f: FanoDecomposition) -> DensityMatrix:
    """
    Rebuild a state from Fano data.

    Raises:
        NotPositive: the data does not describe a physical state
    """
    return validate(fano_matrix(f))


# ============ PARTIAL TRANSPOSE ============

def _swap_indices(matrix: np.ndarray, qubit: int) -> np.ndarray:
    tensor = matrix.reshape(2, 2, 2, 2)
    if qubit == 1:
        tensor = tensor.transpose(2, 1, 0, 3)
    else:
        tensor = tensor.transpose(0, 3, 2, 1)
    return tensor.reshape(4, 4)


def partial_transpose_1(rho: DensityMatrix) -> Tuple[np.ndarray, PartialTransposeDecomposition]:
    """
    Transpose on the parity qubit.

    <mu_i nu_j| rho^T1 |mu_k nu_l> = <mu_k nu_j| rho |mu_i nu_l>

    Returns:
        Tuple of (rho^T1 as a 4x4 array, its Fano data b1, b2, Q)
    """
    matrix = _swap_indices(rho.matrix, qubit=1)
    f = fano_decompose(rho)
    decomposition = PartialTransposeDecomposition(
        b1=_Y_FLIP @ f.a1,
        b2=f.a2,
        Q=_Y_FLIP @ f.T
    )
    return matrix, decomposition


def partial_transpose_2(rho: DensityMatrix) -> np.ndarray:
    """Transpose on the spin qubit."""
    return _swap_indices(rho.matrix, qubit=2)


# ============ STATE PROPERTIES ============

def purity(rho: DensityMatrix) -> float:
    """Tr[rho^2]."""
    return float(np.real(np.einsum("ab,ba->", rho.matrix, rho.matrix)))


def fidelity_pure(rho: DensityMatrix, pure: DensityMatrix) -> float:
    """Tr[rho sigma] for a pure sigma."""
    return float(np.real(np.einsum("ab,ba->", rho.matrix, pure.matrix)))


def unitary_conjugate(rho: DensityMatrix, u: np.ndarray) -> DensityMatrix:
    """U rho U^dagger."""
    u = np.asarray(u, dtype=np.complex128)
    return validate(u @ rho.matrix @ u.conj().T)


# ============ RANDOM STATES ============

def random_density_matrix(rng: np.random.Generator) -> DensityMatrix:
    """Ginibre ensemble: G G^dagger / Tr[G G^dagger] with complex Gaussian G."""
    g = rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4))
    m = g @ g.conj().T
    return validate(m / np.trace(m).real)


def random_pure_state(rng: np.random.Generator) -> DensityMatrix:
    """First column of a Haar-random U(4)."""
    u = unitary_group.rvs(4, random_state=rng)
    return pure_state(u[:, 0])


def random_local_unitary(rng: np.random.Generator) -> np.ndarray:
    """U1 ⊗ U2 with Haar-random single-qubit unitaries."""
    return np.kron(unitary_group.rvs(2, random_state=rng), unitary_group.rvs(2, random_state=rng))
