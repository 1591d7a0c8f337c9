# spinparity/services/quantifiers.py
"""
Correlation Quantifiers
=======================
Entanglement, quantum correlation and nonlocality of two-qubit states:
    - Negativity from the partial transpose spectrum
    - Geometric discord (measurement on either qubit)
    - Horodecki CHSH maximum and Bell function
    - Brute-force CHSH maximization as an independent check
"""

import logging
import math
from typing import List, Optional, Tuple

import numpy as np
from scipy.optimize import minimize_scalar

from spinparity.config import settings
from spinparity.schemas import CorrelationReport, DensityMatrix, FanoDecomposition
from spinparity.services.linalg import hermitian_eigenvalues4, sym_eigenvalues3
from spinparity.services.states import fano_decompose, partial_transpose_1

logger = logging.getLogger(__name__)


def _clamp_negative(value: float, name: str) -> float:
    """Round-off negatives become 0, logged."""
    if value < 0:
        logger.debug(f"Clamped {name} from {value:.3e} to 0")
        return 0.0
    return value


# ============ NEGATIVITY ============

def partial_transpose_spectrum(rho: DensityMatrix) -> List[float]:
    matrix, _ = partial_transpose_1(rho)
    return hermitian_eigenvalues4(matrix)


def negativity(rho: DensityMatrix) -> float:
    """
    Sum of |mu_i| - 1 over the eigenvalues mu_i of rho^T1.

    Returns:
        Value in [0, 1]: 0 for separable states, 1 for maximally entangled ones

    Example:
        >>> negativity(bell_state())
        1.0
    """
    spectrum = partial_transpose_spectrum(rho)
    value = sum(abs(mu) for mu in spectrum) - 1.0
    value = _clamp_negative(value, "negativity")
    if value > 1.0:
        logger.debug(f"Clamped negativity from {value:.17g} to 1")
        value = 1.0
    return value


def negativity_from_negative_part(rho: DensityMatrix) -> float:
    """Twice the absolute sum of the negative eigenvalues of rho^T1."""
    spectrum = partial_transpose_spectrum(rho)
    return -2.0 * sum(mu for mu in spectrum if mu < 0)


# ============ GEOMETRIC DISCORD ============

def resolve_side(side: Optional[int]) -> int:
    side = settings.DEFAULT_DISCORD_SIDE if side is None else side
    if side not in (1, 2):
        raise ValueError("side must be 1 or 2")
    return side


def k_max(f: FanoDecomposition, side: int) -> float:
    """
    Largest eigenvalue of a a^T + T T^T (side 1) or a2 a2^T + T^T T (side 2).
    """
    if side == 1:
        matrix = np.outer(f.a1, f.a1) + f.T @ f.T.T
    else:
        matrix = np.outer(f.a2, f.a2) + f.T.T @ f.T
    return sym_eigenvalues3((matrix + matrix.T) / 2)[-1]


def discord_from_fano(f: FanoDecomposition, side: int) -> Tuple[float, float]:
    """
    Geometric discord from Fano data.

    Returns:
        Tuple of (discord, k_max)
    """
    bloch = f.a1 if side == 1 else f.a2
    largest = k_max(f, side)
    value = (float(bloch @ bloch) + float(np.sum(f.T ** 2)) - largest) / 4
    return _clamp_negative(value, f"discord{side}"), largest


def geometric_discord(rho: DensityMatrix, side: Optional[int] = None) -> float:
    """
    D = (a^2 + ||T||^2 - k_max) / 4 for measurement on the given qubit.

    Args:
        rho: Valid state
        side: 1 (parity) or 2 (spin); DEFAULT_DISCORD_SIDE when omitted

    Example:
        >>> geometric_discord(bell_state())
        0.5
    """
    value, _ = discord_from_fano(fano_decompose(rho), resolve_side(side))
    return value


# ============ BELL-CHSH ============

def locality_matrix(rho: DensityMatrix) -> np.ndarray:
    """M = T^T T, whose two largest eigenvalues decide CHSH violation."""
    T = fano_decompose(rho).T
    return T.T @ T


def _horodecki(T: np.ndarray) -> Tuple[float, float, float]:
    eigenvalues = sym_eigenvalues3(T.T @ T)
    M = _clamp_negative(eigenvalues[1] + eigenvalues[2], "locality_M")
    return M, M - 1.0, 2.0 * math.sqrt(M)


def bell_horodecki(rho: DensityMatrix) -> Tuple[float, float, float]:
    """
    Maximal CHSH value from the correlation matrix.

    Returns:
        Tuple of (M = t1 + t2, Bell function M - 1, chsh = 2 sqrt(M));
        CHSH is violated iff the Bell function is positive
    """
    return _horodecki(fano_decompose(rho).T)


def _direction(theta: float, phi: float) -> np.ndarray:
    return np.array([
        math.sin(theta) * math.cos(phi),
        math.sin(theta) * math.sin(phi),
        math.cos(theta)
    ])


def _angles(v: np.ndarray) -> Tuple[float, float]:
    norm = float(np.linalg.norm(v))
    if norm == 0.0:
        return 0.0, 0.0
    z = max(-1.0, min(1.0, float(v[2]) / norm))
    return math.acos(z), math.atan2(float(v[1]), float(v[0]))


def chsh_objective(T: np.ndarray, angles: np.ndarray) -> float:
    """
    |Tr[B rho]| for B = A1 ⊗ (B1 + B2) + A2 ⊗ (B1 - B2).

    Args:
        T: Correlation matrix
        angles: (theta, phi) for A1, A2, B1, B2, flattened to 8 values
    """
    u1, u2, v1, v2 = (_direction(angles[2 * k], angles[2 * k + 1]) for k in range(4))
    return abs(float(u1 @ T @ (v1 + v2) + u2 @ T @ (v1 - v2)))


def chsh_brute_force(
    rho: DensityMatrix,
    grid_n: Optional[int] = None,
    refine_iters: Optional[int] = None
) -> float:
    """
    Maximize the CHSH expectation directly over measurement directions.

    The two B directions are searched on a grid_n x 2 grid_n (theta, phi)
    grid; for each pair the best A directions follow in closed form. The
    eight angles are then refined by cyclic coordinate descent, each
    coordinate by a bounded Brent search inside one grid cell.

    Args:
        rho: Valid state
        grid_n: Polar grid size (>= 12), CHSH_GRID_N when omitted
        refine_iters: Coordinate descent cycles, CHSH_REFINE_ITERS when omitted

    Returns:
        Best CHSH value found; never above the Horodecki value
    """
    grid_n = settings.CHSH_GRID_N if grid_n is None else grid_n
    refine_iters = settings.CHSH_REFINE_ITERS if refine_iters is None else refine_iters
    if grid_n < 12:
        raise ValueError("grid_n must be at least 12")

    T = fano_decompose(rho).T

    thetas = np.linspace(0.0, math.pi, grid_n)
    phis = 2 * math.pi * np.arange(2 * grid_n) / (2 * grid_n)
    theta_grid, phi_grid = np.meshgrid(thetas, phis, indexing="ij")
    theta_flat = theta_grid.ravel()
    phi_flat = phi_grid.ravel()
    directions = np.stack([
        np.sin(theta_flat) * np.cos(phi_flat),
        np.sin(theta_flat) * np.sin(phi_flat),
        np.cos(theta_flat)
    ], axis=1)

    # w_k = T b_k; best A's give |w_i + w_j| + |w_i - w_j|
    w = directions @ T.T
    gram = w @ w.T
    norms = np.diag(gram)
    base = norms[:, None] + norms[None, :]
    scores = (np.sqrt(np.maximum(base + 2 * gram, 0.0))
              + np.sqrt(np.maximum(base - 2 * gram, 0.0)))

    # argmax returns the lowest flat index on ties
    best = int(np.argmax(scores))
    best_value = float(scores.flat[best])
    if best_value == 0.0:
        return 0.0
    i, j = divmod(best, len(directions))

    angles = np.empty(8)
    angles[0:2] = _angles(w[i] + w[j])
    angles[2:4] = _angles(w[i] - w[j])
    angles[4:6] = (theta_flat[i], phi_flat[i])
    angles[6:8] = (theta_flat[j], phi_flat[j])

    value = chsh_objective(T, angles)
    window = math.pi / grid_n
    cycles = 0
    for cycles in range(1, refine_iters + 1):
        start = value
        for k in range(8):
            def negative(x, k=k):
                trial = angles.copy()
                trial[k] = x
                return -chsh_objective(T, trial)

            result = minimize_scalar(
                negative,
                bounds=(angles[k] - window, angles[k] + window),
                method="bounded"
            )
            if -result.fun > value:
                angles[k] = result.x
                value = -result.fun
        if value - start < 1e-12:
            break

    logger.debug(f"CHSH brute force: grid {best_value:.6f}, refined {value:.6f} after {cycles} cycles")
    return value


# ============ REPORT ============

def correlation_report(rho: DensityMatrix) -> CorrelationReport:
    """
    Every quantifier of one state.

    Example:
        >>> correlation_report(maximally_mixed()).bell_B
        -1.0
    """
    f = fano_decompose(rho)
    discord1, k_max1 = discord_from_fano(f, 1)
    discord2, k_max2 = discord_from_fano(f, 2)
    M, bell_B, chsh = _horodecki(f.T)
    return CorrelationReport(
        negativity=negativity(rho),
        discord1=discord1,
        discord2=discord2,
        locality_M=M,
        bell_B=bell_B,
        chsh_value=chsh,
        k_max1=k_max1,
        k_max2=k_max2
    )
