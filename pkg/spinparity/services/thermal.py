# spinparity/services/thermal.py
"""
Thermal State Service
=====================
Gibbs states of the coupled Hamiltonian, built from its spectral sum:
    - Boltzmann weights of the four eigenstates
    - Gibbs state
    - Inverse temperatures where entanglement appears and where CHSH starts to be violated

Exponents are shifted by the lowest eigenvalue; once beta * gap exceeds
GROUND_STATE_CUTOFF the ground-state projector is used directly.
"""

import logging
from typing import Callable, Optional

import numpy as np
from scipy.optimize import bisect

from spinparity.config import settings
from spinparity.schemas import CouplingParams, DensityMatrix, MixtureWeights, SpectralData, ThermalParams
from spinparity.services.dirac import mixture_state, spectral_data
from spinparity.services.quantifiers import bell_horodecki, partial_transpose_spectrum

logger = logging.getLogger(__name__)


# ============ GIBBS STATE ============

def boltzmann_weights(
    cp: CouplingParams,
    tp: ThermalParams,
    spectral: Optional[SpectralData] = None
) -> MixtureWeights:
    """
    Normalized e^{-beta lambda_ns}, ordered (0,0), (0,1), (1,0), (1,1).

    Example:
        >>> boltzmann_weights(cp, ThermalParams(beta=0.0)).A_ns
        (0.25, 0.25, 0.25, 0.25)
    """
    sd = spectral or spectral_data(cp)
    lambdas = np.array(sd.lambdas)
    order = np.argsort(lambdas, kind="stable")
    ground = int(order[0])
    gap = float(lambdas[order[1]] - lambdas[ground])

    if tp.beta * gap > settings.GROUND_STATE_CUTOFF:
        logger.debug(f"beta*gap = {tp.beta * gap:.1f}, using the ground-state projector")
        weights = np.zeros(4)
        weights[ground] = 1.0
    else:
        weights = np.exp(-tp.beta * (lambdas - lambdas[ground]))
        weights /= weights.sum()
    return MixtureWeights(A_ns=tuple(weights))


def gibbs_state(cp: CouplingParams, tp: ThermalParams) -> DensityMatrix:
    """
    e^{-beta H} / Tr e^{-beta H} as a Boltzmann mixture of eigenstates.

    beta = 0 gives I/4; large beta gives the ground state.

    Raises:
        DegenerateSpectrum: c2 vanishes
    """
    sd = spectral_data(cp)
    return mixture_state(cp, boltzmann_weights(cp, tp, sd), sd)


def ground_state(cp: CouplingParams) -> DensityMatrix:
    """Lowest-energy eigenstate (n, s) = (1, 0)."""
    sd = spectral_data(cp)
    return mixture_state(cp, MixtureWeights.pure(1, 0), sd)


# ============ THRESHOLDS ============

def _first_crossing(
    func: Callable[[float], float],
    beta_max: float,
    points: int
) -> Optional[float]:
    """First beta where func goes from <= 0 to > 0, bisected to THRESHOLD_XTOL."""
    grid = np.linspace(0.0, beta_max, points)
    previous_beta = float(grid[0])
    previous = func(previous_beta)
    for beta in grid[1:]:
        beta = float(beta)
        value = func(beta)
        if previous <= 0 < value:
            if previous == 0:
                return previous_beta
            return float(bisect(func, previous_beta, beta, xtol=settings.THRESHOLD_XTOL))
        previous_beta, previous = beta, value
    return None


def entanglement_threshold(
    cp: CouplingParams,
    beta_max: float = 40.0,
    points: int = 201
) -> Optional[float]:
    """
    Inverse temperature where entanglement suddenly appears.

    Scans [0, beta_max] for the first sign change of the smallest
    eigenvalue of rho^T1, then bisects.

    Returns:
        beta*, or None if the state stays separable on the scanned range
    """
    def negative_eigenvalue(beta: float) -> float:
        return -partial_transpose_spectrum(gibbs_state(cp, ThermalParams(beta=beta)))[0]

    threshold = _first_crossing(negative_eigenvalue, beta_max, points)
    logger.debug(f"Entanglement threshold: {threshold}")
    return threshold


def locality_threshold(
    cp: CouplingParams,
    beta_max: float = 40.0,
    points: int = 201
) -> Optional[float]:
    """
    Inverse temperature where the Bell function turns positive.

    Returns:
        beta, or None if CHSH is never violated on the scanned range
    """
    def bell_function(beta: float) -> float:
        return bell_horodecki(gibbs_state(cp, ThermalParams(beta=beta)))[1]

    threshold = _first_crossing(bell_function, beta_max, points)
    logger.debug(f"Locality threshold: {threshold}")
    return threshold
