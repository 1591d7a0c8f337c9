# spinparity/services/symmetries.py
"""
Discrete Symmetries
===================
Parity, charge conjugation and CP acting on spin-parity states:
    - Matrix-level transforms (unitary or antiunitary conjugation)
    - Fano-level sign rules, used as an independent check
    - Parameter reflection X → X~
    - CP asymmetry of the geometric discord for mixtures and thermal states,
      either by the Fano sign table or by conjugation at reflected parameters

Complex conjugation is taken entrywise in the fixed computational basis.
The phase factors i of the spinor transforms cancel in rho and are omitted.
"""

import logging
from typing import Dict, Optional, Tuple, Union

import numpy as np

from spinparity.schemas import (
    CouplingParams,
    CpRule,
    DensityMatrix,
    FanoDecomposition,
    FieldKind,
    FreeParams,
    MixtureWeights,
    ReflectedParams,
    ThermalParams,
    Transformation,
)
from spinparity.services.dirac import mixture_state
from spinparity.services.linalg import pauli_string
from spinparity.services.quantifiers import discord_from_fano, geometric_discord, resolve_side
from spinparity.services.states import fano_decompose, validate
from spinparity.services.thermal import gibbs_state

logger = logging.getLogger(__name__)

_PARITY = pauli_string("z", "0")
_CHARGE = pauli_string("y", "y")
_CP = pauli_string("x", "y")

# (a1 scaling, a2 scaling, T row scaling)
FANO_RULES: Dict[Transformation, Tuple[np.ndarray, np.ndarray, np.ndarray]] = {
    Transformation.P: (np.diag([-1.0, -1.0, 1.0]), np.eye(3), np.diag([-1.0, -1.0, 1.0])),
    Transformation.C: (-np.eye(3), -np.eye(3), np.eye(3)),
    Transformation.CP: (np.diag([1.0, 1.0, -1.0]), -np.eye(3), np.diag([-1.0, -1.0, 1.0])),
}


# ============ PARAMETERS ============

def params_reflect(
    cp: Union[CouplingParams, FreeParams]
) -> Union[ReflectedParams, FreeParams]:
    """
    X~: flip every true vector.

    The momentum always flips; a magnetic field is axial and stays, an
    electric field flips. Free-particle parameters carry only |p| and are
    returned unchanged.
    """
    if isinstance(cp, FreeParams):
        return cp
    values = cp.model_dump()
    values["p_vec"] = tuple(-x for x in cp.p_vec)
    if cp.field_kind == FieldKind.ELECTRIC:
        values["B_vec"] = tuple(-x for x in cp.B_vec)
    return ReflectedParams(**values)


# ============ MATRIX TRANSFORMS ============

def parity_transform(rho: DensityMatrix) -> DensityMatrix:
    """(sigma_z ⊗ I) rho (sigma_z ⊗ I)."""
    return validate(_PARITY @ rho.matrix @ _PARITY)


def charge_conjugation(rho: DensityMatrix) -> DensityMatrix:
    """(sigma_y ⊗ sigma_y) rho* (sigma_y ⊗ sigma_y), a spin-flip."""
    return validate(_CHARGE @ rho.matrix.conj() @ _CHARGE)


def cp_transform(rho: DensityMatrix) -> DensityMatrix:
    """(sigma_x ⊗ sigma_y) rho* (sigma_x ⊗ sigma_y)."""
    return validate(_CP @ rho.matrix.conj() @ _CP)


def transform(rho: DensityMatrix, which: Transformation) -> DensityMatrix:
    if which == Transformation.P:
        return parity_transform(rho)
    if which == Transformation.C:
        return charge_conjugation(rho)
    return cp_transform(rho)


# ============ FANO-LEVEL RULES ============

def fano_transform_oracle(f: FanoDecomposition, which: Transformation) -> FanoDecomposition:
    """
    Sign rules on (a1, a2, T):
        P:  a1 → (-a1x, -a1y, a1z), a2 → a2,  T → diag(-1,-1,1) T
        C:  a1 → -a1,               a2 → -a2, T → T
        CP: a1 → (a1x, a1y, -a1z),  a2 → -a2, T → diag(-1,-1,1) T
    """
    first, second, rows = FANO_RULES[which]
    return FanoDecomposition(a1=first @ f.a1, a2=second @ f.a2, T=rows @ f.T)


# ============ CP ASYMMETRY ============

# Sign table of the CP image of a coupled-field state, applied entrywise
CP_TABLE_A1 = np.array([-1.0, 1.0, 1.0])
CP_TABLE_A2 = np.array([-1.0, -1.0, 1.0])
CP_TABLE_T = np.array([
    [1.0, -1.0, 1.0],
    [1.0, -1.0, -1.0],
    [1.0, 1.0, -1.0],
])


def cp_table_image(f: FanoDecomposition) -> FanoDecomposition:
    """
    CP image of coupled-field Fano data by entrywise signs:
        a1 → (-a1x, a1y, a1z)
        a2 → (-a2x, -a2y, a2z)
        T  → [[ txx, -txy,  txz],
              [ tyx, -tyy, -tyz],
              [ tzx,  tzy, -tzz]]

    txz vanishes in the canonical frame. The result need not be a valid
    state, so only Fano-level quantities are taken from it.
    """
    return FanoDecomposition(a1=CP_TABLE_A1 * f.a1, a2=CP_TABLE_A2 * f.a2, T=CP_TABLE_T * f.T)


def _table_difference(rho: DensityMatrix, side: int) -> float:
    f = fano_decompose(rho)
    original, _ = discord_from_fano(f, side)
    transformed, _ = discord_from_fano(cp_table_image(f), side)
    return abs(transformed - original)


def _conjugation_difference(rho: DensityMatrix, reflected: DensityMatrix, side: int) -> float:
    original = geometric_discord(rho, side)
    transformed = geometric_discord(cp_transform(reflected), side)
    return abs(transformed - original)


def cp_discord_difference(
    cp: CouplingParams,
    w: MixtureWeights,
    side: Optional[int] = None,
    rule: CpRule = CpRule.TABLE
) -> float:
    """
    |D[rho^CP] - D[rho]| for rho = mixture_state(cp, w).

    Args:
        cp: Coupled-field parameters
        w: Mixture weights
        side: Discord measurement side, DEFAULT_DISCORD_SIDE when omitted
        rule: TABLE applies cp_table_image to the Fano data of rho.
            CONJUGATION builds rho at the reflected parameters and applies
            cp_transform; D is invariant under that map and D(X~) = D(X),
            so this rule returns zero up to rounding for both field kinds.

    Returns:
        Non-negative difference
    """
    side = resolve_side(side)
    rho = mixture_state(cp, w)
    if rule == CpRule.TABLE:
        return _table_difference(rho, side)
    reflected = mixture_state(params_reflect(cp), w)
    return _conjugation_difference(rho, reflected, side)


def cp_discord_difference_thermal(
    cp: CouplingParams,
    tp: ThermalParams,
    side: Optional[int] = None,
    rule: CpRule = CpRule.TABLE
) -> float:
    """Same as cp_discord_difference for the Gibbs state at inverse temperature beta."""
    side = resolve_side(side)
    rho = gibbs_state(cp, tp)
    if rule == CpRule.TABLE:
        return _table_difference(rho, side)
    reflected = gibbs_state(params_reflect(cp), tp)
    return _conjugation_difference(rho, reflected, side)
