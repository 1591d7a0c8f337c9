# spinparity/services/dirac.py
"""
Dirac Model Service
===================
Spin-parity states of a Dirac particle:
    - Free particle helicity states and their mixture, with closed forms
    - Non-minimally coupled Hamiltonian, its spectrum and eigenstates
    - Eigenstate mixtures and their Fano data in closed form
    - Electric field substitution

Natural units (hbar = c = 1). The first qubit is intrinsic parity
(eigenvalues of beta = sigma_z ⊗ I), the second is spin.
"""

import logging
import math
from typing import Optional, Tuple

import numpy as np

from spinparity.config import settings
from spinparity.exceptions import (
    AlreadyElectric,
    DegenerateSpectrum,
    NormalizationFailure,
    ZeroMomentum,
)
from spinparity.schemas import (
    CouplingParams,
    DensityMatrix,
    FanoDecomposition,
    FieldKind,
    FreeParams,
    MixtureCoefficients,
    MixtureWeights,
    SpectralData,
)
from spinparity.services.linalg import kron, pauli
from spinparity.services.states import pure_state, validate

logger = logging.getLogger(__name__)

_I2 = pauli("0")
_X = pauli("x")
_Y = pauli("y")
_Z = pauli("z")


# ============ FREE PARTICLE ============

def _amplitudes(fp: FreeParams) -> Tuple[float, float]:
    """sqrt((E+m)/2E), sqrt((E-m)/2E)."""
    E = fp.E_p
    return math.sqrt((E + fp.m) / (2 * E)), math.sqrt(max(0.0, (E - fp.m) / (2 * E)))


def helicity_vector(sign: int, fp: FreeParams) -> np.ndarray:
    """
    Positive-energy helicity state for p along z.

    psi_+ = (c|+> + s|->) ⊗ |down>, psi_- = (c|+> - s|->) ⊗ |up>

    Raises:
        ZeroMomentum: helicity is undefined at p = 0
    """
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    if fp.p == 0:
        raise ZeroMomentum("helicity is undefined at zero momentum", m=fp.m)
    c, s = _amplitudes(fp)
    parity = np.array([c, sign * s])
    spin = np.array([0.0, 1.0]) if sign > 0 else np.array([1.0, 0.0])
    return np.kron(parity, spin).astype(np.complex128)


def helicity_state(sign: int, fp: FreeParams) -> DensityMatrix:
    """Projector onto psi_sign; pure and separable."""
    return pure_state(helicity_vector(sign, fp))


def rho_free(fp: FreeParams) -> DensityMatrix:
    """
    A |psi_+><psi_+| + (1 - A) |psi_-><psi_-|, written out entrywise.

    Example:
        >>> rho_free(FreeParams(m=0.0, p=1.0, A=0.5)).matrix.diagonal().real
        array([0.25, 0.25, 0.25, 0.25])
    """
    E, m, A = fp.E_p, fp.m, fp.A
    upper = (E + m) / (2 * E)
    lower = (E - m) / (2 * E)
    off = fp.p / (2 * E)

    matrix = np.zeros((4, 4))
    matrix[0, 0] = (1 - A) * upper
    matrix[0, 2] = matrix[2, 0] = -(1 - A) * off
    matrix[2, 2] = (1 - A) * lower
    matrix[1, 1] = A * upper
    matrix[1, 3] = matrix[3, 1] = A * off
    matrix[3, 3] = A * lower
    return validate(matrix)


def discord_free_closed_form(fp: FreeParams) -> float:
    """
    Parity-side geometric discord of rho_free.

    With x = m/E_p and k = (1 - 2A)^2:
        D = (1 + k - sqrt(4k + ((1 - k)(1 - 2x^2))^2)) / 8
    Vanishes for A in {0, 1} and for m/E_p in {0, 1}.
    """
    k = (1 - 2 * fp.A) ** 2
    y = fp.m_over_E ** 2
    return max(0.0, (1 + k - math.sqrt(4 * k + ((1 - k) * (1 - 2 * y)) ** 2)) / 8)


def bell_free_closed_form(fp: FreeParams) -> float:
    """Bell function of rho_free: -4A(1-A) m^2/E^2, never positive."""
    return -4 * fp.A * (1 - fp.A) * fp.m_over_E ** 2


def discord_free_printed_form(fp: FreeParams) -> float:
    """
    Reference display of the free-particle discord, kept alongside the
    pipeline value discord_free_closed_form:
        (1/4) [tau - sqrt(tau^2 - 4 (1 - x^2) x^2)],  tau = 1 + (1 - 2A)^2 x^2
    Its argmax in x is m_max_closed_form(A) for A <= 1/2.
    """
    y = fp.m_over_E ** 2
    tau = 1 + (1 - 2 * fp.A) ** 2 * y
    return (tau - math.sqrt(max(0.0, tau ** 2 - 4 * (1 - y) * y))) / 4


def bell_free_printed_form(fp: FreeParams) -> float:
    """Reference display (1 - 4A(1-A) x^2)^2 - 1."""
    return (1 - 4 * fp.A * (1 - fp.A) * fp.m_over_E ** 2) ** 2 - 1


def m_max_closed_form(A: float) -> float:
    """
    Maximizing m/E_p of discord_free_printed_form.

    Example:
        >>> m_max_closed_form(0.5)
        0.7071067811865476
    """
    if not 0 <= A <= 1:
        raise ValueError("A must lie in [0, 1]")
    return math.sqrt(2 * (1 - A) / (5 - 8 * A + 4 * A ** 2))


# ============ COUPLED HAMILTONIAN ============

def _sigma_dot(v: np.ndarray) -> np.ndarray:
    return v[0] * _X + v[1] * _Y + v[2] * _Z


def hamiltonian_matrix(cp: CouplingParams) -> np.ndarray:
    """
    H = m beta + alpha·p + kappa (sigma_z ⊗ sigma)·B - chi (sigma_y ⊗ sigma)·B

    For an electric field B_vec holds E and the couplings are the
    substituted ones (see electric_substitution).
    """
    B = cp.B
    return (
        cp.m * kron(_Z, _I2)
        + kron(_X, _sigma_dot(cp.p))
        + cp.kappa * kron(_Z, _sigma_dot(B))
        - cp.chi * kron(_Y, _sigma_dot(B))
    )


def operator_o(cp: CouplingParams) -> np.ndarray:
    """
    O = m kappa Sigma·B + chi beta Sigma·w - i kappa beta alpha·w,  w = p x B

    H^2 = c1 I + 2 O and O^2 = c2 I.
    """
    omega = np.cross(cp.p, cp.B)
    return (
        cp.m * cp.kappa * kron(_I2, _sigma_dot(cp.B))
        + cp.chi * kron(_Z, _sigma_dot(omega))
        + cp.kappa * kron(_Y, _sigma_dot(omega))
    )


def spectral_data(cp: CouplingParams) -> SpectralData:
    """
    c1, c2, w = p x B, the four eigenvalues and the O operator.

    lambda_ns = (-1)^n sqrt(c1 + 2 (-1)^s sqrt(c2)), ordered (0,0), (0,1), (1,0), (1,1)

    Raises:
        DegenerateSpectrum: c2 <= DEGENERACY_THRESHOLD

    Example:
        >>> spectral_data(CouplingParams.canonical(m=1.0)).c1
        4.0
    """
    p, B = cp.p, cp.B
    omega = np.cross(p, B)
    K = cp.kappa ** 2 + cp.chi ** 2
    c1 = float(p @ p + cp.m ** 2 + K * (B @ B))
    c2 = float(cp.m ** 2 * cp.kappa ** 2 * (B @ B) + K * (omega @ omega))
    if c2 <= settings.DEGENERACY_THRESHOLD:
        raise DegenerateSpectrum("spectrum is degenerate (c2 vanishes)", c2=c2)

    root = math.sqrt(c2)
    lambdas = tuple(
        (-1) ** n * math.sqrt(max(0.0, c1 + 2 * (-1) ** s * root))
        for n in (0, 1) for s in (0, 1)
    )
    return SpectralData(
        c1=c1,
        c2=c2,
        omega=tuple(omega),
        lambdas=lambdas,
        O_matrix=operator_o(cp),
        H_matrix=hamiltonian_matrix(cp)
    )


def eigenstate_density(
    cp: CouplingParams,
    n: int,
    s: int,
    spectral: Optional[SpectralData] = None
) -> DensityMatrix:
    """
    Projector onto the (n, s) eigenstate.

    [I + (-1)^n H / |lambda_ns|] [I + (-1)^s O / sqrt(c2)], divided by its trace.

    Raises:
        DegenerateSpectrum: c2 vanishes or lambda_ns is zero (then lambda_0s = lambda_1s)
        NormalizationFailure: trace below NORMALIZATION_THRESHOLD
    """
    if n not in (0, 1) or s not in (0, 1):
        raise ValueError("n and s must be 0 or 1")
    sd = spectral or spectral_data(cp)
    lam = sd.eigenvalue(n, s)
    if lam ** 2 <= settings.DEGENERACY_THRESHOLD * max(1.0, sd.c1):
        raise DegenerateSpectrum("zero eigenvalue is doubly degenerate", n=n, s=s)

    identity = np.eye(4)
    energy_factor = identity + ((-1) ** n / abs(lam)) * sd.H_matrix
    o_factor = identity + ((-1) ** s / math.sqrt(sd.c2)) * sd.O_matrix
    unnormalized = energy_factor @ o_factor

    trace = float(np.trace(unnormalized).real)
    if trace < settings.NORMALIZATION_THRESHOLD:
        raise NormalizationFailure("eigenstate has vanishing trace", trace=trace, n=n, s=s)
    return validate(unnormalized / trace)


def mixture_state(
    cp: CouplingParams,
    w: MixtureWeights,
    spectral: Optional[SpectralData] = None
) -> DensityMatrix:
    """
    Sum of A_ns rho_ns over the four eigenstates.

    Example:
        >>> mixture_state(cp, MixtureWeights(A_ns=(0.25, 0.25, 0.25, 0.25)))  # I/4
    """
    sd = spectral or spectral_data(cp)
    total = np.zeros((4, 4), dtype=np.complex128)
    for n in (0, 1):
        for s in (0, 1):
            weight = w.weight(n, s)
            if weight > 0:
                total += weight * eigenstate_density(cp, n, s, sd).matrix
    return validate(total)


def mixture_coefficients(
    cp: CouplingParams,
    w: MixtureWeights,
    spectral: Optional[SpectralData] = None
) -> MixtureCoefficients:
    """
    g1 = sum A/lambda, g2 = sum (-1)^s A / sqrt(c2), g3 = sum (-1)^s A / (lambda sqrt(c2))
    """
    sd = spectral or spectral_data(cp)
    root = math.sqrt(sd.c2)
    g1 = g2 = g3 = 0.0
    for n in (0, 1):
        for s in (0, 1):
            weight = w.weight(n, s)
            if weight == 0:
                continue
            lam = sd.eigenvalue(n, s)
            sign = (-1) ** s
            g1 += weight / lam
            g2 += sign * weight / root
            g3 += sign * weight / (lam * root)
    return MixtureCoefficients(g1=g1, g2=g2, g3=g3)


def fano_from_formula(cp: CouplingParams, w: MixtureWeights) -> FanoDecomposition:
    """
    Fano data of mixture_state(cp, w) from the g coefficients, no matrices.

    With w = p x B and K = kappa^2 + chi^2:
        a1  = g1 m z + g3 (m kappa p·B, -m chi kappa B^2, m kappa^2 B^2)
        a2  = g2 m kappa B + g3 m chi w
        t_x = g1 p + g3 K (B x w)
        t_y = -g1 chi B + g2 kappa w + g3 chi (p x w)
        t_z = g1 kappa B + g2 chi w + g3 (m^2 kappa B - kappa (p x w))
    """
    sd = spectral_data(cp)
    g = mixture_coefficients(cp, w, sd)
    m, kappa, chi = cp.m, cp.kappa, cp.chi
    p, B = cp.p, cp.B
    omega = np.array(sd.omega)
    B2 = float(B @ B)
    K = kappa ** 2 + chi ** 2
    p_cross_w = np.cross(p, omega)

    a1 = g.g1 * m * np.array([0.0, 0.0, 1.0]) + g.g3 * np.array([
        m * kappa * float(p @ B),
        -m * chi * kappa * B2,
        m * kappa ** 2 * B2
    ])
    a2 = g.g2 * m * kappa * B + g.g3 * m * chi * omega
    T = np.array([
        g.g1 * p + g.g3 * K * np.cross(B, omega),
        -g.g1 * chi * B + g.g2 * kappa * omega + g.g3 * chi * p_cross_w,
        g.g1 * kappa * B + g.g2 * chi * omega + g.g3 * (m ** 2 * kappa * B - kappa * p_cross_w),
    ])
    return FanoDecomposition(a1=a1, a2=a2, T=T)


# ============ ELECTRIC FIELD ============

def substitute_couplings(kappa: float, chi: float) -> Tuple[float, float]:
    """Magnetic → electric coupling map: (kappa, chi) → (chi, -kappa)."""
    return chi, -kappa


def electric_substitution(cp: CouplingParams) -> CouplingParams:
    """
    Reinterpret the field as electric and swap the couplings.

    Raises:
        AlreadyElectric: cp already describes an electric field
    """
    if cp.field_kind == FieldKind.ELECTRIC:
        raise AlreadyElectric("parameters already describe an electric field")
    kappa, chi = substitute_couplings(cp.kappa, cp.chi)
    values = cp.model_dump()
    values.update(kappa=kappa, chi=chi, field_kind=FieldKind.ELECTRIC)
    return CouplingParams(**values)
