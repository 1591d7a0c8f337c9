# spinparity/schemas.py
"""
Pydantic Schemas
================
Value types passed between the services and the sweep layer.

Organized by feature:
    - Enums
    - State schemas (density matrix, Fano data)
    - Quantifier schemas
    - Model parameter schemas (free particle, coupled Hamiltonian)
    - Thermal schemas
    - Sweep schemas
"""

import math
from enum import Enum
from typing import Dict, List, Optional, Tuple

import numpy as np
from pydantic import BaseModel, Field, field_validator, model_validator

from spinparity.config import settings


# ============ ENUMS ============

class FieldKind(str, Enum):
    """Which external field couples to the particle"""
    MAGNETIC = "magnetic"    # axial vector, unchanged by parity
    ELECTRIC = "electric"    # true vector, flips under parity


class MixtureFamily(str, Enum):
    """Two-eigenstate mixtures plotted against m/p"""
    POSITIVE = "positive"                    # A rho_00 + (1-A) rho_01
    POSITIVE_NEGATIVE = "positive_negative"  # A rho_00 + (1-A) rho_11


class Transformation(str, Enum):
    """Discrete symmetry acting on a state"""
    P = "P"
    C = "C"
    CP = "CP"


class CpRule(str, Enum):
    """How the CP image of a coupled state is formed"""
    TABLE = "table"                # sign table on (a1, a2, T) at the same parameters
    CONJUGATION = "conjugation"    # antiunitary map applied to rho at reflected parameters


class Scenario(str, Enum):
    """What a sweep evaluates at each point"""
    FREE = "free"
    MIXTURE = "mixture"
    THERMAL = "thermal"
    CP_DIFF = "cp_diff"
    CP_DIFF_THERMAL = "cp_diff_thermal"


class SweepVariable(str, Enum):
    """Dimensionless sweep axis"""
    M_OVER_E = "m_over_E"
    M_OVER_P = "m_over_p"
    A = "A"
    BETA_P = "beta_p"


def _as_array(value, shape: Tuple[int, ...], dtype) -> np.ndarray:
    arr = np.array(value, dtype=dtype)
    if arr.shape != shape:
        raise ValueError(f"expected shape {shape}, got {arr.shape}")
    arr.setflags(write=False)
    return arr


def _as_vector3(value) -> Tuple[float, float, float]:
    vec = tuple(float(x) for x in value)
    if len(vec) != 3:
        raise ValueError("expected a 3-vector")
    if not all(math.isfinite(x) for x in vec):
        raise ValueError("vector components must be finite")
    return vec


# ============ STATE SCHEMAS ============

class DensityMatrix(BaseModel):
    """
    A validated two-qubit state in the basis
    |+,up>, |+,down>, |-,up>, |-,down> (parity first, spin second).

    Build it through `services.states.validate`, which checks Hermiticity,
    unit trace and positivity. The matrix is stored read-only.
    """
    matrix: np.ndarray

    class Config:
        arbitrary_types_allowed = True
        frozen = True

    @field_validator("matrix", mode="before")
    @classmethod
    def coerce_matrix(cls, v):
        return _as_array(v, (4, 4), np.complex128)


class FanoDecomposition(BaseModel):
    """Bloch vectors a1 (parity), a2 (spin) and correlation matrix T"""
    a1: np.ndarray
    a2: np.ndarray
    T: np.ndarray

    class Config:
        arbitrary_types_allowed = True
        frozen = True

    @field_validator("a1", "a2", mode="before")
    @classmethod
    def validate_bloch(cls, v):
        arr = _as_array(v, (3,), np.float64)
        if np.linalg.norm(arr) > 1 + 1e-9:
            raise ValueError("Bloch vector longer than 1")
        return arr

    @field_validator("T", mode="before")
    @classmethod
    def validate_correlations(cls, v):
        arr = _as_array(v, (3, 3), np.float64)
        if np.max(np.abs(arr)) > 1 + 1e-9:
            raise ValueError("correlation entry outside [-1, 1]")
        return arr


class PartialTransposeDecomposition(BaseModel):
    """Fano data of rho^T1: b1 = (a1x, -a1y, a1z), b2 = a2, Q = diag(1,-1,1) T"""
    b1: np.ndarray
    b2: np.ndarray
    Q: np.ndarray

    class Config:
        arbitrary_types_allowed = True
        frozen = True

    @field_validator("b1", "b2", mode="before")
    @classmethod
    def coerce_vector(cls, v):
        return _as_array(v, (3,), np.float64)

    @field_validator("Q", mode="before")
    @classmethod
    def coerce_matrix(cls, v):
        return _as_array(v, (3, 3), np.float64)


# ============ QUANTIFIER SCHEMAS ============

class CorrelationReport(BaseModel):
    """All correlation measures of one state"""
    negativity: float = Field(..., ge=0, le=1)
    discord1: float = Field(..., ge=0, description="Measurement on the parity qubit")
    discord2: float = Field(..., ge=0, description="Measurement on the spin qubit")
    locality_M: float = Field(..., ge=0, description="t1 + t2")
    bell_B: float = Field(..., description="M - 1, CHSH violated iff > 0")
    chsh_value: float = Field(..., ge=0, description="2 sqrt(M)")
    k_max1: float
    k_max2: float

    class Config:
        frozen = True


# ============ MODEL PARAMETER SCHEMAS ============

class FreeParams(BaseModel):
    """Free particle helicity mixture, natural units"""
    m: float = Field(..., ge=0, description="Mass")
    p: float = Field(..., ge=0, description="Momentum magnitude")
    A: float = Field(..., ge=0, le=1, description="Weight of positive helicity")

    class Config:
        frozen = True

    @field_validator("p")
    @classmethod
    def validate_energy(cls, v, info):
        if "m" in info.data and v == 0 and info.data["m"] == 0:
            raise ValueError("m and p cannot both vanish")
        return v

    @property
    def E_p(self) -> float:
        return math.hypot(self.p, self.m)

    @property
    def m_over_E(self) -> float:
        return self.m / self.E_p

    @property
    def p_over_E(self) -> float:
        return self.p / self.E_p

    @classmethod
    def from_ratio(cls, m_over_E: float, A: float) -> "FreeParams":
        """Unit-energy parameters with the given m/E_p."""
        if not 0 <= m_over_E <= 1:
            raise ValueError("m/E_p must lie in [0, 1]")
        return cls(m=m_over_E, p=math.sqrt(max(0.0, 1 - m_over_E ** 2)), A=A)


class CouplingParams(BaseModel):
    """
    Parameter vector X = (m, p, B, kappa, chi) of the non-minimally
    coupled Hamiltonian. For an electric field B_vec holds E.
    """
    m: float = Field(..., ge=0, description="Mass")
    p_vec: Tuple[float, float, float]
    B_vec: Tuple[float, float, float]
    kappa: float = Field(..., description="Anomalous magnetic moment coupling")
    chi: float = Field(..., description="Axial coupling")
    field_kind: FieldKind = FieldKind.MAGNETIC
    theta: Optional[float] = Field(None, description="Angle between p and B in the canonical frame")

    class Config:
        frozen = True

    @field_validator("p_vec", "B_vec", mode="before")
    @classmethod
    def validate_vector(cls, v):
        return _as_vector3(v)

    @field_validator("m", "kappa", "chi")
    @classmethod
    def validate_finite(cls, v):
        if not math.isfinite(v):
            raise ValueError("must be finite")
        return v

    @property
    def p(self) -> np.ndarray:
        return np.array(self.p_vec)

    @property
    def B(self) -> np.ndarray:
        return np.array(self.B_vec)

    @classmethod
    def canonical(
        cls,
        m: float,
        p: float = 1.0,
        B: float = 1.0,
        kappa: float = 1.0,
        chi: float = 1.0,
        theta: float = math.pi / 4,
        field_kind: FieldKind = FieldKind.MAGNETIC
    ) -> "CouplingParams":
        """
        Canonical frame: p along x, field in the xy plane at angle theta.

        Example:
            >>> CouplingParams.canonical(m=1.0).B_vec
            (0.7071067811865476, 0.7071067811865475, 0.0)
        """
        return cls(
            m=m,
            p_vec=(p, 0.0, 0.0),
            B_vec=(B * math.cos(theta), B * math.sin(theta), 0.0),
            kappa=kappa,
            chi=chi,
            field_kind=field_kind,
            theta=theta
        )


class ReflectedParams(CouplingParams):
    """Parameters with every true vector sign-flipped"""
    pass


class SpectralData(BaseModel):
    """Spectrum of the coupled Hamiltonian"""
    c1: float
    c2: float
    omega: Tuple[float, float, float]
    lambdas: Tuple[float, float, float, float]  # order (0,0), (0,1), (1,0), (1,1)
    O_matrix: np.ndarray
    H_matrix: np.ndarray

    class Config:
        arbitrary_types_allowed = True
        frozen = True

    def eigenvalue(self, n: int, s: int) -> float:
        return self.lambdas[2 * n + s]


class MixtureWeights(BaseModel):
    """Weights A_ns of the four eigenstates, ordered (0,0), (0,1), (1,0), (1,1)"""
    A_ns: Tuple[float, float, float, float]

    class Config:
        frozen = True

    @field_validator("A_ns", mode="before")
    @classmethod
    def validate_weights(cls, v):
        weights = tuple(float(x) for x in v)
        if len(weights) != 4:
            raise ValueError("exactly four weights required")
        if any(w < 0 for w in weights):
            raise ValueError("weights must be non-negative")
        if abs(sum(weights) - 1) > 1e-12:
            raise ValueError("weights must sum to 1")
        return weights

    def weight(self, n: int, s: int) -> float:
        return self.A_ns[2 * n + s]

    @classmethod
    def from_family(cls, family: MixtureFamily, A: float) -> "MixtureWeights":
        if not 0 <= A <= 1:
            raise ValueError("A must lie in [0, 1]")
        if family == MixtureFamily.POSITIVE:
            return cls(A_ns=(A, 1 - A, 0.0, 0.0))
        return cls(A_ns=(A, 0.0, 0.0, 1 - A))

    @classmethod
    def pure(cls, n: int, s: int) -> "MixtureWeights":
        weights = [0.0] * 4
        weights[2 * n + s] = 1.0
        return cls(A_ns=weights)


class MixtureCoefficients(BaseModel):
    """rho = (I + g1 H + g2 O + g3 H O) / 4"""
    g1: float
    g2: float
    g3: float

    class Config:
        frozen = True


# ============ THERMAL SCHEMAS ============

class ThermalParams(BaseModel):
    """Inverse temperature"""
    beta: float = Field(..., ge=0)

    class Config:
        frozen = True

    @field_validator("beta")
    @classmethod
    def validate_finite(cls, v):
        if not math.isfinite(v):
            raise ValueError("beta must be finite")
        return v


# ============ SWEEP SCHEMAS ============

# Caption defaults: B/p = kappa = chi = 1, theta = pi/4
FIXED_DEFAULTS: Dict[str, float] = {
    "B_over_p": 1.0,
    "kappa": 1.0,
    "chi": 1.0,
    "theta": math.pi / 4,
    "A": 0.5,
    "m_over_E": 0.5,
    "m_over_p": 1.0,
    "beta_p": 1.0,
}

PARAMETER_BOUNDS: Dict[str, Tuple[float, float]] = {
    "A": (0.0, 1.0),
    "m_over_E": (0.0, 1.0),
    "m_over_p": (0.0, math.inf),
    "beta_p": (0.0, math.inf),
    "B_over_p": (0.0, math.inf),
}

SCENARIO_VARIABLES: Dict[Scenario, Tuple[SweepVariable, ...]] = {
    Scenario.FREE: (SweepVariable.M_OVER_E, SweepVariable.A),
    Scenario.MIXTURE: (SweepVariable.M_OVER_P, SweepVariable.A),
    Scenario.CP_DIFF: (SweepVariable.M_OVER_P, SweepVariable.A),
    Scenario.THERMAL: (SweepVariable.BETA_P, SweepVariable.M_OVER_P),
    Scenario.CP_DIFF_THERMAL: (SweepVariable.BETA_P, SweepVariable.M_OVER_P),
}


class SweepConfig(BaseModel):
    """One sweep: a scenario evaluated along one dimensionless axis"""
    scenario: Scenario
    sweep_variable: SweepVariable
    start: float
    stop: float
    points: int = Field(..., ge=2)
    fixed: Dict[str, float] = Field(default_factory=dict)
    weights: Optional[MixtureWeights] = None
    family: Optional[MixtureFamily] = None
    discord_side: int = Field(default_factory=lambda: settings.DEFAULT_DISCORD_SIDE)
    field_kind: FieldKind = FieldKind.MAGNETIC
    cp_rule: CpRule = CpRule.TABLE
    label: str = ""
    output_path: Optional[str] = None

    class Config:
        frozen = True

    @field_validator("start", "stop")
    @classmethod
    def validate_finite(cls, v):
        if not math.isfinite(v):
            raise ValueError("range bounds must be finite")
        return v

    @field_validator("stop")
    @classmethod
    def validate_range(cls, v, info):
        if "start" in info.data and v <= info.data["start"]:
            raise ValueError("stop must be greater than start")
        return v

    @field_validator("fixed")
    @classmethod
    def validate_fixed(cls, v):
        for key, value in v.items():
            if key not in FIXED_DEFAULTS:
                raise ValueError(f"unknown parameter '{key}'")
            if not math.isfinite(value):
                raise ValueError(f"parameter '{key}' must be finite")
        return v

    @field_validator("discord_side")
    @classmethod
    def validate_side(cls, v):
        if v not in (1, 2):
            raise ValueError("discord_side must be 1 or 2")
        return v

    @model_validator(mode="after")
    def validate_scenario(self):
        if self.sweep_variable not in SCENARIO_VARIABLES[self.scenario]:
            allowed = ", ".join(v.value for v in SCENARIO_VARIABLES[self.scenario])
            raise ValueError(
                f"scenario '{self.scenario.value}' sweeps one of: {allowed}"
            )
        values = dict(self.fixed)
        values[self.sweep_variable.value] = self.start
        for key, value in list(values.items()) + [(self.sweep_variable.value, self.stop)]:
            low, high = PARAMETER_BOUNDS.get(key, (-math.inf, math.inf))
            if not low <= value <= high:
                raise ValueError(f"parameter '{key}' must lie in [{low}, {high}]")
        if self.scenario in (Scenario.MIXTURE, Scenario.CP_DIFF):
            if self.weights is None and self.family is None:
                raise ValueError("mixture scenarios need weights or a family")
            if self.sweep_variable == SweepVariable.A and self.family is None:
                raise ValueError("sweeping A needs a mixture family")
        return self

    @property
    def series_name(self) -> str:
        return self.label or self.scenario.value

    def grid(self) -> np.ndarray:
        return np.linspace(self.start, self.stop, self.points)

    def parameters(self, x: float) -> Dict[str, float]:
        """Caption defaults, overridden by `fixed`, then by the sweep value."""
        values = dict(FIXED_DEFAULTS)
        values.update(self.fixed)
        values[self.sweep_variable.value] = float(x)
        return values


class SweepRow(BaseModel):
    """One evaluated sweep point; error rows carry NaN measures"""
    series: str
    var: float
    negativity: float
    discord1: float
    discord2: float
    locality_M: float
    bell_B: float
    chsh: float
    cp_discord_diff: Optional[float] = None
    error: Optional[str] = None


class SweepTable(BaseModel):
    """Rows of one or more sweeps sharing a sweep axis"""
    sweep_variable: SweepVariable
    include_cp_diff: bool = False
    rows: List[SweepRow] = Field(default_factory=list)

    @property
    def failed_rows(self) -> List[SweepRow]:
        return [row for row in self.rows if row.error is not None]

    @property
    def series(self) -> List[str]:
        seen: List[str] = []
        for row in self.rows:
            if row.series not in seen:
                seen.append(row.series)
        return seen


class Preset(BaseModel):
    """Named group of sweeps reproducing one figure"""
    name: str
    caption: str
    configs: List[SweepConfig]


class SnapshotResult(BaseModel):
    """Outcome of one preset's snapshot check"""
    preset: str
    status: str  # "blessed" or "passed"
    path: str
    byte_identical: bool = True
