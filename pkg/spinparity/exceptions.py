# spinparity/exceptions.py
"""
Exceptions
==========
One hierarchy for every failure the library can report.

    SpinParityError
    ├── LinalgError        - eigen-solver input/convergence problems
    ├── StateError         - a matrix is not a valid density matrix
    ├── ModelError         - physical parameters the model cannot handle
    └── SweepError         - sweep configuration, tables and snapshots

Library code raises; only the CLI catches and maps to exit codes.
"""

from typing import Any, Dict, Optional


class SpinParityError(Exception):
    """
    Base error.

    Args:
        detail: Human readable message
        **context: Extra values (measured violation, field name, ...)
    """

    def __init__(self, detail: str, **context: Any):
        super().__init__(detail)
        self.detail = detail
        self.context: Dict[str, Any] = context

    def __str__(self) -> str:
        if not self.context:
            return self.detail
        extras = ", ".join(f"{k}={v}" for k, v in self.context.items())
        return f"{self.detail} ({extras})"


# ============ LINEAR ALGEBRA ============

class LinalgError(SpinParityError):
    pass


class NonHermitianInput(LinalgError):
    pass


class NonSymmetricInput(LinalgError):
    pass


class ConvergenceFailure(LinalgError):
    pass


# ============ STATES ============

class StateError(SpinParityError):
    """A matrix failed a density-matrix invariant."""

    def __init__(self, detail: str, violation: float, **context: Any):
        super().__init__(detail, violation=violation, **context)
        self.violation = violation


class NotHermitian(StateError):
    pass


class TraceNotOne(StateError):
    pass


class NotPositive(StateError):
    pass


class NonRealExpectation(StateError):
    pass


# ============ MODEL ============

class ModelError(SpinParityError):
    pass


class ZeroMomentum(ModelError):
    pass


class DegenerateSpectrum(ModelError):
    pass


class NormalizationFailure(ModelError):
    pass


class AlreadyElectric(ModelError):
    pass


# ============ SWEEPS ============

class SweepError(SpinParityError):
    pass


class ConfigError(SweepError):
    """Invalid sweep configuration; `field` names the offending input."""

    def __init__(self, detail: str, field: Optional[str] = None, **context: Any):
        super().__init__(detail, field=field, **context)
        self.field = field


class EmptyTable(SweepError):
    pass


class SnapshotMissing(SweepError):
    pass


class SnapshotMismatch(SweepError):
    """First diverging cell between a run and its stored snapshot."""

    def __init__(
        self,
        detail: str,
        row: Optional[int] = None,
        column: Optional[str] = None,
        **context: Any
    ):
        super().__init__(detail, row=row, column=column, **context)
        self.row = row
        self.column = column
