# spinparity/sweeps/runner.py
"""
Sweep Runner
============
Evaluates a SweepConfig point by point and writes the result as CSV.

    - Builds the model state for each point (free, mixture, thermal)
    - Runs every quantifier on it, plus the CP discord difference when asked
    - Turns a failing point into an error row instead of aborting
    - Evaluates points in a thread pool, keeping row order

Usage:
    table = run_sweep(config)
    write_csv(table, "fig1.csv")
"""

import csv
import io
import logging
import math
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path
from typing import Dict, List, Optional, Sequence

from spinparity.config import get_thread_count, settings
from spinparity.exceptions import ConfigError, SpinParityError
from spinparity.schemas import (
    CouplingParams,
    DensityMatrix,
    FieldKind,
    FreeParams,
    MixtureWeights,
    Scenario,
    SweepConfig,
    SweepRow,
    SweepTable,
    SweepVariable,
    ThermalParams,
)
from spinparity.services.dirac import electric_substitution, mixture_state, rho_free
from spinparity.services.quantifiers import correlation_report
from spinparity.services.symmetries import cp_discord_difference, cp_discord_difference_thermal
from spinparity.services.thermal import gibbs_state

logger = logging.getLogger(__name__)

CP_SCENARIOS = (Scenario.CP_DIFF, Scenario.CP_DIFF_THERMAL)
MEASURE_COLUMNS = ("negativity", "discord1", "discord2", "locality_M", "bell_B", "chsh")


# ============ MODEL BUILDING ============

def build_coupling(values: Dict[str, float], field_kind: FieldKind) -> CouplingParams:
    """
    Canonical-frame parameters with p = 1, so m = m/p and B = B/p.

    Args:
        values: Resolved parameters of one sweep point
        field_kind: Electric applies the coupling substitution

    Returns:
        CouplingParams
    """
    cp = CouplingParams.canonical(
        m=values["m_over_p"],
        p=1.0,
        B=values["B_over_p"],
        kappa=values["kappa"],
        chi=values["chi"],
        theta=values["theta"]
    )
    if field_kind == FieldKind.ELECTRIC:
        cp = electric_substitution(cp)
    return cp


def resolve_weights(config: SweepConfig, values: Dict[str, float]) -> MixtureWeights:
    """Family weights at the current A, else the explicit weights."""
    if config.family is not None:
        return MixtureWeights.from_family(config.family, values["A"])
    return config.weights


def _point_state(config: SweepConfig, values: Dict[str, float]) -> DensityMatrix:
    if config.scenario == Scenario.FREE:
        return rho_free(FreeParams.from_ratio(values["m_over_E"], values["A"]))

    cp = build_coupling(values, config.field_kind)
    if config.scenario in (Scenario.THERMAL, Scenario.CP_DIFF_THERMAL):
        # p = 1, so beta = beta p
        return gibbs_state(cp, ThermalParams(beta=values["beta_p"]))
    return mixture_state(cp, resolve_weights(config, values))


def _point_cp_difference(config: SweepConfig, values: Dict[str, float]) -> float:
    cp = build_coupling(values, config.field_kind)
    if config.scenario == Scenario.CP_DIFF_THERMAL:
        return cp_discord_difference_thermal(
            cp, ThermalParams(beta=values["beta_p"]), config.discord_side, config.cp_rule
        )
    return cp_discord_difference(cp, resolve_weights(config, values), config.discord_side, config.cp_rule)


def _error_row(config: SweepConfig, x: float, error: str) -> SweepRow:
    nan = float("nan")
    return SweepRow(
        series=config.series_name,
        var=x,
        negativity=nan,
        discord1=nan,
        discord2=nan,
        locality_M=nan,
        bell_B=nan,
        chsh=nan,
        cp_discord_diff=nan if config.scenario in CP_SCENARIOS else None,
        error=error
    )


# ============ EVALUATION ============

def evaluate_point(config: SweepConfig, x: float) -> SweepRow:
    """
    All quantifiers at one sweep value.

    A SpinParityError raised by the library becomes an error row with
    NaN measures; the sweep carries on.
    """
    x = float(x)
    values = config.parameters(x)
    try:
        report = correlation_report(_point_state(config, values))
        difference = None
        if config.scenario in CP_SCENARIOS:
            difference = _point_cp_difference(config, values)
    except SpinParityError as e:
        logger.warning(f"⚠️ {config.series_name} at {config.sweep_variable.value}={x:.6g}: {e}")
        return _error_row(config, x, f"{type(e).__name__}: {e.detail}")

    return SweepRow(
        series=config.series_name,
        var=x,
        negativity=report.negativity,
        discord1=report.discord1,
        discord2=report.discord2,
        locality_M=report.locality_M,
        bell_B=report.bell_B,
        chsh=report.chsh_value,
        cp_discord_diff=difference
    )


def run_sweep(config: SweepConfig, threads: Optional[int] = None) -> SweepTable:
    """
    Evaluate every grid point of one config.

    Points run concurrently; rows come back in grid order, so the table
    does not depend on the thread count.

    Args:
        config: Sweep to run
        threads: Worker count, see get_thread_count

    Returns:
        SweepTable with config.points rows
    """
    workers = get_thread_count(threads)
    logger.info(
        f"🔄 Sweeping {config.series_name}: {config.sweep_variable.value} "
        f"in [{config.start}, {config.stop}], {config.points} points, {workers} threads"
    )
    grid = [float(x) for x in config.grid()]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        rows = list(pool.map(lambda x: evaluate_point(config, x), grid))

    table = SweepTable(
        sweep_variable=config.sweep_variable,
        include_cp_diff=config.scenario in CP_SCENARIOS,
        rows=rows
    )
    failed = len(table.failed_rows)
    if failed:
        logger.warning(f"⚠️ {config.series_name}: {failed} of {len(rows)} points failed")
    else:
        logger.info(f"✅ {config.series_name}: {len(rows)} points")
    return table


def run_configs(configs: Sequence[SweepConfig], threads: Optional[int] = None) -> SweepTable:
    """
    Run several sweeps into one table, one series each.

    Raises:
        ConfigError: no configs, or configs sweeping different variables
    """
    if not configs:
        raise ConfigError("no sweeps to run", field="configs")
    variable = configs[0].sweep_variable
    for config in configs[1:]:
        if config.sweep_variable != variable:
            raise ConfigError(
                "sweeps in one table must share the sweep variable",
                field="sweep_variable"
            )

    rows: List[SweepRow] = []
    include_cp = False
    for config in configs:
        table = run_sweep(config, threads)
        rows.extend(table.rows)
        include_cp = include_cp or table.include_cp_diff
    return SweepTable(sweep_variable=variable, include_cp_diff=include_cp, rows=rows)


# ============ CSV ============

def _format(value: Optional[float]) -> str:
    if value is None:
        return ""
    if math.isnan(value):
        return "nan"
    return f"{value:.{settings.CSV_SIGNIFICANT_DIGITS}g}"


def csv_header(table: SweepTable) -> List[str]:
    columns = ["series", table.sweep_variable.value, *MEASURE_COLUMNS]
    if table.include_cp_diff:
        columns.append("cp_discord_diff")
    columns.append("error")
    return columns


def table_to_csv(table: SweepTable) -> str:
    """
    Comma-separated text, header first, UNIX newlines,
    CSV_SIGNIFICANT_DIGITS significant digits per number.
    """
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(csv_header(table))
    for row in table.rows:
        cells = [row.series, _format(row.var)]
        cells.extend(_format(getattr(row, column)) for column in MEASURE_COLUMNS)
        if table.include_cp_diff:
            cells.append(_format(row.cp_discord_diff))
        cells.append(row.error or "")
        writer.writerow(cells)
    return buffer.getvalue()


def write_csv(table: SweepTable, path: str) -> Path:
    target = Path(path)
    target.parent.mkdir(parents=True, exist_ok=True)
    with open(target, "w", encoding="utf-8", newline="") as f:
        f.write(table_to_csv(table))
    logger.info(f"💾 Wrote {len(table.rows)} rows to {target}")
    return target


# ============ SUMMARY ============

def _max_of(rows: List[SweepRow], column: str) -> Optional[float]:
    values = [getattr(row, column) for row in rows if row.error is None]
    values = [v for v in values if v is not None]
    return max(values) if values else None


def summarize_table(table: SweepTable) -> Dict[str, Dict[str, Optional[float]]]:
    """
    Per-series maxima of the plotted quantities.

    Example:
        >>> summarize_table(table)["A=0.5"]["bell_B"]
        -0.02...
    """
    summary: Dict[str, Dict[str, Optional[float]]] = {}
    for name in table.series:
        rows = [row for row in table.rows if row.series == name]
        columns = ["negativity", "discord1", "discord2", "bell_B"]
        if table.include_cp_diff:
            columns.append("cp_discord_diff")
        summary[name] = {column: _max_of(rows, column) for column in columns}
    return summary


def sweep_axis_label(variable: SweepVariable) -> str:
    return {
        SweepVariable.M_OVER_E: "m/E_p",
        SweepVariable.M_OVER_P: "m/p",
        SweepVariable.A: "A",
        SweepVariable.BETA_P: "βp",
    }[variable]
