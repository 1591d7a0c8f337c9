# spinparity/main.py
"""
Spin-Parity Correlations CLI
============================
Main command-line entry point.

Usage:
    spinparity fig1 --out fig1.csv --svg fig1.svg
    spinparity sweep --scenario mixture --var m_over_p --from 0 --to 10 --points 101 \\
        --weights 0.5,0.5,0,0 --out mix.csv
    spinparity presets
    spinparity snapshot --bless

Exit codes:
    0  every point evaluated
    1  configuration error or snapshot failure
    2  sweep finished with error rows
"""

import logging
import sys
from typing import Dict, List, Optional, Sequence

import click
from pydantic import ValidationError

from spinparity.config import get_log_level, settings
from spinparity.exceptions import ConfigError, SpinParityError, SweepError
from spinparity.schemas import SweepConfig, SweepTable
from spinparity.sweeps.charts import write_svg
from spinparity.sweeps.presets import PRESETS, get_preset
from spinparity.sweeps.runner import run_configs, summarize_table, table_to_csv, write_csv
from spinparity.sweeps.snapshots import regression_snapshot


# ============ LOGGING SETUP ============

logging.basicConfig(
    level=getattr(logging, get_log_level(), logging.INFO),
    format="%(asctime)s - %(name)s - %(levelname)s - %(message)s"
)
logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_PARTIAL = 2

# pydantic field → CLI flag, for error messages
_FLAG_NAMES = {
    "scenario": "scenario",
    "sweep_variable": "var",
    "start": "from",
    "stop": "to",
    "points": "points",
    "fixed": "set",
    "weights": "weights",
    "family": "family",
    "discord_side": "side",
    "field_kind": "field",
    "cp_rule": "cp-rule",
}


# ============ INPUT PARSING ============

def _config_error(e: ValidationError) -> ConfigError:
    first = e.errors()[0]
    loc = first.get("loc") or ()
    field = _FLAG_NAMES.get(str(loc[0]), str(loc[0])) if loc else "config"
    return ConfigError(first.get("msg", str(e)), field=field)


def parse_assignments(items: Sequence[str]) -> Dict[str, str]:
    """
    key=value pairs from repeated --set flags.

    Raises:
        ConfigError: an item without '='
    """
    values: Dict[str, str] = {}
    for item in items:
        key, sep, value = item.partition("=")
        if not sep or not key.strip():
            raise ConfigError(f"expected key=value, got '{item}'", field="set")
        values[key.strip()] = value.strip()
    return values


def parse_threads(raw: Optional[str]) -> Optional[int]:
    if raw is None:
        return None
    try:
        threads = int(raw)
    except ValueError:
        raise ConfigError(f"threads must be an integer, got '{raw}'", field="threads")
    if threads < 1:
        raise ConfigError("threads must be at least 1", field="threads")
    return threads


def parse_points(raw: Optional[str]) -> Optional[int]:
    if raw is None:
        return None
    try:
        points = int(raw)
    except ValueError:
        raise ConfigError(f"points must be an integer, got '{raw}'", field="points")
    if points < 2:
        raise ConfigError("points must be at least 2", field="points")
    return points


def build_sweep_config(
    scenario: Optional[str],
    var: Optional[str],
    start: Optional[str],
    stop: Optional[str],
    points: Optional[str],
    assignments: Sequence[str],
    weights: Optional[str],
    family: Optional[str],
    side: Optional[str],
    field: Optional[str],
    cp_rule: Optional[str],
    label: Optional[str],
    out: Optional[str]
) -> SweepConfig:
    """
    SweepConfig from raw CLI strings; pydantic does the conversion.

    Raises:
        ConfigError: with the offending flag in `field`
    """
    raw = {
        "scenario": scenario,
        "sweep_variable": var,
        "start": start,
        "stop": stop,
        "points": points,
        "fixed": parse_assignments(assignments),
        "label": label or "",
        "output_path": out,
    }
    if weights is not None:
        raw["weights"] = {"A_ns": [w.strip() for w in weights.split(",")]}
    if family is not None:
        raw["family"] = family
    if side is not None:
        raw["discord_side"] = side
    if field is not None:
        raw["field_kind"] = field
    if cp_rule is not None:
        raw["cp_rule"] = cp_rule

    try:
        return SweepConfig(**{k: v for k, v in raw.items() if v is not None})
    except ValidationError as e:
        raise _config_error(e)


# ============ OUTPUT ============

def _log_summary(table: SweepTable) -> None:
    for name, maxima in summarize_table(table).items():
        text = ", ".join(
            f"{column}={value:.6g}" for column, value in maxima.items() if value is not None
        )
        logger.info(f"📊 {name}: max {text}")


def emit_outputs(
    table: SweepTable,
    out: Optional[str],
    svg: Optional[str],
    title: Optional[str] = None,
    discord_side: int = 1
) -> int:
    """Write CSV (to `out` or stdout) and the optional chart; return the exit code."""
    if out:
        write_csv(table, out)
    else:
        click.echo(table_to_csv(table), nl=False)
    if svg:
        write_svg(table, svg, title=title, discord_side=discord_side)
    _log_summary(table)

    failed = len(table.failed_rows)
    if failed:
        logger.warning(f"⚠️ {failed} of {len(table.rows)} rows are error rows")
        return EXIT_PARTIAL
    return EXIT_OK


def _fail(error: SpinParityError) -> int:
    logger.error(f"❌ {error}")
    click.echo(f"Error: {error}", err=True)
    return EXIT_CONFIG


# ============ COMMANDS ============

@click.group(context_settings={"help_option_names": ["-h", "--help"]})
@click.version_option(settings.APP_VERSION, prog_name="spinparity")
def cli():
    """Spin-parity entanglement, discord and Bell nonlocality of Dirac bi-spinors."""


@cli.command()
@click.option("--scenario", default=None, help="free, mixture, thermal, cp_diff or cp_diff_thermal")
@click.option("--var", default=None, help="m_over_E, m_over_p, A or beta_p")
@click.option("--from", "start", default=None, help="First sweep value")
@click.option("--to", "stop", default=None, help="Last sweep value")
@click.option("--points", default=None, help="Grid points (>= 2)")
@click.option("--set", "assignments", multiple=True, help="Fixed parameter, key=value")
@click.option("--weights", default=None, help="a00,a01,a10,a11")
@click.option("--family", default=None, help="positive or positive_negative")
@click.option("--side", default=None, help="Discord measurement side, 1 or 2")
@click.option("--field", default=None, help="magnetic or electric")
@click.option("--cp-rule", default=None, help="table or conjugation, for the cp_diff scenarios")
@click.option("--label", default=None, help="Series name in the CSV")
@click.option("--out", default=None, help="CSV path (stdout when omitted)")
@click.option("--svg", default=None, help="SVG chart path")
@click.option("--threads", default=None, help="Worker threads")
@click.pass_context
def sweep(ctx, scenario, var, start, stop, points, assignments, weights, family,
          side, field, cp_rule, label, out, svg, threads):
    """Run one custom sweep."""
    try:
        config = build_sweep_config(
            scenario, var, start, stop, points, assignments,
            weights, family, side, field, cp_rule, label, out
        )
        table = run_configs([config], parse_threads(threads))
        code = emit_outputs(table, out, svg, discord_side=config.discord_side)
    except SpinParityError as e:
        code = _fail(e)
    ctx.exit(code)


def _preset_command(name: str, caption: str) -> click.Command:
    @click.option("--out", default=None, help="CSV path (stdout when omitted)")
    @click.option("--svg", default=None, help="SVG chart path")
    @click.option("--points", default=None, help="Grid points per series")
    @click.option("--threads", default=None, help="Worker threads")
    @click.pass_context
    def run_preset(ctx, out, svg, points, threads):
        try:
            preset = get_preset(name, parse_points(points))
            logger.info(f"🚀 Running preset {name}: {preset.caption}")
            table = run_configs(preset.configs, parse_threads(threads))
            code = emit_outputs(table, out, svg, title=preset.caption)
        except SpinParityError as e:
            code = _fail(e)
        ctx.exit(code)

    return click.command(name=name, help=caption)(run_preset)


for _name, _preset in PRESETS.items():
    cli.add_command(_preset_command(_name, _preset.caption))


@cli.command()
def presets():
    """List the figure presets."""
    for name, preset in PRESETS.items():
        click.echo(f"{name:8s} {preset.caption}")


@cli.command()
@click.option("--bless", is_flag=True, help="Store the current output as the snapshot")
@click.option("--snapshot-dir", default=None, help="Snapshot directory")
@click.option("--preset", "names", multiple=True, help="Preset to check (repeatable, default all)")
@click.option("--threads", default=None, help="Worker threads")
@click.pass_context
def snapshot(ctx, bless, snapshot_dir, names, threads):
    """Check the presets against their stored CSV snapshots."""
    try:
        results = regression_snapshot(
            presets=list(names) or None,
            snapshot_dir=snapshot_dir,
            bless=bless,
            threads=parse_threads(threads)
        )
    except SweepError as e:
        ctx.exit(_fail(e))

    for result in results:
        click.echo(f"{result.preset:8s} {result.status:8s} {result.path}")
    ctx.exit(EXIT_OK)


# ============ ENTRY POINT ============

def main(argv: Optional[List[str]] = None) -> None:
    """
    Console entry point.

    Click's own usage errors are mapped to exit code 1, so that code 2
    keeps meaning a partial sweep.
    """
    try:
        code = cli.main(args=argv, prog_name="spinparity", standalone_mode=False)
    except click.exceptions.Abort:
        click.echo("Aborted!", err=True)
        sys.exit(EXIT_CONFIG)
    except click.ClickException as e:
        e.show()
        sys.exit(EXIT_CONFIG)
    sys.exit(code or EXIT_OK)


if __name__ == "__main__":
    main()
