# spinparity/sweeps/snapshots.py
"""
Regression Snapshots
====================
Frozen CSV output of the figure presets.

    bless   - run the presets and store their CSV under SNAPSHOT_DIR
    check   - run again and compare cell by cell within SNAPSHOT_TOLERANCE

Snapshot layout:
    <SNAPSHOT_DIR>/<preset>.csv
"""

import csv
import io
import logging
import math
from pathlib import Path
from typing import List, Optional, Sequence

from spinparity.config import settings
from spinparity.exceptions import SnapshotMismatch, SnapshotMissing
from spinparity.schemas import SnapshotResult
from spinparity.sweeps.presets import PRESETS, get_preset
from spinparity.sweeps.runner import run_configs, table_to_csv

logger = logging.getLogger(__name__)


def snapshot_path(name: str, snapshot_dir: Optional[str] = None) -> Path:
    return Path(snapshot_dir or settings.SNAPSHOT_DIR) / f"{name}.csv"


def _cells_match(stored: str, current: str, tolerance: float) -> bool:
    if stored == current:
        return True
    try:
        a, b = float(stored), float(current)
    except ValueError:
        return False
    if math.isnan(a) or math.isnan(b):
        return math.isnan(a) and math.isnan(b)
    return abs(a - b) <= tolerance


def compare_csv(stored: str, current: str, tolerance: Optional[float] = None) -> None:
    """
    Cell-by-cell comparison of two CSV documents.

    Raises:
        SnapshotMismatch: first diverging cell; row counts data rows from 0,
        header differences report row=None
    """
    tolerance = settings.SNAPSHOT_TOLERANCE if tolerance is None else tolerance
    stored_rows = list(csv.reader(io.StringIO(stored)))
    current_rows = list(csv.reader(io.StringIO(current)))

    if not stored_rows or not current_rows or stored_rows[0] != current_rows[0]:
        raise SnapshotMismatch("CSV header differs", row=None, column=None)
    header = stored_rows[0]

    for index, (old, new) in enumerate(zip(stored_rows[1:], current_rows[1:])):
        for column, a, b in zip(header, old, new):
            if not _cells_match(a, b, tolerance):
                raise SnapshotMismatch(
                    f"cell differs: stored {a}, current {b}",
                    row=index,
                    column=column
                )

    if len(stored_rows) != len(current_rows):
        raise SnapshotMismatch(
            f"row count differs: stored {len(stored_rows) - 1}, current {len(current_rows) - 1}",
            row=min(len(stored_rows), len(current_rows)) - 1,
            column=None
        )


def regression_snapshot(
    presets: Optional[Sequence[str]] = None,
    snapshot_dir: Optional[str] = None,
    bless: bool = False,
    threads: Optional[int] = None
) -> List[SnapshotResult]:
    """
    Check (or bless) the stored CSV of each preset.

    Args:
        presets: Preset names, all of them when omitted
        snapshot_dir: Directory holding the snapshots, SNAPSHOT_DIR when omitted
        bless: Write the current output instead of comparing
        threads: Worker threads per sweep

    Returns:
        One SnapshotResult per preset

    Raises:
        SnapshotMissing: no stored file and bless is False
        SnapshotMismatch: first cell outside SNAPSHOT_TOLERANCE
    """
    names = list(presets) if presets else list(PRESETS)
    results: List[SnapshotResult] = []

    for name in names:
        preset = get_preset(name)
        path = snapshot_path(name, snapshot_dir)
        current = table_to_csv(run_configs(preset.configs, threads))

        if bless:
            path.parent.mkdir(parents=True, exist_ok=True)
            with open(path, "w", encoding="utf-8", newline="") as f:
                f.write(current)
            logger.info(f"📸 Blessed {name} → {path}")
            results.append(SnapshotResult(preset=name, status="blessed", path=str(path)))
            continue

        if not path.exists():
            raise SnapshotMissing(f"no snapshot for preset '{name}'", path=str(path))
        with open(path, "r", encoding="utf-8", newline="") as f:
            stored = f.read()

        identical = stored == current
        if not identical:
            compare_csv(stored, current)
            logger.warning(f"⚠️ {name}: within tolerance but not byte-identical")
        logger.info(f"✅ Snapshot {name} passed")
        results.append(SnapshotResult(
            preset=name,
            status="passed",
            path=str(path),
            byte_identical=identical
        ))

    return results
