# spinparity/sweeps/charts.py
"""
SVG Charts
==========
Line charts of sweep tables:
negativity solid, geometric discord dashed, Bell function dotted.
CP-difference tables draw one curve per series with the styles cycling.

The SVG is reproducible: fixed hash salt and no creation date.
"""

import io
import logging
from typing import Optional

import matplotlib
from matplotlib.figure import Figure

from spinparity.exceptions import EmptyTable
from spinparity.schemas import SweepTable
from spinparity.sweeps.runner import sweep_axis_label

logger = logging.getLogger(__name__)

LINE_STYLES = ("-", "--", ":")

_SVG_RC = {
    "svg.hashsalt": "spinparity",
    "svg.fonttype": "none",
}


def emit_svg(table: SweepTable, title: Optional[str] = None, discord_side: int = 1) -> str:
    """
    Render a sweep table as an SVG document.

    Args:
        table: Sweep result with at least 2 rows
        title: Chart title
        discord_side: Which discord column to draw

    Returns:
        SVG text

    Raises:
        EmptyTable: fewer than 2 rows
    """
    if len(table.rows) < 2:
        raise EmptyTable("a chart needs at least 2 rows", rows=len(table.rows))

    discord_column = "discord1" if discord_side == 1 else "discord2"

    with matplotlib.rc_context(_SVG_RC):
        fig = Figure(figsize=(6.4, 4.8))
        ax = fig.add_subplot()

        for index, name in enumerate(table.series):
            rows = [row for row in table.rows if row.series == name]
            xs = [row.var for row in rows]

            if table.include_cp_diff:
                ax.plot(
                    xs,
                    [row.cp_discord_diff for row in rows],
                    linestyle=LINE_STYLES[index % 3],
                    color=f"C{index // 3}",
                    label=name
                )
                continue

            color = f"C{index}"
            ax.plot(xs, [row.negativity for row in rows], linestyle="-", color=color,
                    label=f"N {name}")
            ax.plot(xs, [getattr(row, discord_column) for row in rows], linestyle="--",
                    color=color, label=f"D {name}")
            ax.plot(xs, [row.bell_B for row in rows], linestyle=":", color=color,
                    label=f"B {name}")

        ax.set_xlabel(sweep_axis_label(table.sweep_variable))
        ax.set_ylabel("|D^CP - D|" if table.include_cp_diff else "N, D, B")
        if title:
            ax.set_title(title)
        ax.legend(fontsize="small")
        ax.grid(True, alpha=0.3)

        buffer = io.StringIO()
        fig.savefig(buffer, format="svg", metadata={"Date": None})

    logger.debug(f"Rendered chart with {len(table.series)} series")
    return buffer.getvalue()


def write_svg(table: SweepTable, path: str, title: Optional[str] = None, discord_side: int = 1) -> None:
    with open(path, "w", encoding="utf-8") as f:
        f.write(emit_svg(table, title, discord_side))
    logger.info(f"🖼️ Wrote chart to {path}")
