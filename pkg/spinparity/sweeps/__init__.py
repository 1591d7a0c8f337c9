# spinparity/sweeps/__init__.py
"""
Sweeps Package
==============
Outer layer: sweep evaluation, figure presets, charts and snapshots.
"""

from spinparity.sweeps import charts, presets, runner, snapshots

__all__ = ["charts", "presets", "runner", "snapshots"]
