# spinparity/__init__.py
"""
Spin-parity correlations of Dirac bi-spinors.
"""

__version__ = "1.0.0"
