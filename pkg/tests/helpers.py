# tests/helpers.py
"""Random model parameters for property tests."""

import math
from typing import Tuple

import numpy as np

from spinparity.schemas import CouplingParams


def random_coupling(rng: np.random.Generator) -> CouplingParams:
    """Random parameters with c2 > 0 and lambda_01 bounded away from zero."""
    while True:
        cp = CouplingParams(
            m=float(rng.uniform(0.0, 3.0)),
            p_vec=tuple(rng.normal(size=3)),
            B_vec=tuple(rng.normal(size=3)),
            kappa=float(rng.normal()),
            chi=float(rng.normal())
        )
        omega = np.cross(cp.p, cp.B)
        K = cp.kappa ** 2 + cp.chi ** 2
        c2 = cp.m ** 2 * cp.kappa ** 2 * float(cp.B @ cp.B) + K * float(omega @ omega)
        c1 = cp.m ** 2 + float(cp.p @ cp.p) + K * float(cp.B @ cp.B)
        if c2 > 1e-3 and c1 - 2 * math.sqrt(c2) > 1e-2:
            return cp


def random_weights(rng: np.random.Generator) -> Tuple[float, float, float, float]:
    w = rng.uniform(size=4)
    w = w / w.sum()
    return tuple(float(x) for x in w)
