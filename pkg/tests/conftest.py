# tests/conftest.py
"""Shared fixtures: seeded generators and reference states."""

import numpy as np
import pytest

from spinparity.schemas import CouplingParams
from spinparity.services.states import bell_state, random_density_matrix


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture
def bell():
    return bell_state()


@pytest.fixture
def random_states(rng):
    return [random_density_matrix(rng) for _ in range(50)]


@pytest.fixture
def canonical_massless():
    """p = B = kappa = chi = 1, theta = pi/4, m = 0: c1 = 3, c2 = 1."""
    return CouplingParams.canonical(m=0.0)
