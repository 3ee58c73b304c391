"""Shared fixtures: optimizer configs sized for test speed vs accuracy."""

import numpy as np
import pytest

from geodiscord.measures import OptimizerConfig


@pytest.fixture(scope="session")
def fast_config():
    """Enough restarts for reliable two-qubit optima, cheap enough for loops."""
    return OptimizerConfig(restarts=6, seed=11)


@pytest.fixture(scope="session")
def tiny_config():
    """Minimal restarts; structured seed bases still hit two-qubit optima."""
    return OptimizerConfig(restarts=4, seed=11)


@pytest.fixture(scope="session")
def full_config():
    return OptimizerConfig(restarts=16, seed=7)


@pytest.fixture
def rng():
    return np.random.default_rng(20260814)
