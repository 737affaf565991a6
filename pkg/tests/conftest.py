"""
Shared fixtures for the braid toolkit tests.
"""

import pytest

from src.braids.algebra.subgroup_series import seeded_rng
from src.braids.models.schemas import BraidWord
from src.braids.services.braid_service import BraidService
from src.braids.services.config import BraidsConfig


@pytest.fixture
def trefoil():
    """Right-handed trefoil as the closure of σ1³."""
    return BraidWord(strands=2, letters=(1, 1, 1))


@pytest.fixture
def figure_eight():
    """Figure-eight knot as the closure of (σ1 σ2^{-1})²."""
    return BraidWord(strands=3, letters=(1, -2, 1, -2))


@pytest.fixture
def rng():
    """Deterministic generator for sampled cases."""
    return seeded_rng(20240601)


@pytest.fixture
def config():
    """Library defaults, independent of Django settings."""
    return BraidsConfig()


@pytest.fixture
def service(config):
    """Braid service with default configuration and seed 0."""
    return BraidService(config=config, seed=0)
