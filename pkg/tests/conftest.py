"""Pytest configuration and fixtures."""

import random
from collections.abc import Callable, Generator
from fractions import Fraction

import pytest
from fastapi.testclient import TestClient

from toa_correspondence.algebra import Monomial
from toa_correspondence.config import BenchmarkSystem, get_settings, get_system_preset
from toa_correspondence.main import create_app
from toa_correspondence.physics.numeric import NumericConfig
from toa_correspondence.physics.potential import (
    PolynomialPotential,
    PotentialTerm,
    parse_potential,
)
from toa_correspondence.services.pipeline_service import reset_pipeline_service
from toa_correspondence.services.table_service import reset_table_service


def preset_potential(system: BenchmarkSystem) -> PolynomialPotential:
    return parse_potential(get_system_preset(system).potential)


@pytest.fixture
def reset_singletons():
    """Reset cached settings and singleton services around each test."""
    get_settings.cache_clear()
    reset_pipeline_service()
    reset_table_service()

    yield

    get_settings.cache_clear()
    reset_pipeline_service()
    reset_table_service()


@pytest.fixture
def app(reset_singletons):
    """Create FastAPI app for testing."""
    return create_app()


@pytest.fixture
def client(app) -> Generator[TestClient, None, None]:
    """Create test client."""
    with TestClient(app, raise_server_exceptions=False) as test_client:
        yield test_client


@pytest.fixture
def free() -> PolynomialPotential:
    return preset_potential(BenchmarkSystem.FREE)


@pytest.fixture
def linear() -> PolynomialPotential:
    return preset_potential(BenchmarkSystem.LINEAR)


@pytest.fixture
def harmonic() -> PolynomialPotential:
    return preset_potential(BenchmarkSystem.HARMONIC)


@pytest.fixture
def quartic() -> PolynomialPotential:
    return preset_potential(BenchmarkSystem.QUARTIC)


@pytest.fixture
def numeric_config() -> NumericConfig:
    return NumericConfig()


@pytest.fixture
def random_potential() -> Callable[..., PolynomialPotential]:
    """Seeded potentials with rational coefficients and one parameter per term."""

    def build(seed: int, max_degree: int = 5, even: bool = False) -> PolynomialPotential:
        rng = random.Random(seed)
        degrees = list(range(2 if even else 1, max_degree + 1, 2 if even else 1))
        chosen = rng.sample(degrees, rng.randint(1, len(degrees)))
        return PolynomialPotential(
            tuple(
                PotentialTerm(
                    degree,
                    Fraction(rng.choice([-1, 1]) * rng.randint(1, 6), rng.randint(1, 4)),
                    Monomial.scalar(mu=rng.randint(0, 1), sym={f"a{degree}": 1}),
                )
                for degree in chosen
            )
        )

    return build
