"""Application configuration and benchmark system presets."""

import logging
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from pathlib import Path

from pydantic_settings import BaseSettings, SettingsConfigDict

LOG_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"


class Environment(str, Enum):
    DEVELOPMENT = "development"
    PRODUCTION = "production"


class Settings(BaseSettings):
    """Settings loaded from ``TOA_``-prefixed environment variables."""

    # API
    env: Environment = Environment.DEVELOPMENT
    api_host: str = "0.0.0.0"
    api_port: int = 8000
    api_prefix: str = "/v1"

    log_level: str = "INFO"

    # CLI
    output_dir: Path | None = None

    # Engines
    max_order: int = 64
    cache_size: int = 32

    # Numerics
    quad_abs_tol: float = 1e-10
    quad_max_subdiv: int = 60
    fd_step: float = 1e-6

    model_config = SettingsConfigDict(env_prefix="TOA_", case_sensitive=False)


@lru_cache
def get_settings() -> Settings:
    """Get cached settings instance."""
    return Settings()


def configure_logging(level: str | None = None) -> None:
    """Configure root logging once for the CLI and the ASGI app."""
    logging.basicConfig(
        level=(level or get_settings().log_level).upper(),
        format=LOG_FORMAT,
    )


class BenchmarkSystem(str, Enum):
    """Systems with printed closed forms to check the engines against."""

    FREE = "free"
    LINEAR = "linear"
    HARMONIC = "harmonic"
    QUARTIC = "quartic"


@dataclass(frozen=True)
class SystemPreset:
    """Potential text and default numeric parameters of a benchmark system."""

    potential: str
    params: tuple[tuple[str, float], ...]
    linear_system: bool
    label: str

    def param_map(self) -> dict[str, float]:
        return dict(self.params)


SYSTEM_PRESETS: dict[BenchmarkSystem, SystemPreset] = {
    BenchmarkSystem.FREE: SystemPreset(
        potential="0",
        params=(),
        linear_system=True,
        label="0",
    ),
    BenchmarkSystem.LINEAR: SystemPreset(
        potential="lambda*q",
        params=(("lambda", 1.0),),
        linear_system=True,
        label="λq",
    ),
    BenchmarkSystem.HARMONIC: SystemPreset(
        potential="1/2*mu*omega^2*q^2",
        params=(("omega", 1.0),),
        linear_system=True,
        label="½μω²q²",
    ),
    BenchmarkSystem.QUARTIC: SystemPreset(
        potential="lambda*q^4",
        params=(("lambda", 1.0),),
        linear_system=False,
        label="λq⁴",
    ),
}


def get_system_preset(system: BenchmarkSystem) -> SystemPreset:
    """Get the preset for a benchmark system."""
    return SYSTEM_PRESETS[system]
