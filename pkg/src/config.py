from pathlib import Path
from typing import Optional, Tuple, Type

from pydantic import Field
from pydantic_settings import BaseSettings, PydanticBaseSettingsSource, SettingsConfigDict

from .log_level import LogLevel


class Settings(BaseSettings):
    """Numerical tolerances and logging configuration.

    Only constructor arguments are honoured: command-line runs must not depend
    on the environment, so the env and dotenv sources are switched off.
    """

    model_config = SettingsConfigDict(validate_assignment=True, extra='forbid')

    log_level: LogLevel = Field(
        default=LogLevel.PROGRESS,
        description="Logging level for the application"
    )
    logs_dir: Optional[Path] = Field(
        default=None,
        description="Directory for log files; console only when unset"
    )

    # Hermiticity and rank decisions
    herm_tol: float = Field(default=1e-10, gt=0, description="Relative Hermiticity tolerance for Choi matrices")
    rank_tol: float = Field(default=1e-10, gt=0, description="Eigenvalues below rank_tol * max|eigenvalue| are zero modes")
    predicate_tol: float = Field(default=1e-8, gt=0, description="Default tolerance for the CP/HP/TP predicates")
    equivalence_tol: float = Field(default=1e-8, gt=0, description="Default tolerance for equivalence search and verification")

    # Eigensolver
    jacobi_max_sweeps: int = Field(default=100, gt=0, description="Sweep budget for the cyclic Jacobi solver")
    jacobi_off_tol: float = Field(default=1e-14, gt=0, description="Off-diagonal norm target relative to the input norm")

    # Inversion
    cond_limit: float = Field(default=1e12, gt=1, description="Largest acceptable condition estimate in invert")
    pivot_tol: float = Field(default=1e-13, gt=0, description="Pivots below pivot_tol * norm are singular")

    # Pseudo-unitary machinery
    isotropic_tol: float = Field(default=1e-8, gt=0, description="Smallest usable indefinite norm during completion")
    random_scale_limit: float = Field(default=2.0, gt=0, description="Largest generator scale for random group samples")

    @classmethod
    def settings_customise_sources(
        cls,
        settings_cls: Type[BaseSettings],
        init_settings: PydanticBaseSettingsSource,
        env_settings: PydanticBaseSettingsSource,
        dotenv_settings: PydanticBaseSettingsSource,
        file_secret_settings: PydanticBaseSettingsSource,
    ) -> Tuple[PydanticBaseSettingsSource, ...]:
        return (init_settings,)


# Create global settings instance
settings = Settings()


def resolve(value: Optional[float], name: str) -> float:
    """Return ``value`` or the configured default called ``name``."""
    return getattr(settings, name) if value is None else value
