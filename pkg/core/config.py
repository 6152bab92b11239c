from pydantic_settings import BaseSettings, SettingsConfigDict
from pydantic import Field
from typing import Literal


class Settings(BaseSettings):
    # Logging
    log_level: str = Field(default="INFO")
    log_format: str = Field(default="%(asctime)s - %(name)s - %(levelname)s - %(message)s")

    # Curve discretization and distance defaults
    default_segments: int = Field(default=1000, ge=1)
    default_kappa: float = Field(default=1.0, gt=0)
    default_seed: int = Field(default=0, ge=0)
    default_format: Literal["json", "csv"] = Field(default="json")

    # Symmetric eigensolver
    eigensolver: Literal["lapack", "jacobi"] = Field(default="lapack")
    jacobi_max_sweeps: int = Field(default=100, ge=1)
    jacobi_tolerance: float = Field(default=1e-13, gt=0)

    # Numerical tolerances
    symmetry_tolerance: float = Field(default=1e-9, gt=0)
    siegel_imag_tolerance: float = Field(default=1e-8, gt=0)
    siegel_clamp: float = Field(default=1e-15, gt=0)
    conjugate_pair_tolerance: float = Field(default=1e-8, gt=0)

    # Minimax
    seb_iterations: int = Field(default=1000, ge=1)

    # Benchmarks
    bench_trials: int = Field(default=100, ge=1)
    bench_dims: str = Field(default="1,2,3,5,20")
    bench_workers: int = Field(default=4, ge=1)
    goldens_path: str = Field(default="config/goldens/reference_values.json")

    model_config = SettingsConfigDict(
        env_file=".env", env_prefix="RAOMVN_", case_sensitive=False, extra="ignore"
    )


settings = Settings()
