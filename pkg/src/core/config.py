"""Configuration management for conjtensor"""

from pathlib import Path
from typing import Optional
from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict
from dotenv import load_dotenv


class Settings(BaseSettings):
    """Application settings with environment variable support"""

    model_config = SettingsConfigDict(
        env_prefix="CONJTENSOR_",
        env_file=".env",
        env_file_encoding="utf-8",
        case_sensitive=False,
        extra="ignore",
    )

    # Structure tolerances
    tau_sym: float = Field(default=1e-10, gt=0, description="Entrywise tolerance of the symmetry predicates")
    tau_dec: float = Field(default=1e-9, gt=0, description="Eigenvalue cutoff and residual bound for CPS decompositions")
    tau_real_parsed: float = Field(default=1e-12, gt=0, description="Realness tolerance for polynomials read from text")
    tau_real_tensor: float = Field(default=1e-9, gt=0, description="Realness tolerance for polynomials built from tensors")

    # Solver tolerances
    tau_eig: float = Field(default=1e-8, gt=0, description="Residual bound for accepted eigenpairs")
    tau_eq: float = Field(default=1e-6, gt=0, description="Gap tolerance of the Banach equality checks")
    tau_bca: float = Field(default=1e-10, gt=0, description="Per-sweep improvement threshold of block ascent")

    # Solver budget
    starts: int = Field(default=32, ge=1, description="Random starts per multistart run")
    max_iters: int = Field(default=2000, ge=1, description="Iteration cap per start")
    newton_max_iters: int = Field(default=60, ge=1, description="Newton polish iteration cap")
    shift_cap_exponent: int = Field(default=10, ge=0, description="Shift is capped at 2**k times the tensor norm")
    seed: int = Field(default=0, description="Seed of the run generator")

    # Hermitian eigensolver
    jacobi_tol: float = Field(default=1e-12, gt=0, description="Relative off-diagonal tolerance of the Jacobi sweeps")
    jacobi_max_sweeps: int = Field(default=100, ge=1, description="Sweep cap of the Jacobi eigensolver")

    # Reporting
    witness_cap: int = Field(default=20, ge=1, description="Maximum witness pairs in a realness verdict")
    output_digits: int = Field(default=12, ge=1, le=17, description="Significant digits of JSON floats")

    # Paths
    schemas_dir: Path = Field(
        default=Path(__file__).resolve().parents[2] / "schemas",
        description="Directory holding the JSON schemas",
    )

    # Logging Configuration
    log_level: str = Field(default="WARNING", description="Logging level (DEBUG, INFO, WARNING, ERROR)")
    log_file: Optional[str] = Field(default=None, description="Log file path (None for stderr only)")


def load_settings() -> Settings:
    """Load settings from environment and .env file"""
    env_path = Path(".env")
    if env_path.exists():
        load_dotenv(env_path)

    return Settings()


# Global settings instance
settings = load_settings()
