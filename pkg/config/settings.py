"""
Configuration settings for the resonance scanner
"""
from pydantic_settings import BaseSettings


class Settings(BaseSettings):
    """Application settings"""

    # Logging
    LOG_LEVEL: str = "INFO"
    LOG_FORMAT: str = (
        "<green>{time:HH:mm:ss}</green> | <level>{level: <8}</level> | "
        "<cyan>{name}</cyan>:<cyan>{function}</cyan>:<cyan>{line}</cyan> - <level>{message}</level>"
    )

    # Inverse iteration defaults
    DEFAULT_MAX_ITERS: int = 200
    DEFAULT_TOL: float = 1e-13
    REFERENCE_DEGENERACY: float = 1e-12   # |X[ref]| / max|X| below this → degenerate row
    RESIDUAL_FACTOR: float = 1e-8         # converged ⇒ residual ≤ RESIDUAL_FACTOR * ||H||inf

    # Elimination
    PIVOT_FLOOR: float = 1e-300
    SHIFT_NUDGE_DIVISOR: float = 17.0     # singular shift → retry at e0 + DE / 17

    # Scan
    DEDUPE_TOL: float = 1e-9
    MIN_PERSISTENCE: int = 2
    SCAN_WORKERS: int = 1                 # 1 = serial

    # Matrix construction
    MAX_DEGREE: int = 8
    MAX_DENSE_DIM: int = 512

    # Energy-shift probes
    PROBE_DELTA: float = 0.00005

    # Reports
    REPORT_DIR: str = "reports"
    FLOAT_DIGITS: int = 17

    @property
    def float_format(self) -> str:
        """printf-style format giving a lossless double round-trip"""
        return f"%.{self.FLOAT_DIGITS}g"

    class Config:
        env_file = ".env"
        case_sensitive = True


# Global settings instance
settings = Settings()
