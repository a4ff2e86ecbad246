import os
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Optional

from dotenv import load_dotenv

from .errors import ConfigError


load_dotenv()


@dataclass(slots=True)
class Settings:
    """Container for environment-driven configuration with sane numerical defaults.

    ``UQP_WORKERS`` is kept raw and parsed on first use, so a malformed value surfaces
    as a ``ConfigError`` from the command that needs it.
    """

    workers_raw: Optional[str] = field(default_factory=lambda: os.getenv("UQP_WORKERS"))

    oracle_grid_points: int = 16
    oracle_max_dimension: int = 8
    oracle_max_candidates: int = 10**8

    power_max_iters: int = 1000
    power_tol: float = 1e-10

    eigen_cap_factor: int = 100
    eigen_residual_tol: float = 1e-8
    dominant_residual_tol: float = 1e-10

    hermitian_tol: float = 1e-9
    pd_gate: float = 1e-10
    zero_entry_tol: float = 1e-12
    greedy_tie_tol: float = 1e-14

    log_format: str = "%(asctime)s %(levelname)s %(name)s %(message)s"

    @property
    def workers(self) -> int:
        return _positive_int("UQP_WORKERS", self.workers_raw, os.cpu_count() or 1)


def _positive_int(key: str, raw: Optional[str], default: int) -> int:
    if raw is None or not raw.strip():
        return default
    try:
        value = int(raw)
    except ValueError as exc:
        raise ConfigError(f"{key} must be a positive integer, got {raw!r}") from exc
    if value < 1:
        raise ConfigError(f"{key} must be a positive integer, got {raw!r}")
    return value


@lru_cache
def get_settings() -> Settings:
    return Settings()
