"""Runtime configuration read from the environment.

Every variable is optional:
    - ``SURFCX_EXHAUSTIVE_MAX`` → largest cube count swept exhaustively (20)
    - ``SURFCX_SEED``           → seed for heuristic restarts (0)
    - ``SURFCX_RESTARTS``       → number of heuristic restarts (8)
    - ``SURFCX_WORKERS``        → parallel workers for census / sweeps (1)
    - ``SURFCX_LOG_LEVEL``      → logging level name (WARNING)
"""

from __future__ import annotations

import os

from pydantic import BaseModel, Field


class Settings(BaseModel):
    exhaustive_max: int = Field(default=20, ge=0, le=30)
    seed: int = Field(default=0)
    restarts: int = Field(default=8, ge=1)
    workers: int = Field(default=1, ge=1)
    log_level: str = Field(default="WARNING")


def get_settings() -> Settings:
    """Build a :class:`Settings` from ``SURFCX_*`` environment variables."""
    env = os.environ
    return Settings(
        exhaustive_max=int(env.get("SURFCX_EXHAUSTIVE_MAX", 20)),
        seed=int(env.get("SURFCX_SEED", 0)),
        restarts=int(env.get("SURFCX_RESTARTS", 8)),
        workers=int(env.get("SURFCX_WORKERS", 1)),
        log_level=env.get("SURFCX_LOG_LEVEL", "WARNING").upper(),
    )
