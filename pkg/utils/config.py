# utils/config.py
"""
Runtime settings read from the environment (.env honoured).
"""
from __future__ import annotations

import os
from dataclasses import dataclass, replace

from dotenv import load_dotenv

load_dotenv()


@dataclass(frozen=True)
class Settings:
    enumeration_guard: int
    marking_exact_max_n: int
    node_budget: int
    threads: int
    seed: int
    log_level: str
    pentagon_tol: float

    def with_overrides(self, **overrides) -> "Settings":
        """Return a copy with the non-None overrides applied."""
        return replace(self, **{k: v for k, v in overrides.items() if v is not None})


def get_settings() -> Settings:
    return Settings(
        enumeration_guard=int(os.getenv("SSET_KIT_ENUMERATION_GUARD", "16")),
        marking_exact_max_n=int(os.getenv("SSET_KIT_MARKING_EXACT_MAX_N", "8")),
        node_budget=int(os.getenv("SSET_KIT_NODE_BUDGET", "2000000")),
        threads=max(1, int(os.getenv("SSET_KIT_THREADS", "1"))),
        seed=int(os.getenv("SSET_KIT_SEED", "0")),
        log_level=os.getenv("SSET_KIT_LOG_LEVEL", "WARNING").upper(),
        pentagon_tol=float(os.getenv("SSET_KIT_PENTAGON_TOL", "1e-8")),
    )
