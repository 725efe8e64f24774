import logging
import os
from typing import Callable, TypeVar

from dotenv import load_dotenv

load_dotenv()

logger = logging.getLogger(__name__)

T = TypeVar("T", int, float)


def _typed_env(name: str, default: T, cast: Callable[[str], T]) -> T:
    value = os.getenv(name)
    if not value:
        return default
    try:
        return cast(value)
    except ValueError:
        logger.warning("Ignoring %s=%r, not a valid %s; using %s", name, value, cast.__name__, default)
        return default


def _int_env(name: str, default: int) -> int:
    return _typed_env(name, default, int)


def _float_env(name: str, default: float) -> float:
    return _typed_env(name, default, float)


class Settings:
    TOOL_VERSION = "0.1.0"

    # Worker count for the exhaustive witness search
    JOBS = _int_env("CLIFFORD_SPLIT_JOBS", 1)

    # Dimension bounds: closed-form commands vs. tuple-space search
    MAX_DIM = _int_env("CLIFFORD_SPLIT_MAX_DIM", 64)
    MAX_SEARCH_DIM = _int_env("CLIFFORD_SPLIT_MAX_SEARCH_DIM", 12)

    # Dense complex checks
    WEYL_TOLERANCE = _float_env("CLIFFORD_SPLIT_WEYL_TOL", 1e-10)
    WEYL_MAX_DIM = _int_env("CLIFFORD_SPLIT_WEYL_MAX_DIM", 16)

    LOG_LEVEL = os.getenv("CLIFFORD_SPLIT_LOG_LEVEL", "WARNING")

settings = Settings()
