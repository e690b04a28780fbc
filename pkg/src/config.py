"""
Runtime configuration for the antilattice toolkit.

Settings come from environment variables, optionally loaded from a .env
file. Bounds are read on every call so a test or the CLI can override
them without re-importing anything.
"""

import logging
import os
from pathlib import Path

try:
    from dotenv import load_dotenv
    load_dotenv()
except ImportError:
    pass

from src.errors import ValidationError

DATA_DIR = Path(__file__).resolve().parent.parent / "data"

# Default bounds (env var name -> default)
DEFAULTS = {
    "ANTILATTICE_MAX_ORDER": 8,
    "ANTILATTICE_MAX_CARRIER": 4096,
    "ANTILATTICE_MAX_SUBALGEBRA_ORDER": 16,
    "ANTILATTICE_MAX_CONGRUENCE_ORDER": 8,
    "ANTILATTICE_MAX_ISO_ORDER": 8,
    "ANTILATTICE_MAX_BAND_ORDER": 5,
}

DEFAULT_LOG_LEVEL = "WARNING"


def _env_int(name: str) -> int:
    raw = os.environ.get(name, "").strip()
    if not raw:
        return DEFAULTS[name]
    try:
        value = int(raw)
    except ValueError:
        raise ValidationError(f"{name} must be an integer, got {raw!r}") from None
    if value < 1:
        raise ValidationError(f"{name} must be positive, got {value}")
    return value


def max_order() -> int:
    """Largest order accepted by the exhaustive enumeration."""
    return _env_int("ANTILATTICE_MAX_ORDER")


def max_carrier() -> int:
    """Largest carrier a direct product may build."""
    return _env_int("ANTILATTICE_MAX_CARRIER")


def max_subalgebra_order() -> int:
    return _env_int("ANTILATTICE_MAX_SUBALGEBRA_ORDER")


def max_congruence_order() -> int:
    return _env_int("ANTILATTICE_MAX_CONGRUENCE_ORDER")


def max_iso_order() -> int:
    return _env_int("ANTILATTICE_MAX_ISO_ORDER")


def max_band_order() -> int:
    return _env_int("ANTILATTICE_MAX_BAND_ORDER")


def log_level() -> str:
    return os.environ.get("ANTILATTICE_LOG_LEVEL", DEFAULT_LOG_LEVEL).upper()


def configure_logging(level: str | None = None) -> None:
    """Set up root logging for command-line use."""
    name = (level or log_level()).upper()
    if not isinstance(logging.getLevelName(name), int):
        raise ValidationError(f"unknown log level {name!r}")
    logging.basicConfig(
        level=name,
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
    )
