import os
import logging
from dataclasses import dataclass
from dotenv import load_dotenv

logger = logging.getLogger(__name__)


@dataclass
class Settings:
    """Runtime settings read from the environment (and a .env file when present)"""
    log_level: str = "INFO"
    default_modulus: int = 6
    max_group_order: int = 24
    max_cells: int = 40_000_000
    h3_max_order: int = 8
    reports_dir: str = "reports"

    @classmethod
    def from_env(cls) -> "Settings":
        load_dotenv()
        defaults = cls()

        def read_int(name: str, fallback: int) -> int:
            raw = os.getenv(name)
            if raw is None or raw.strip() == "":
                return fallback
            try:
                return int(raw)
            except ValueError:
                logger.warning(f"Ignoring non-integer {name}={raw!r}, using {fallback}")
                return fallback

        return cls(
            log_level=os.getenv("LOG_LEVEL", defaults.log_level).upper(),
            default_modulus=read_int("MP_DEFAULT_MODULUS", defaults.default_modulus),
            max_group_order=read_int("MP_MAX_GROUP_ORDER", defaults.max_group_order),
            max_cells=read_int("MP_MAX_CELLS", defaults.max_cells),
            h3_max_order=read_int("MP_H3_MAX_ORDER", defaults.h3_max_order),
            reports_dir=os.getenv("MP_REPORTS_DIR", defaults.reports_dir),
        )
