import logging
import os
from dataclasses import dataclass

from core.services.log_service import LogService
from core.utils.validators import LimitExceededError

DEFAULT_MAX_N = 12
DEFAULT_LOG_LEVEL = "WARNING"
LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL")


@dataclass(frozen=True)
class Settings:
    """Runtime configuration read from the environment"""

    max_n: int = DEFAULT_MAX_N
    log_level: str = DEFAULT_LOG_LEVEL

    @staticmethod
    def from_env() -> "Settings":
        """Build settings from GPF_MAX_N and GPF_LOG_LEVEL"""
        max_n = DEFAULT_MAX_N
        raw_max_n = os.environ.get("GPF_MAX_N", "").strip()
        if raw_max_n:
            try:
                max_n = int(raw_max_n)
                if max_n < 0:
                    raise ValueError(raw_max_n)
            except ValueError:
                logging.getLogger("gpf").warning(
                    "Ignoring invalid GPF_MAX_N=%r, using %d", raw_max_n, DEFAULT_MAX_N
                )
                max_n = DEFAULT_MAX_N

        log_level = os.environ.get("GPF_LOG_LEVEL", DEFAULT_LOG_LEVEL).strip().upper()
        if log_level not in LOG_LEVELS:
            logging.getLogger("gpf").warning(
                "Ignoring invalid GPF_LOG_LEVEL=%r, using %s", log_level, DEFAULT_LOG_LEVEL
            )
            log_level = DEFAULT_LOG_LEVEL

        return Settings(max_n=max_n, log_level=log_level)

    def require_size(self, operation: str, n: int) -> None:
        """Reject exponential operations past the cap"""
        if n > self.max_n:
            LogService.log_limit_exceeded(operation, n, self.max_n)
            raise LimitExceededError(operation, n, self.max_n)


# Global settings instance
settings = Settings.from_env()


def get_settings() -> Settings:
    """Current settings (looked up at call time so tests can swap them)"""
    return settings
