import os
import logging
from functools import lru_cache
from pydantic import BaseModel, ConfigDict, ValidationError, field_validator
from dotenv import load_dotenv

from .exceptions import ConfigError

# Load environment variables
load_dotenv()

LOG_FORMAT = '%(asctime)s - %(levelname)s - %(message)s'


class Settings(BaseModel):
    model_config = ConfigDict(frozen=True)

    log_level: str = "INFO"
    max_vertices: int = 4096
    default_format: str = "json"
    random_seed: int = 2009

    @field_validator("log_level")
    @classmethod
    def _known_level(cls, value: str) -> str:
        value = value.upper()
        # logging.getLevelNamesMapping() is 3.11+; it returns a copy of _nameToLevel
        levels = getattr(logging, "getLevelNamesMapping", lambda: dict(logging._nameToLevel))()
        if value not in levels:
            raise ValueError(f"Unknown log level: {value}")
        return value

    @field_validator("default_format")
    @classmethod
    def _known_format(cls, value: str) -> str:
        value = value.lower()
        if value not in ("json", "text"):
            raise ValueError(f"Unknown output format: {value}")
        return value


def _env_int(name: str, default: int) -> int:
    raw = os.getenv(name)
    if raw is None:
        return default
    try:
        return int(raw)
    except ValueError:
        raise ConfigError(f"{name} must be an integer, got {raw!r}")


@lru_cache(maxsize=1)
def get_settings() -> Settings:
    """Settings from the environment (and .env, if present)"""
    try:
        return Settings(
            log_level=os.getenv("COBWEB_LOG_LEVEL", "INFO"),
            max_vertices=_env_int("COBWEB_MAX_VERTICES", 4096),
            default_format=os.getenv("COBWEB_DEFAULT_FORMAT", "json"),
            random_seed=_env_int("COBWEB_RANDOM_SEED", 2009),
        )
    except ValidationError as e:
        error = e.errors()[0]
        field = str(error["loc"][0]) if error["loc"] else "setting"
        raise ConfigError(f"Invalid COBWEB_{field.upper()}: {error['msg']}")


def configure_logging(level: str = None) -> None:
    """Configure root logging; called from entry points only"""
    level = (level or get_settings().log_level).upper()
    if not isinstance(logging.getLevelName(level), int):
        raise ConfigError(f"Unknown log level: {level}")
    logging.basicConfig(level=level, format=LOG_FORMAT)
