"""
Runtime settings for isogeny-lab.

Values come from the environment (optionally a .env file in the working
directory) with defaults suitable for reproducible runs.
"""

import logging
import os
from dataclasses import dataclass

from dotenv import load_dotenv

from exceptions import ConfigError

DEFAULT_SEED = 20240229
DEFAULT_THREADS = 1
DEFAULT_LOG_LEVEL = 'WARNING'

LOG_FORMAT = '%(name)s [%(levelname)s] %(message)s'
LOG_LEVELS = ('CRITICAL', 'ERROR', 'WARNING', 'INFO', 'DEBUG')

SAMPLE_ENV = f"""# isogeny-lab configuration
# Upper bound on sweep worker processes
ISOGENY_LAB_THREADS={DEFAULT_THREADS}

# Default seed for randomized checks (--seed overrides)
ISOGENY_LAB_SEED={DEFAULT_SEED}

# DEBUG, INFO, WARNING, ERROR
ISOGENY_LAB_LOG_LEVEL={DEFAULT_LOG_LEVEL}
"""


@dataclass(frozen=True)
class LabSettings:
    threads: int = DEFAULT_THREADS
    seed: int = DEFAULT_SEED
    log_level: str = DEFAULT_LOG_LEVEL


def _int_setting(name, default, minimum=None):
    raw = os.environ.get(name)
    if raw is None or raw.strip() == '':
        return default
    try:
        value = int(raw, 0)
    except ValueError:
        raise ConfigError(f"{name} must be an integer, got {raw!r}")
    if minimum is not None and value < minimum:
        raise ConfigError(f"{name} must be >= {minimum}, got {value}")
    return value


def load_settings(dotenv_path=None):
    """Read settings from the environment after loading .env (if present)"""
    load_dotenv(dotenv_path=dotenv_path, override=False)

    level = os.environ.get('ISOGENY_LAB_LOG_LEVEL', DEFAULT_LOG_LEVEL).upper()
    if level not in LOG_LEVELS:
        raise ConfigError(f"ISOGENY_LAB_LOG_LEVEL: unknown level {level!r}")

    return LabSettings(
        threads=_int_setting('ISOGENY_LAB_THREADS', DEFAULT_THREADS, minimum=1),
        seed=_int_setting('ISOGENY_LAB_SEED', DEFAULT_SEED),
        log_level=level,
    )


def configure_logging(level=DEFAULT_LOG_LEVEL):
    """Send all lab loggers to stderr; stdout is reserved for records."""
    root = logging.getLogger()
    for existing in list(root.handlers):
        if getattr(existing, 'lab_handler', False):
            root.removeHandler(existing)
    handler = logging.StreamHandler()
    handler.setFormatter(logging.Formatter(LOG_FORMAT))
    handler.lab_handler = True
    root.addHandler(handler)
    root.setLevel(level)
    return handler
