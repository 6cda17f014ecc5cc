import os
from typing import Optional
from dotenv import load_dotenv
from gcdlab.core.logger import get_logger

load_dotenv()

logger = get_logger(__name__)

def get_env_variable(name: str, default: Optional[str] = None, required: bool = False) -> Optional[str]:
    value = os.getenv(name, default)
    if required and not value:
        logger.error(f"Environment variable {name} is required but not set.")
        raise ValueError(f"Environment variable {name} is required but not set.")
    return value

def get_int_env(name: str, default: int) -> int:
    value = os.getenv(name)
    if value is None:
        return default
    try:
        return int(value)
    except ValueError:
        logger.warning(f"Invalid integer for {name}: {value}. Using default: {default}")
        return default

def get_bool_env(name: str, default: bool) -> bool:
    value = os.getenv(name)
    if value is None:
        return default
    lowered = value.strip().lower()
    if lowered in ("1", "true", "yes", "on"):
        return True
    if lowered in ("0", "false", "no", "off"):
        return False
    logger.warning(f"Invalid boolean for {name}: {value}. Using default: {default}")
    return default

# Project Paths
BASE_DIR = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
STORAGE_DIR: str = get_env_variable("STORAGE_DIR", os.path.join(BASE_DIR, "storage"))
SQLITE_DB_PATH: str = get_env_variable("SQLITE_DB_PATH", os.path.join(STORAGE_DIR, "sqlite", "runs.db"))
SCHEMA_DIR: str = os.path.join(BASE_DIR, "schemas")

# Run ledger
RUN_LEDGER_ENABLED: bool = get_bool_env("RUN_LEDGER_ENABLED", True)

# Concurrency
SCAN_WORKERS: int = get_int_env("SCAN_WORKERS", 1)

# Factorization
FACTOR_BAILOUT: int = get_int_env("FACTOR_BAILOUT", 10**18)
TRIAL_DIVISION_LIMIT: int = get_int_env("TRIAL_DIVISION_LIMIT", 10**6)
RHO_SEED: int = get_int_env("RHO_SEED", 1234)

# Inequality decisions (bits)
INTERVAL_START_BITS: int = get_int_env("INTERVAL_START_BITS", 128)
INTERVAL_MAX_BITS: int = get_int_env("INTERVAL_MAX_BITS", 1024)
EXACT_FAST_BITS: int = get_int_env("EXACT_FAST_BITS", 20000)
EXACT_MAX_BITS: int = get_int_env("EXACT_MAX_BITS", 50_000_000)
