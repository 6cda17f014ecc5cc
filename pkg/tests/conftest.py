import os
import sys
import pytest

# Set environment variables before any other imports
os.environ["LOG_LEVEL"] = "WARNING"
os.environ["RUN_LEDGER_ENABLED"] = "false"
os.environ["SCAN_WORKERS"] = "1"
os.environ["FACTOR_BAILOUT"] = str(10**18)
os.environ["TRIAL_DIVISION_LIMIT"] = str(10**5)
os.environ["INTERVAL_START_BITS"] = "128"
os.environ["INTERVAL_MAX_BITS"] = "1024"

@pytest.fixture(autouse=True)
def reload_config():
    """
    Ensure config is reloaded for each test to pick up any environment changes.
    """
    if 'gcdlab.config' in sys.modules:
        import importlib
        from gcdlab import config
        importlib.reload(config)
