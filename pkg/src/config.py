import os
from typing import List

from dotenv import load_dotenv

from .errors import UsageError

load_dotenv()

BUDGET_ENV_VAR = "TORIC_CI_BUDGET"
DEFAULT_BUDGET = 10_000_000  # combinations tested, not seconds

# brute_force_violation scans 2^n row subsets
BRUTE_FORCE_MAX_ROWS = 12

DEFAULT_SEED = 0
DEFAULT_JOBS = 1

# Nodes between cancellation checks in parallel search workers
CANCEL_CHECK_EVERY = 1024

# Extra n values scanned past the last failure when locating a bound threshold
BOUND_SCAN_HEADROOM = 50

SEARCH_MODES: List[str] = ["exhaustive", "first-found", "randomized"]
FAMILIES: List[str] = ["curve", "cyclic", "polygon"]

LOG_FORMAT = "%(asctime)s %(levelname)s %(message)s"


def default_budget() -> int:
    raw = os.getenv(BUDGET_ENV_VAR)
    if raw is None or not raw.strip():
        return DEFAULT_BUDGET
    try:
        value = int(raw.strip().replace("_", ""))
    except ValueError as e:
        raise UsageError(f"{BUDGET_ENV_VAR}={raw!r} is not an integer") from e
    if value <= 0:
        raise UsageError(f"{BUDGET_ENV_VAR} must be positive, got {value}")
    return value
