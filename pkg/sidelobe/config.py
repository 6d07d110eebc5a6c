"""Configuration: version, numeric defaults, environment settings."""

import logging
import os

VERSION_MAJOR = 1
VERSION_MINOR = 0
VERSION_PATCH = 0
VERSION = f"{VERSION_MAJOR}.{VERSION_MINOR}.{VERSION_PATCH}"

# Stopping rule: |J(k+1) - J(k)| / max(1, J(k)) <= tolerance
DEFAULT_TOLERANCE = 1e-5
DEFAULT_MAX_ITERS = 100_000

# Relative slack allowed when checking monotone descent between iterates
DESCENT_SLACK = 1e-9

# SQUAREM step-length backtracking: alpha <- (alpha - 1) / 2 at most this often
MAX_SQUAREM_HALVINGS = 60

# Backtracking-MISL acceptance u_L >= f is tested with this relative slack
LADDER_SLACK = 1e-12

# Dense oracle guards
PHI_MAX_N = 12  # Phi is N^2 x N^2
BRUTEFORCE_MAX_N = 4096  # O(N^2) double sums

SEED_ENV = "SIDELOBE_SEED"
JOBS_ENV = "SIDELOBE_JOBS"
LOG_LEVEL_ENV = "SIDELOBE_LOG_LEVEL"


def seed_override() -> int | None:
    """Seed from SIDELOBE_SEED, or None when unset."""
    raw = os.environ.get(SEED_ENV, "").strip()
    if not raw:
        return None
    try:
        seed = int(raw)
    except ValueError:
        raise ValueError(f"{SEED_ENV} must be an unsigned integer, got '{raw}'")
    if seed < 0:
        raise ValueError(f"{SEED_ENV} must be an unsigned integer, got '{raw}'")
    return seed


def default_jobs() -> int:
    raw = os.environ.get(JOBS_ENV, "").strip()
    if not raw:
        return 1
    try:
        return max(1, int(raw))
    except ValueError:
        raise ValueError(f"{JOBS_ENV} must be a positive integer, got '{raw}'")


def log_level() -> int:
    name = os.environ.get(LOG_LEVEL_ENV, "INFO").upper()
    level = logging.getLevelName(name)
    return level if isinstance(level, int) else logging.INFO
