import os
import sys

from dotenv import load_dotenv

DEFAULT_GUARD = 8
DEFAULT_GROUP_CAP = 10**7
DEFAULT_TERM_BUDGET = 10**6
DEFAULT_ENUMERATION_GUARD = 10**8
DEFAULT_SEED = 0
DEFAULT_GENERATION_BUDGET = 20000


def load_settings() -> None:
    """Loads a local .env file into the process environment (existing variables win)."""
    load_dotenv()


def _int_env(name: str, default: int) -> int:
    raw = os.getenv(name)
    if raw is None or raw.strip() == "":
        return default
    try:
        return int(raw)
    except ValueError:
        print(f"Warning: {name}={raw!r} is not an integer, using {default}.", file=sys.stderr)
        return default


def get_guard() -> int:
    return _int_env("SKEINLAB_GUARD", DEFAULT_GUARD)


def get_group_cap() -> int:
    return _int_env("SKEINLAB_GROUP_CAP", DEFAULT_GROUP_CAP)


def get_term_budget() -> int:
    return _int_env("SKEINLAB_TERM_BUDGET", DEFAULT_TERM_BUDGET)


def get_enumeration_guard() -> int:
    return _int_env("SKEINLAB_ENUMERATION_GUARD", DEFAULT_ENUMERATION_GUARD)


def get_seed() -> int:
    return _int_env("SKEINLAB_SEED", DEFAULT_SEED)


def get_generation_budget() -> int:
    return _int_env("SKEINLAB_GENERATION_BUDGET", DEFAULT_GENERATION_BUDGET)
