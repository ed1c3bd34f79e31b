"""Resource caps. Environment variables override the defaults."""

import os

DEFAULT_MAX_EDGES = 28
DEFAULT_MAX_TREE_ORDER = 12
MAX_CHROMATIC_ORDER = 16


def _env_int(name: str, default: int) -> int:
    raw = os.environ.get(name)
    if raw is None or raw.strip() == "":
        return default
    value = int(raw)
    if value <= 0:
        raise ValueError(f"{name} must be positive, got {value}")
    return value


def default_max_edges() -> int:
    return _env_int("RAMSEYLAB_MAX_EDGES", DEFAULT_MAX_EDGES)


def default_max_tree_order() -> int:
    return _env_int("RAMSEYLAB_MAX_TREE_ORDER", DEFAULT_MAX_TREE_ORDER)
