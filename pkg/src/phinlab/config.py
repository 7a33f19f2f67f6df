"""Runtime limits read from the environment."""

import os

from .errors import InputError

DEFAULT_MAX_N = 8


def enumeration_cap():
    """Largest rank for which exhaustive enumerations are attempted."""
    raw = os.environ.get("PHINLAB_MAX_N", "")
    if not raw:
        return DEFAULT_MAX_N
    try:
        cap = int(raw)
    except ValueError:
        raise InputError(f"PHINLAB_MAX_N must be an integer, got {raw!r}") from None
    if cap < 1:
        raise InputError(f"PHINLAB_MAX_N must be positive, got {cap}")
    return cap


def check_enumeration_size(n, what):
    cap = enumeration_cap()
    if n > cap:
        raise InputError(
            f"{what} at size {n} exceeds the enumeration cap {cap}; raise PHINLAB_MAX_N to allow it"
        )
