"""Exception types and enumeration guards shared across the package."""

from __future__ import annotations

import os

GUARD_ENV = "MODCOUNT_GUARD_OVERRIDE"


class ModcountError(ValueError):
    """Base class for domain errors raised by this package."""


class PreconditionError(ModcountError):
    """An operation was called outside its documented domain."""


class CapacityError(ModcountError):
    """An enumeration or materialization guard was exceeded."""


class SingularMatrixError(ModcountError):
    pass


class DecompositionError(ModcountError):
    """A tree decomposition violates one of its structural properties."""


class FormatError(ModcountError):
    """Malformed input file."""


def enumeration_limit(default: int) -> int:
    """Return the guard for enumeration-based oracles.

    The environment variable ``MODCOUNT_GUARD_OVERRIDE`` may raise (never
    lower) the default limit on the number of enumerated objects.
    """
    raw = os.environ.get(GUARD_ENV)
    if not raw:
        return default
    try:
        override = int(raw)
    except ValueError as exc:
        raise PreconditionError(f"{GUARD_ENV} must be an integer, got {raw!r}") from exc
    return max(default, override)
