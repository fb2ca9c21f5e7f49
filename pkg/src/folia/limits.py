"""Resource limits for Gröbner computations.

Limits are explicit: exceeding one raises :class:`ResourceLimitError`, never
a silently truncated answer.
"""

from __future__ import annotations

import contextlib
import contextvars
import os
from dataclasses import dataclass, replace
from typing import Optional

DEFAULT_MAX_SPAIRS = 200_000


class ResourceLimitError(RuntimeError):
    """A configured computation budget was exhausted."""


@dataclass(frozen=True)
class Limits:
    max_spairs: int = DEFAULT_MAX_SPAIRS
    # upper bound for the graded oracle; None means "form degree + 3"
    max_degree: Optional[int] = None


_current: contextvars.ContextVar[Limits] = contextvars.ContextVar("folia_limits", default=Limits())


def current() -> Limits:
    return _current.get()


@contextlib.contextmanager
def limits(**overrides):
    """Temporarily override limits, e.g. ``with limits(max_spairs=50): ...``."""
    token = _current.set(replace(_current.get(), **overrides))
    try:
        yield _current.get()
    finally:
        _current.reset(token)


def parse_env(value: Optional[str] = None) -> dict:
    """Parse ``FOLIA_LIMITS`` (``"max_spairs=1000,max_degree=5"``) into overrides."""
    if value is None:
        value = os.environ.get("FOLIA_LIMITS", "")
    out = {}
    for item in filter(None, (s.strip() for s in value.split(","))):
        name, sep, raw = item.partition("=")
        name = name.strip().replace("-", "_")
        if not sep or name not in ("max_spairs", "max_degree"):
            raise ValueError(f"bad FOLIA_LIMITS entry {item!r}")
        try:
            out[name] = int(raw)
        except ValueError:
            raise ValueError(f"bad FOLIA_LIMITS value {item!r}") from None
    return out
