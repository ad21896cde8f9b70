"""Enumeration caps.

Every exhaustive routine in the package consults a :class:`Bounds` value.
Defaults can be overridden through environment variables, one per field:

    TGS_MAX_CARRIER   largest carrier for ideal enumeration (default 12)
    TGS_MAX_WORDS     largest word space / code size enumerated (default 2**20)
    TGS_WITNESS_CAP   witnesses kept per axiom (default 32)
"""
from __future__ import annotations

import contextlib
import dataclasses
import os
from dataclasses import dataclass

from .errors import UsageError

ENV_VARS = {
    "max_carrier": "TGS_MAX_CARRIER",
    "max_words": "TGS_MAX_WORDS",
    "witness_cap": "TGS_WITNESS_CAP",
}


@dataclass(frozen=True)
class Bounds:
    max_carrier: int = 12
    max_words: int = 2**20
    witness_cap: int = 32

    @classmethod
    def from_env(cls, environ=None) -> Bounds:
        environ = os.environ if environ is None else environ
        values = {}
        for field, var in ENV_VARS.items():
            if var in environ:
                values[field] = _parse_int(var, environ[var])
        return cls(**values)

    def override(self, spec: str) -> Bounds:
        """Apply a ``key=value,key=value`` override string."""
        values = {}
        for item in filter(None, (s.strip() for s in spec.split(","))):
            key, sep, raw = item.partition("=")
            key = key.strip().replace("-", "_")
            if not sep or key not in ENV_VARS:
                raise UsageError(f"unknown bound {key!r}; expected one of {sorted(ENV_VARS)}")
            values[key] = _parse_int(key, raw)
        return dataclasses.replace(self, **values)


def _parse_int(name, raw):
    try:
        value = int(str(raw).strip())
    except ValueError:
        raise UsageError(f"bound {name} must be an integer, got {raw!r}") from None
    if value < 0:
        raise UsageError(f"bound {name} must be non-negative")
    return value


_active = None


def current() -> Bounds:
    return _active if _active is not None else Bounds.from_env()


@contextlib.contextmanager
def using(bounds: Bounds):
    global _active
    saved, _active = _active, bounds
    try:
        yield bounds
    finally:
        _active = saved
