"""Resource limits shared by the search routines.

Limits are read from a context variable so deep helpers do not need an extra
argument; use :func:`limits_scope` to override them for a block of code.
"""
from __future__ import annotations

import contextlib
import contextvars
import os
from dataclasses import dataclass, replace


class ResourceLimitError(RuntimeError):
    """A configured search or enumeration limit was exceeded.

    Raised instead of returning an unverified answer.
    """


@dataclass(frozen=True)
class Limits:
    enum_limit: int = 10**6
    coset_limit: int = 10**5
    backtrack_limit: int = 5 * 10**6

    @classmethod
    def from_env(cls, environ=None) -> "Limits":
        environ = os.environ if environ is None else environ
        kw = {}
        for field, var in (("enum_limit", "PERMNORM_ENUM_LIMIT"),
                           ("coset_limit", "PERMNORM_COSET_LIMIT"),
                           ("backtrack_limit", "PERMNORM_BACKTRACK_LIMIT")):
            if environ.get(var):
                kw[field] = int(environ[var])
        return cls(**kw)


_current: contextvars.ContextVar[Limits] = contextvars.ContextVar(
    "permnorm_limits", default=Limits())


def get_limits() -> Limits:
    return _current.get()


@contextlib.contextmanager
def limits_scope(limits: Limits | None = None, **overrides):
    base = limits if limits is not None else _current.get()
    token = _current.set(replace(base, **{k: v for k, v in overrides.items()
                                          if v is not None}))
    try:
        yield _current.get()
    finally:
        _current.reset(token)
