"""Arithmetic contexts.

Routines on the criterion path are written against an mpmath-style context
``ctx`` exposing ``exp``, ``ln``, ``sqrt``, ``pi``, ``mpf``, ``mpc`` and
``eps``.  Double precision uses :data:`mpmath.fp`; extended precision uses a
private :class:`mpmath.MPContext` per digit count, so the global
``mpmath.mp`` precision is never touched.
"""
from __future__ import annotations

from functools import lru_cache

import mpmath

from .errors import DomainError


def context(dps: int | None = None):
    """Return the arithmetic context for ``dps`` decimal digits (``None`` = double)."""
    if dps is None:
        return mpmath.fp
    if dps < 16:
        raise DomainError(f"extended precision needs dps >= 16, got {dps}")
    return _mp_context(int(dps))


@lru_cache(maxsize=None)
def _mp_context(dps: int):
    # Never mutated after creation, so sharing across threads is safe.
    ctx = mpmath.MPContext()
    ctx.dps = dps
    return ctx


def kahan_sum(values, zero=0.0):
    """Compensated sum of an iterable of real or complex numbers."""
    total = zero
    comp = zero
    for v in values:
        y = v - comp
        t = total + y
        comp = (t - total) - y
        total = t
    return total
