"""Theta sum omega(t) = sum_{n>=1} exp(-pi n^2 t), with t = exp(T).

Values are certified: the returned error field bounds truncation plus
rounding.  The truncation point comes from the geometric majorant

    sum_{n>N} exp(-pi n^2 t) <= exp(-pi N^2 t) q / (1 - q),  q = exp(-pi (2N+1) t).
"""
from __future__ import annotations

import math
import sys
from dataclasses import dataclass

import numpy as np

from .errors import AccuracyError, DomainError
from .precision import context, kahan_sum
from .results import EvalResult, Method

MAX_TERMS = 10_000
FLOAT_MIN = sys.float_info.min
_LOG_FLOAT_MIN = math.log(FLOAT_MIN)


@dataclass(frozen=True)
class TruncationPlan:
    """Cutoff policy for the theta sum: smallest N whose tail bound meets the target."""

    max_terms: int = MAX_TERMS
    target_abs_error: float = 1e-12

    def __post_init__(self):
        if self.max_terms < 1:
            raise ValueError("max_terms must be >= 1")
        if not self.target_abs_error > 0:
            raise ValueError("target_abs_error must be > 0")

    @staticmethod
    def log_tail_bound(t: float, n: int) -> float:
        """Log of the majorant for sum_{m>n} exp(-pi m^2 t)."""
        a = math.pi * (2 * n + 1) * t
        return -math.pi * n * n * t - a - math.log(-math.expm1(-a))

    def tail_bound(self, t: float, n: int) -> float:
        return math.exp(self.log_tail_bound(t, n))

    def terms_for(self, t: float) -> int:
        t = float(t)
        target = math.log(self.target_abs_error)
        # Starting below the minimal N keeps the search exact.
        n = max(1, int(math.sqrt(max(-target, 0.0) / (math.pi * t))) - 2)
        while self.log_tail_bound(t, n) > target:
            n += 1
            if n > self.max_terms:
                raise AccuracyError(
                    f"theta sum at t={t:g} needs more than {self.max_terms} terms "
                    f"for tail <= {self.target_abs_error:g}"
                )
        return n

    @staticmethod
    def log_derivative_tail_bound(t: float, n: int) -> float:
        """Log of a bound for sum_{m>n} pi m^2 t exp(-pi m^2 t); +inf if the majorant is invalid."""
        m = n + 1
        log_ratio = 2.0 * math.log((m + 1) / m) - math.pi * (2 * m + 1) * t
        if log_ratio >= 0.0:
            return math.inf
        return math.log(math.pi * t) + 2.0 * math.log(m) - math.pi * m * m * t - math.log(-math.expm1(log_ratio))

    def derivative_terms_for(self, t: float) -> int:
        t = float(t)
        target = math.log(self.target_abs_error)
        n = max(1, self.terms_for(t) - 1) if t > 0 else 1
        while self.log_derivative_tail_bound(t, n) > target:
            n += 1
            if n > self.max_terms:
                raise AccuracyError(f"theta derivative at t={t:g} needs more than {self.max_terms} terms")
        return n


def _check_tol(tol):
    if not tol > 0:
        raise DomainError(f"tol must be > 0, got {tol!r}")


def log_omega_t(t: float) -> float:
    """log(omega(t)) in double precision, finite for every t > 0."""
    if not t > 0:
        raise DomainError(f"omega_t requires t > 0, got {t!r}")
    if math.isinf(t):
        return -math.inf
    n = TruncationPlan(target_abs_error=1e-17).terms_for(max(t, 1e-12))
    # omega(t) = exp(-pi t) * sum_n exp(-pi (n^2 - 1) t)
    inner = math.fsum(math.exp(-math.pi * (k * k - 1) * t) for k in range(1, n + 1))
    return -math.pi * t + math.log(inner)


def log_abs_omega_T_derivative(T: float) -> float:
    """log|d omega/dT| at T, in double precision and log space."""
    t = math.exp(T)
    n = TruncationPlan(target_abs_error=1e-17).derivative_terms_for(t)
    inner = math.fsum(k * k * math.exp(-math.pi * (k * k - 1) * t) for k in range(1, n + 1))
    return math.log(math.pi * t) - math.pi * t + math.log(inner)


def _omega_sum(ctx, t, tol, max_terms=MAX_TERMS):
    """Theta sum in context ``ctx``; returns (value, certified abs error)."""
    plan = TruncationPlan(max_terms, tol / 2)
    tf = float(t)
    n = plan.terms_for(tf)
    eps = float(ctx.eps)
    pi = ctx.pi
    terms = [ctx.exp(-pi * (k * k) * t) for k in range(1, n + 1)]
    value = kahan_sum(terms, ctx.zero)
    # Each exp carries the rounding of its argument: rel. error ~ eps * (pi k^2 t + 2).
    rounding = eps * math.fsum(float(v) * (math.pi * k * k * tf + 4.0) for k, v in enumerate(terms, 1))
    err = plan.tail_bound(tf, n) + rounding
    if err > tol:
        raise AccuracyError(f"omega_t({tf:g}): error bound {err:.3g} exceeds tol {tol:.3g}")
    return value, err


def _omega_derivative_sum(ctx, t, tol, max_terms=MAX_TERMS):
    plan = TruncationPlan(max_terms, tol / 2)
    tf = float(t)
    n = plan.derivative_terms_for(tf)
    eps = float(ctx.eps)
    pi = ctx.pi
    terms = [-pi * (k * k) * t * ctx.exp(-pi * (k * k) * t) for k in range(1, n + 1)]
    value = kahan_sum(terms, ctx.zero)
    rounding = eps * math.fsum(abs(float(v)) * (math.pi * k * k * tf + 6.0) for k, v in enumerate(terms, 1))
    err = math.exp(plan.log_derivative_tail_bound(tf, n)) + rounding
    if err > tol:
        raise AccuracyError(f"omega derivative at t={tf:g}: error bound {err:.3g} exceeds tol {tol:.3g}")
    return value, err


def omega_t(t: float, tol: float = 1e-12, *, max_terms: int = MAX_TERMS) -> EvalResult:
    """Evaluate omega(t) = sum_{n>=1} exp(-pi n^2 t) with absolute error <= tol.

    Values below the smallest normal double are returned as exact 0 with the
    error field set to that threshold.
    """
    if not t > 0:
        raise DomainError(f"omega_t requires t > 0, got {t!r}")
    _check_tol(tol)
    if math.isinf(t) or -math.pi * t - math.log(-math.expm1(-3 * math.pi * t)) < _LOG_FLOAT_MIN:
        return EvalResult(0.0, FLOAT_MIN, Method.THETA_SERIES)
    value, err = _omega_sum(context(), float(t), tol, max_terms)
    return EvalResult(float(value), err, Method.THETA_SERIES)


def omega_T(T: float, tol: float = 1e-12, *, max_terms: int = MAX_TERMS) -> EvalResult:
    """omega in the logarithmic variable: omega_t(exp(T))."""
    if not T >= 0:
        raise DomainError(f"omega_T requires T >= 0, got {T!r}")
    return omega_t(_exp_or_inf(T), tol, max_terms=max_terms)


def omega_T_derivative(T: float, tol: float = 1e-12, *, max_terms: int = MAX_TERMS) -> EvalResult:
    """d omega / dT = sum_n (-pi n^2 e^T) exp(-pi n^2 e^T), differentiated term by term."""
    if not T >= 0:
        raise DomainError(f"omega_T_derivative requires T >= 0, got {T!r}")
    _check_tol(tol)
    t = _exp_or_inf(T)
    if math.isinf(t) or log_abs_omega_T_derivative(T) < _LOG_FLOAT_MIN:
        return EvalResult(0.0, FLOAT_MIN, Method.THETA_SERIES)
    value, err = _omega_derivative_sum(context(), t, tol, max_terms)
    return EvalResult(float(value), err, Method.THETA_SERIES)


def _exp_or_inf(T: float) -> float:
    try:
        return math.exp(T)
    except OverflowError:
        return math.inf


def omega_t_array(t: np.ndarray, tol: float = 1e-17) -> np.ndarray:
    """Vectorised theta sum for arrays with min(t) >= 0.05; truncation planned at min(t)."""
    t = np.asarray(t, dtype=float)
    n = TruncationPlan(target_abs_error=tol).terms_for(float(t.min()))
    k = np.arange(n, 0, -1, dtype=float)
    return np.exp(-np.pi * np.multiply.outer(t, k * k)).sum(axis=-1)


def _omega_log_derivative_T(ctx, T):
    """(d omega/dT) / omega at T, scaled by exp(pi t) so it never underflows."""
    t = ctx.exp(T)
    n = TruncationPlan(target_abs_error=float(ctx.eps) * 1e-3).derivative_terms_for(float(t))
    pi = ctx.pi
    scaled = [ctx.exp(-pi * (k * k - 1) * t) for k in range(1, n + 1)]
    num = kahan_sum((k * k * v for k, v in enumerate(scaled, 1)), ctx.zero)
    den = kahan_sum(scaled, ctx.zero)
    return -pi * t * num / den


def _log_omega_ctx(ctx, T):
    """log omega(e^T) in context ``ctx``."""
    t = ctx.exp(T)
    n = TruncationPlan(target_abs_error=float(ctx.eps) * 1e-3).terms_for(float(t))
    pi = ctx.pi
    inner = kahan_sum((ctx.exp(-pi * (k * k - 1) * t) for k in range(1, n + 1)), ctx.zero)
    return -pi * t + ctx.ln(inner)
