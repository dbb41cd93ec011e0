"""The entire function F(s) = int_1^inf t^(s/2 - 1) omega(t) dt.

Two independent evaluations are provided:

* :func:`F_gamma_series` integrates term by term,
  F(s) = sum_n (pi n^2)^(-s/2) Gamma(s/2, pi n^2), with the upper incomplete
  gamma function from a modified-Lentz continued fraction;
* :func:`F_quadrature` integrates the defining integral numerically with
  adaptive Gauss-Kronrod panels on [1, 40] plus an analytic tail bound.
"""
from __future__ import annotations

import cmath
import math

import numpy as np

from .errors import AccuracyError, ConvergenceError, DomainError
from .precision import context, kahan_sum
from .results import EvalResult, Method
from .theta import omega_t_array

CF_MAX_ITER = 500
IM_ENVELOPE = 128.0
T_CUT = 40.0
MAX_PANELS = 10**6


def _gamma_cf_scaled(ctx, a, x, max_iter=CF_MAX_ITER):
    """Continued fraction h with Gamma(a, x) = exp(-x) x^a h.

    Legendre's fraction  1/(x+1-a- 1(1-a)/(x+3-a- 2(2-a)/(x+5-a- ...)))
    evaluated by the modified Lentz method.  Returns (h, relative error estimate).
    """
    tiny = ctx.mpf(10) ** -300
    eps = ctx.eps
    b = x + 1 - a
    c = 1 / tiny
    d = 1 / b if b != 0 else 1 / tiny
    h = d
    for i in range(1, max_iter + 1):
        an = -i * (i - a)
        b += 2
        d = an * d + b
        if abs(d) < tiny:
            d = tiny
        c = b + an / c
        if abs(c) < tiny:
            c = tiny
        d = 1 / d
        delta = d * c
        h *= delta
        if abs(delta - 1) <= 4 * eps:
            # Lentz products accumulate roughly one rounding per step.
            return h, float(eps) * (2 * i + 16)
    raise ConvergenceError(f"incomplete gamma continued fraction did not converge in {max_iter} iterations (a={a}, x={x})")


def upper_incomplete_gamma(a: complex, x: float) -> complex:
    """Upper incomplete gamma function Gamma(a, x) for x >= 1 and Re a <= x + 1.

    Beyond Re a = x + 1 the fraction loses accuracy (and eventually converges
    to the wrong value), so those arguments are rejected.
    """
    if not x >= 1:
        raise DomainError(f"upper_incomplete_gamma requires x >= 1, got {x!r}")
    a = complex(a)
    if a.real > x + 1:
        raise DomainError(f"upper_incomplete_gamma requires Re a <= x + 1, got a={a}, x={x}")
    h, _ = _gamma_cf_scaled(context(), a, float(x))
    return cmath.exp(a * math.log(x) - x) * h


def _check_args(s, tol):
    s = complex(s)
    if not tol > 0:
        raise DomainError(f"tol must be > 0, got {tol!r}")
    if not (math.isfinite(s.real) and math.isfinite(s.imag)):
        raise DomainError(f"s must be finite, got {s!r}")
    if abs(s.imag) > IM_ENVELOPE:
        raise DomainError(f"|Im s| <= {IM_ENVELOPE:g} required, got {s.imag:g}")
    return s


# The n = 1 term needs Re(s/2) <= pi + 1 for the continued fraction.
RE_MAX_SERIES = 2 * (math.pi + 1)


def _series_tail_bound(sigma: float, n: int) -> float:
    """Bound on sum_{m>n} |(pi m^2)^(-s/2) Gamma(s/2, pi m^2)| for Re s = sigma, or inf."""
    x = math.pi * (n + 1) ** 2
    excess = max(sigma / 2 - 1, 0.0)
    if x <= 2 * excess:
        return math.inf
    # Gamma(c, x) <= x^(c-1) e^-x / (1 - (c-1)/x) for x > c-1, so each term is <= C e^-x / x.
    c_factor = 1.0 / (1.0 - excess / x)
    return c_factor * math.exp(-x) / x / -math.expm1(-math.pi * (2 * n + 3))


def _f_gamma_series(ctx, s, tol):
    """Gamma-series F(s) in context ``ctx``; returns (value, abs error bound)."""
    sigma = float(ctx.re(s))
    n = 1
    while _series_tail_bound(sigma, n) > tol / 2:
        n += 1
    a = s / 2
    pi = ctx.pi
    terms = []
    rounding = 0.0
    for k in range(1, n + 1):
        x = pi * (k * k)
        h, rel = _gamma_cf_scaled(ctx, a, x)
        # (pi k^2)^(-s/2) Gamma(s/2, pi k^2) = exp(-pi k^2) h exactly.
        term = ctx.exp(-x) * h
        terms.append(term)
        rounding += abs(complex(term)) * (rel + 4 * float(ctx.eps) * (1 + k * k * math.pi))
    value = kahan_sum(terms, ctx.zero)
    rounding += 4 * float(ctx.eps) * abs(complex(value))
    err = _series_tail_bound(sigma, n) + rounding
    if err > tol:
        raise AccuracyError(f"F_gamma_series({complex(s)}): error bound {err:.3g} exceeds tol {tol:.3g}")
    return value, err


def F_gamma_series(s: complex, tol: float = 1e-12) -> EvalResult:
    """F(s) as a sum of incomplete gamma functions, absolute error <= tol.

    Requires Re s <= 2 (pi + 1) ~ 8.28; use :func:`F_quadrature` beyond that.
    """
    s = _check_args(s, tol)
    if s.real > RE_MAX_SERIES:
        raise DomainError(f"F_gamma_series requires Re s <= {RE_MAX_SERIES:.4g}, got {s.real:g}")
    value, err = _f_gamma_series(context(), s, tol)
    return EvalResult(complex(value), err, Method.GAMMA_SERIES)


# Gauss-Kronrod 7/15 nodes on [-1, 1] (QUADPACK qk15).
_XGK = np.array([
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.0,
])
_WGK = np.array([
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714,
])
_WG = np.array([
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327,
])
GK_NODES = np.concatenate([-_XGK[:-1], _XGK[::-1]])
GK_WEIGHTS = np.concatenate([_WGK[:-1], _WGK[::-1]])
G_WEIGHTS = np.zeros(15)
G_WEIGHTS[1:7:2] = _WG[:3]
G_WEIGHTS[7] = _WG[3]
G_WEIGHTS[9:15:2] = _WG[2::-1]


def gauss_kronrod_panels(f, lo: np.ndarray, hi: np.ndarray):
    """Apply the 7/15 rule to every panel [lo_i, hi_i]; returns (kronrod, |kronrod - gauss|, kronrod of |f|)."""
    half = 0.5 * (hi - lo)
    mid = 0.5 * (hi + lo)
    t = mid[:, None] + half[:, None] * GK_NODES[None, :]
    fx = f(t)
    kron = half * (fx @ GK_WEIGHTS)
    gauss = half * (fx @ G_WEIGHTS)
    absint = half * (np.abs(fx) @ GK_WEIGHTS)
    return kron, np.abs(kron - gauss), absint


def adaptive_gk(f, a: float, b: float, tol: float, initial_panels: np.ndarray | None = None, max_panels: int = MAX_PANELS):
    """Globally convergent adaptive Gauss-Kronrod integration of a vectorised f on [a, b].

    Panels are retired once |K15 - G7| <= tol * width / (b - a); the rest are
    bisected.  Returns (integral, error bound, integral of |f|).
    """
    edges = np.linspace(a, b, 17) if initial_panels is None else np.asarray(initial_panels, dtype=float)
    lo, hi = edges[:-1], edges[1:]
    total = 0j
    err = 0.0
    absint = 0.0
    created = len(lo)
    length = b - a
    while len(lo):
        k, e, ai = gauss_kronrod_panels(f, lo, hi)
        done = e <= tol * (hi - lo) / length
        total += k[done].sum()
        err += e[done].sum()
        absint += ai[done].sum()
        lo, hi = lo[~done], hi[~done]
        if not len(lo):
            break
        mid = 0.5 * (lo + hi)
        created += 2 * len(lo)
        if created > max_panels or np.any(mid <= lo) or np.any(mid >= hi):
            raise AccuracyError(f"adaptive quadrature exceeded {max_panels} panels at tol {tol:.3g}")
        lo, hi = np.concatenate([lo, mid]), np.concatenate([mid, hi])
    return complex(total), float(err), float(absint)


def _quadrature_tail_bound(sigma: float, cut: float = T_CUT) -> float:
    """Bound on int_cut^inf t^(sigma/2-1) omega(t) dt using omega(t) <= 2 exp(-pi t)."""
    c = sigma / 2 - 1
    if c <= 0:
        return 2 * cut**c * math.exp(-math.pi * cut) / math.pi
    if math.pi <= c / cut:
        return math.inf
    return 2 * cut**c * math.exp(-math.pi * cut) / (math.pi - c / cut)


def F_quadrature(s: complex, tol: float = 1e-12) -> EvalResult:
    """F(s) by adaptive quadrature of the defining integral, absolute error <= tol."""
    s = _check_args(s, tol)
    tail = _quadrature_tail_bound(s.real)
    if tail > tol / 4:
        raise AccuracyError(f"quadrature tail beyond t={T_CUT:g} is not below tol for Re s = {s.real:g}")
    expo = s / 2 - 1

    def integrand(t):
        return np.exp(expo * np.log(t)) * omega_t_array(t)

    # Uniform in log t: the oscillating factor t^(i Im s / 2) has constant phase speed there.
    edges = np.exp(np.linspace(0.0, math.log(T_CUT), 17))
    edges[0], edges[-1] = 1.0, T_CUT
    value, err, absint = adaptive_gk(integrand, 1.0, T_CUT, tol / 2, initial_panels=edges)
    total_err = err + tail + 64 * np.finfo(float).eps * absint
    if total_err > tol:
        raise AccuracyError(f"F_quadrature({s}): error bound {total_err:.3g} exceeds tol {tol:.3g}")
    return EvalResult(value, total_err, Method.QUADRATURE)


def F(s: complex, tol: float = 1e-12, method: Method | str = Method.GAMMA_SERIES) -> EvalResult:
    """F(s) by the selected method."""
    method = Method(method)
    if method is Method.GAMMA_SERIES:
        return F_gamma_series(s, tol)
    if method is Method.QUADRATURE:
        return F_quadrature(s, tol)
    raise ValueError(f"no F evaluation for method {method.value!r}")
