"""Inner products of the eigenfunctions phi_s(T) = exp(sT/4) sqrt(omega(T)),
the completed zeta built from F, and the zero criterion on top of it.

All inner products reduce to F:  (phi_s, phi_z) = F((conj(s) + z) / 2), and

    Z(s) = 1/(s(s-1)) + F(s) + F(1-s) = pi^(-s/2) Gamma(s/2) zeta(s).

Hence (phi_0, phi_z + phi_{2-z}) - 4/(z(2-z)) = Z(z/2), which vanishes exactly
when z/2 is a zero of zeta (away from the trivial zeros z = -4n).

Functions taking ``dps`` run the F/theta arithmetic at that many decimal
digits; ``None`` means double precision.  Extended precision matters on the
critical line, where Z(1/2+iy) ~ exp(-pi y/4) is the difference of terms of
size ~1/y: at y = 50 that is a cancellation of fifteen digits.
"""
from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from . import mellin, theta
from .errors import AccuracyError, ConsistencyError, DomainError, ExclusionError, PoleError, StepError
from .oracle import Z_oracle
from .precision import context
from .results import EvalResult, Method

ZERO_TOL = 1e-8
FD_STEP = 1e-5
ZERO_FINDER_DPS = 30


@dataclass(frozen=True)
class CriterionReport:
    input: complex
    lhs: complex
    rhs: complex
    residual: complex
    is_zero_candidate: bool
    abs_error_estimate: float = 0.0


@dataclass(frozen=True)
class ZeroRecord:
    """A critical-line zero 1/2 + i*ordinate located by sign-change bisection."""

    ordinate: float
    bracket: tuple[float, float]
    criterion_residual: float
    oracle_residual: float


def _default_tol(tol, dps):
    if tol is not None:
        return tol
    return 1e-12 if dps is None else 10.0 ** (2 - dps)


def _F_ctx(ctx, s, tol, method):
    """F in context ``ctx``; returns (ctx value, error bound)."""
    method = Method(method)
    if method is Method.GAMMA_SERIES:
        if complex(s).real > mellin.RE_MAX_SERIES:
            raise DomainError(f"gamma series requires Re s <= {mellin.RE_MAX_SERIES:.4g}")
        mellin._check_args(complex(s), tol)
        return mellin._f_gamma_series(ctx, s, tol)
    if method is Method.QUADRATURE:
        if ctx is not context():
            raise ValueError("quadrature runs in double precision only")
        r = mellin.F_quadrature(complex(s), tol)
        return r.value, r.abs_error_estimate
    raise ValueError(f"no F evaluation for method {method.value!r}")


def inner_product(s: complex, z: complex, *, tol: float = 1e-12,
                  method: Method | str = Method.GAMMA_SERIES) -> EvalResult:
    """(phi_s, phi_z) = int_0^inf conj(phi_s(T)) phi_z(T) dT = F((conj(s) + z)/2)."""
    arg = (complex(s).conjugate() + complex(z)) / 2
    return mellin.F(arg, tol, method)


def eigenfunction_value(s: complex, T: float, *, dps: int | None = None) -> complex:
    """phi_s(T) = exp(sT/4) sqrt(omega(T)), evaluated in log space."""
    if not T >= 0:
        raise DomainError(f"eigenfunction_value requires T >= 0, got {T!r}")
    return complex(_phi(context(dps), s, T))


def _phi(ctx, s, T):
    T = ctx.mpf(T)
    return ctx.exp(ctx.mpc(s) * T / 4 + theta._log_omega_ctx(ctx, T) / 2)


def apply_A_fd(s: complex, T: float, h: float = FD_STEP, *, dps: int | None = None) -> complex:
    """Apply A = d/dT - omega'/(2 omega) to phi_s, with a central difference for d/dT.

    For an exact eigenfunction the result is (s/4) phi_s(T) up to O(h^2).
    """
    if not h > 0:
        raise StepError(f"finite-difference step must be > 0, got {h!r}")
    if not T - h > 0:
        raise DomainError(f"apply_A_fd requires T - h > 0, got T={T!r}, h={h!r}")
    ctx = context(dps)
    Tc, hc = ctx.mpf(T), ctx.mpf(h)
    deriv = (_phi(ctx, s, Tc + hc) - _phi(ctx, s, Tc - hc)) / (2 * hc)
    return complex(deriv - theta._omega_log_derivative_T(ctx, Tc) / 2 * _phi(ctx, s, Tc))


def _Z_ctx(ctx, s, tol, method):
    if s == 0 or s == 1:
        raise PoleError(f"Z has a pole at s = {complex(s)}")
    f1, e1 = _F_ctx(ctx, s, tol / 2, method)
    f2, e2 = _F_ctx(ctx, 1 - s, tol / 2, method)
    rational = 1 / (s * (s - 1))
    value = rational + f1 + f2
    scale = abs(complex(rational)) + abs(complex(f1)) + abs(complex(f2))
    return value, e1 + e2 + 4 * float(ctx.eps) * scale


def Z(s: complex, *, tol: float | None = None, method: Method | str = Method.GAMMA_SERIES,
      dps: int | None = None) -> EvalResult:
    """Completed zeta from its theta-integral form, 1/(s(s-1)) + F(s) + F(1-s)."""
    ctx = context(dps)
    s = complex(s)
    if s == 0 or s == 1:
        raise PoleError(f"Z has a pole at s = {s}")
    value, err = _Z_ctx(ctx, ctx.mpc(s), _default_tol(tol, dps), method)
    return EvalResult(complex(value), err, Method(method))


def _xi(y: float, dps: int | None = None, tol: float | None = None,
        method: Method | str = Method.GAMMA_SERIES) -> tuple[float, float]:
    r = Z(complex(0.5, y), tol=tol, dps=dps, method=method)
    if abs(r.imag) > 1e-9 + r.abs_error_estimate:
        raise ConsistencyError(f"Z(1/2 + {y}i) has imaginary part {r.imag:.3g}; expected real")
    return r.real, r.abs_error_estimate


def xi_critical(y: float, *, dps: int | None = None, tol: float | None = None,
                method: Method | str = Method.GAMMA_SERIES) -> float:
    """Z(1/2 + iy), which is real for real y."""
    return _xi(y, dps, tol, method)[0]


def _excluded(z: complex) -> bool:
    return z.imag == 0 and z.real < 0 and z.real % 4 == 0


def proposition_residual(z: complex, *, zero_tol: float = ZERO_TOL, tol: float | None = None,
                         method: Method | str = Method.GAMMA_SERIES,
                         dps: int | None = None) -> CriterionReport:
    """Compare (phi_0, phi_z + phi_{2-z}) with 4/(z(2-z)).

    The residual equals Z(z/2), so it vanishes iff z/2 is a zero of zeta.
    """
    z = complex(z)
    if _excluded(z):
        raise ExclusionError(f"z = {z} is of the form -4n; the criterion does not apply")
    if z == 0 or z == 2:
        raise PoleError(f"4/(z(2-z)) has a pole at z = {z}")
    ctx = context(dps)
    tol = _default_tol(tol, dps)
    zc = ctx.mpc(z)
    # (phi_0, phi_w) = F(w/2)
    f1, e1 = _F_ctx(ctx, zc / 2, tol / 2, method)
    f2, e2 = _F_ctx(ctx, (2 - zc) / 2, tol / 2, method)
    return _report(z, f1 + f2, 4 / (zc * (2 - zc)), zero_tol, e1 + e2)


def _report(inp, lhs, rhs, zero_tol, err):
    residual = complex(lhs - rhs)
    return CriterionReport(inp, complex(lhs), complex(rhs), residual, abs(residual) < zero_tol, err)


def corollary_residual(y: float, *, zero_tol: float = ZERO_TOL, tol: float | None = None,
                       method: Method | str = Method.GAMMA_SERIES,
                       dps: int | None = None) -> CriterionReport:
    """Compare (phi_0, phi_{1+2iy} + phi_{1-2iy}) with 4/(1+4y^2)."""
    ctx = context(dps)
    tol = _default_tol(tol, dps)
    yc = ctx.mpf(y)
    f1, e1 = _F_ctx(ctx, ctx.mpc(0.5, yc), tol / 2, method)
    f2, e2 = _F_ctx(ctx, ctx.mpc(0.5, -yc), tol / 2, method)
    return _report(float(y), f1 + f2, 4 / (1 + 4 * yc * yc), zero_tol, e1 + e2)


def _grid(lo: float, hi: float, step: float) -> list[float]:
    count = max(1, math.ceil((hi - lo) / step - 1e-9))
    return [min(lo + i * step, hi) for i in range(count + 1)]


def _certified(y, dps):
    value, err = _xi(y, dps)
    if abs(value) <= err:
        raise AccuracyError(f"cannot certify the sign of Z(1/2 + {y!r}i): |{value:.3g}| <= error {err:.3g}")
    return value


def _bisect(a, fa, b, width, dps):
    while b - a > width:
        m = 0.5 * (a + b)
        try:
            fm = _certified(m, dps)
        except AccuracyError:
            # m is numerically on the zero; certify a bracket of width/2 around it.
            q = width / 4
            fl, fr = _certified(m - q, dps), _certified(m + q, dps)
            if (fl < 0) == (fr < 0):
                raise
            return m - q, m + q
        if (fm < 0) == (fa < 0):
            a, fa = m, fm
        else:
            b = m
    return a, b


def find_zeros(y_lo: float, y_hi: float, step: float = 0.25, refine_tol: float = 1e-9, *,
               dps: int | None = ZERO_FINDER_DPS, workers: int | None = None) -> list[ZeroRecord]:
    """Locate zeros of zeta on 1/2 + iy, y in [y_lo, y_hi], by sign changes of Z(1/2+iy).

    ``step`` must separate consecutive zeros (0.5 or less is safe for y <= 100).
    Every grid value and bisection midpoint must have a certified sign, i.e.
    |Z| above its error bound; otherwise :class:`AccuracyError` is raised.
    The grid may be evaluated by ``workers`` processes; the result does not
    depend on it.
    """
    if not step > 0 or not refine_tol > 0:
        raise DomainError("step and refine_tol must be > 0")
    if not y_lo < y_hi:
        return []
    ys = _grid(y_lo, y_hi, step)
    if workers and workers > 1:
        with ProcessPoolExecutor(workers) as pool:
            values = list(pool.map(_certified, ys, [dps] * len(ys)))
    else:
        values = [_certified(y, dps) for y in ys]
    records = []
    for a, fa, b, fb in zip(ys, values, ys[1:], values[1:]):
        if (fa < 0) == (fb < 0):
            continue
        lo, hi = _bisect(a, fa, b, refine_tol, dps)
        y = 0.5 * (lo + hi)
        report = corollary_residual(y, dps=dps)
        records.append(ZeroRecord(
            ordinate=y,
            bracket=(lo, hi),
            criterion_residual=abs(report.residual),
            oracle_residual=abs(Z_oracle(complex(0.5, y))),
        ))
    return records
