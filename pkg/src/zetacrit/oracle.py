"""Reference zeta, gamma and completed zeta, independent of the theta/F code.

This module deliberately imports nothing numerical from the rest of the
package: it is the second route every acceptance claim is checked against.

* zeta: Euler transform (binomial means of the partial sums) of the
  alternating eta series, zeta = eta / (1 - 2^(1-s)), with the functional
  equation for Re s <= 0.
* gamma: Lanczos approximation, g = 7 with the 9-term coefficient set
  tabulated by Godfrey (widely reproduced), with reflection for Re s < 1/2.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from .errors import PoleError

LANCZOS_G = 7
LANCZOS_COEFFS = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)
_HALF_LOG_2PI = 0.5 * math.log(2 * math.pi)
_LN2 = math.log(2.0)


@dataclass(frozen=True)
class OracleConfig:
    eta_terms: int = 64
    lanczos_order: int = len(LANCZOS_COEFFS)

    def __post_init__(self):
        if self.eta_terms < 32:
            raise ValueError("eta_terms must be >= 32")
        if self.lanczos_order != len(LANCZOS_COEFFS):
            raise ValueError(f"only the order-{len(LANCZOS_COEFFS)} Lanczos set is available")


DEFAULT_CONFIG = OracleConfig()


def _is_nonpositive_integer(s: complex) -> bool:
    return s.imag == 0 and s.real <= 0 and s.real == math.floor(s.real)


def log_gamma_oracle(s: complex) -> complex:
    """Principal-branch-free log Gamma (imaginary part not reduced mod 2 pi)."""
    s = complex(s)
    if _is_nonpositive_integer(s):
        raise PoleError(f"Gamma has a pole at {s}")
    if s.real < 0.5:
        # Gamma(s) Gamma(1-s) = pi / sin(pi s)
        return math.log(math.pi) - cmath.log(cmath.sin(math.pi * s)) - log_gamma_oracle(1 - s)
    z = s - 1
    acc = LANCZOS_COEFFS[0]
    for i, c in enumerate(LANCZOS_COEFFS[1:], 1):
        acc += c / (z + i)
    t = z + LANCZOS_G + 0.5
    return _HALF_LOG_2PI + (z + 0.5) * cmath.log(t) - t + cmath.log(acc)


def gamma_oracle(s: complex) -> complex:
    """Gamma(s) for complex s, relative error ~1e-13 for |Im s| <= 128."""
    return cmath.exp(log_gamma_oracle(s))


def _eta_terms_for(s: complex, config: OracleConfig) -> int:
    # Euler-mean error decays like 2^-n against growth ~ exp(pi |Im s| / 2).
    need = math.ceil((math.pi * abs(s.imag) / 2 + 32) / _LN2)
    return max(config.eta_terms, need)


def eta_oracle(s: complex, config: OracleConfig = DEFAULT_CONFIG) -> complex:
    """Dirichlet eta(s) = sum_{j>=0} (-1)^j (j+1)^-s via binomial means of partial sums, Re s > 0."""
    s = complex(s)
    n = _eta_terms_for(s, config)
    partial = 0j
    acc = 0j
    # weight_k = C(n, k) / 2^n, built in log space to avoid overflow.
    log_w0 = -n * _LN2
    log_binom = 0.0
    for k in range(n + 1):
        term = cmath.exp(-s * math.log(k + 1))
        partial = partial + term if k % 2 == 0 else partial - term
        acc += math.exp(log_w0 + log_binom) * partial
        log_binom += math.log((n - k) / (k + 1)) if k < n else 0.0
    return acc


def _zeta_right(s: complex, config: OracleConfig) -> complex:
    denom = 1 - cmath.exp((1 - s) * _LN2)
    if abs(denom) < 1e-6 and s != 1:
        return _zeta_degenerate(s, config)
    return eta_oracle(s, config) / denom


def _zeta_degenerate(s: complex, config: OracleConfig) -> complex:
    # On s = 1 + 2 pi i k / ln 2 both eta and 1 - 2^(1-s) vanish; average
    # symmetric real shifts and Richardson-extrapolate the even error series.
    def avg(h):
        return 0.5 * (eta_oracle(s + h, config) / (1 - cmath.exp((1 - s - h) * _LN2))
                      + eta_oracle(s - h, config) / (1 - cmath.exp((1 - s + h) * _LN2)))

    h = 1e-2
    a1, a2, a4 = avg(h), avg(2 * h), avg(4 * h)
    r1 = (4 * a1 - a2) / 3
    r2 = (4 * a2 - a4) / 3
    return (16 * r1 - r2) / 15


def zeta_oracle(s: complex, config: OracleConfig = DEFAULT_CONFIG) -> complex:
    """Riemann zeta(s), s != 1."""
    s = complex(s)
    if s == 1:
        raise PoleError("zeta has a pole at s = 1")
    if s.real > 0:
        return _zeta_right(s, config)
    if s == 0:
        return -0.5 + 0j
    # zeta(s) = 2^s pi^(s-1) sin(pi s / 2) Gamma(1-s) zeta(1-s)
    if s.imag == 0 and s.real == math.floor(s.real) and int(s.real) % 2 == 0 and s.real < 0:
        return 0j
    log_factor = s * _LN2 + (s - 1) * math.log(math.pi) + log_gamma_oracle(1 - s)
    return cmath.exp(log_factor) * cmath.sin(math.pi * s / 2) * _zeta_right(1 - s, config)


def Z_oracle(s: complex, config: OracleConfig = DEFAULT_CONFIG, *, pi_power: float = 0.5) -> complex:
    """Completed zeta pi^(-pi_power s) Gamma(s/2) zeta(s).

    The classical normalisation is ``pi_power = 0.5``; other values exist only
    to demonstrate that they break the symmetry s -> 1 - s.
    """
    s = complex(s)
    if s == 0 or s == 1:
        raise PoleError(f"completed zeta has a pole at s = {s}")
    if _is_nonpositive_integer(s / 2):
        raise PoleError(f"Gamma(s/2) has a pole at s = {s}")
    log_pre = -pi_power * s * math.log(math.pi) + log_gamma_oracle(s / 2)
    return cmath.exp(log_pre) * zeta_oracle(s, config)


def critical_zeros(y_lo: float, y_hi: float, step: float = 0.25, tol: float = 1e-12,
                   config: OracleConfig = DEFAULT_CONFIG) -> list[float]:
    """Ordinates of sign changes of Z_oracle(1/2 + iy) on [y_lo, y_hi], bisected to width tol."""
    if not y_lo < y_hi:
        return []

    def f(y):
        return Z_oracle(complex(0.5, y), config).real

    count = max(1, math.ceil((y_hi - y_lo) / step - 1e-9))
    ys = [min(y_lo + i * step, y_hi) for i in range(count + 1)]
    vals = [f(y) for y in ys]
    zeros = []
    for (a, fa), (b, fb) in zip(zip(ys, vals), zip(ys[1:], vals[1:])):
        if fa == 0:
            zeros.append(a)
            continue
        if fa * fb >= 0:
            continue
        while b - a > tol:
            m = 0.5 * (a + b)
            fm = f(m)
            if fm == 0:
                a = b = m
                break
            if (fm < 0) == (fa < 0):
                a, fa = m, fm
            else:
                b = m
        zeros.append(0.5 * (a + b))
    return zeros
