"""The zeta-regularised "scalar product" <psi_s1|psi_s2> ~ zeta(2(2k - s12)/l),
s12 = conj(s1) + s2, and a scan showing it is not positive definite.

Only self-products are scanned: the continuation assigns values to pairs of
eigenvalue labels, not to linear combinations of eigenfunctions, so there is
nothing on which to test additivity.  The proportionality constant is 1; any
positive constant leaves the signs unchanged.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

from .errors import PoleError
from .oracle import zeta_oracle

POLE_WINDOW = 1e-9


@dataclass(frozen=True)
class RegProductParams:
    k: float
    l: float

    def __post_init__(self):
        if self.l == 0 or not math.isfinite(self.l):
            raise ValueError(f"l must be a finite nonzero real, got {self.l!r}")

    def zeta_argument(self, s1: complex, s2: complex) -> complex:
        s12 = complex(s1).conjugate() + complex(s2)
        return 2 * (2 * self.k - s12) / self.l


def continued_product(s1: complex, s2: complex, params: RegProductParams) -> complex:
    """zeta(2(2k - conj(s1) - s2)/l)."""
    arg = params.zeta_argument(s1, s2)
    if abs(arg - 1) < POLE_WINDOW:
        raise PoleError(f"zeta argument {arg} hits the pole at 1")
    return zeta_oracle(arg)


@dataclass
class PositivityScan:
    """Negative self-products found by :func:`positivity_scan`, plus the grid points skipped at the pole."""

    negatives: list[tuple[float, float]] = field(default_factory=list)
    skipped: list[float] = field(default_factory=list)

    def __iter__(self):
        return iter(self.negatives)

    def __len__(self):
        return len(self.negatives)


def scan_grid(x_lo: float, x_hi: float, step: float) -> list[float]:
    if not step > 0:
        raise ValueError("step must be > 0")
    count = math.floor((x_hi - x_lo) / step + 1e-9)
    return [x_lo + i * step for i in range(count + 1)]


def positivity_scan(params: RegProductParams, x_lo: float, x_hi: float, step: float) -> PositivityScan:
    """Evaluate the self-product at s1 = s2 = x on a grid and collect the negative values."""
    if not x_lo < x_hi:
        raise ValueError("x_lo must be < x_hi")
    scan = PositivityScan()
    for x in scan_grid(x_lo, x_hi, step):
        try:
            value = continued_product(x, x, params).real
        except PoleError:
            scan.skipped.append(x)
            continue
        if value < 0:
            scan.negatives.append((x, value))
    return scan
