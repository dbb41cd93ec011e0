from __future__ import annotations

import enum
import math
from dataclasses import dataclass


class Method(str, enum.Enum):
    THETA_SERIES = "theta_series"
    QUADRATURE = "quadrature"
    GAMMA_SERIES = "gamma_series"
    ORACLE = "oracle"


@dataclass(frozen=True)
class EvalResult:
    """A value together with a bound on its absolute error.

    ``value`` is a Python ``float`` or ``complex``; ``abs_error_estimate`` is
    finite and non-negative.
    """

    value: complex
    abs_error_estimate: float
    method: Method

    def __post_init__(self):
        err = float(self.abs_error_estimate)
        object.__setattr__(self, "abs_error_estimate", err)
        if not (err >= 0.0 and math.isfinite(err)):
            raise ValueError(f"abs_error_estimate must be finite and >= 0, got {err!r}")

    @property
    def real(self) -> float:
        return complex(self.value).real

    @property
    def imag(self) -> float:
        return complex(self.value).imag
