"""Numerical toolkit for the theta-integral (Hilbert space) criterion for zeros of zeta."""

from .criterion import (
    CriterionReport,
    ZeroRecord,
    Z,
    apply_A_fd,
    corollary_residual,
    eigenfunction_value,
    find_zeros,
    inner_product,
    proposition_residual,
    xi_critical,
)
from .errors import (
    AccuracyError,
    ConsistencyError,
    ConvergenceError,
    DomainError,
    ExclusionError,
    PoleError,
    StepError,
    ZetaCritError,
)
from .mellin import F, F_gamma_series, F_quadrature, upper_incomplete_gamma
from .oracle import OracleConfig, Z_oracle, gamma_oracle, zeta_oracle
from .regdemo import RegProductParams, continued_product, positivity_scan
from .results import EvalResult, Method
from .theta import TruncationPlan, omega_T, omega_T_derivative, omega_t

__version__ = "0.1.0"
