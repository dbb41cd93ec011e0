"""Acceptance criteria 1-10.  Run ``pytest tests/test_acceptance.py``; the
terminal summary prints one PASS/FAIL line per criterion."""
import math
import random

import numpy as np
import pytest

from zetacrit.criterion import Z, apply_A_fd, corollary_residual, eigenfunction_value, find_zeros, inner_product
from zetacrit.criterion import proposition_residual
from zetacrit.errors import ExclusionError, PoleError
from zetacrit.mellin import F_gamma_series, F_quadrature
from zetacrit.oracle import Z_oracle, critical_zeros, gamma_oracle, zeta_oracle
from zetacrit.regdemo import RegProductParams, continued_product, positivity_scan
from zetacrit.theta import omega_t

GRID = [complex(x, y) for x in (-1.5, -0.5, 0.25, 0.5, 0.75, 1.5, 2.0) for y in (0.0, 5.0, 15.0, 30.0, 60.0)]


def oracle_rhs(s, pi_power):
    return math.pi ** (-pi_power * s) * gamma_oracle(s / 2) * zeta_oracle(s)


@pytest.fixture(scope="module")
def oracle_zeros():
    return critical_zeros(10, 50, 0.25, 1e-12)


@pytest.mark.acceptance(1)
@pytest.mark.parametrize("s", GRID, ids=str)
def test_completed_zeta_identity(s):
    lhs = Z(s).value
    assert abs(lhs - oracle_rhs(s, 0.5)) < 1e-9


@pytest.mark.acceptance(2)
def test_pi_power_minus_s_fails():
    lhs = Z(2).value
    assert abs(lhs - oracle_rhs(2, 0.5)) < 1e-9
    assert abs(lhs - oracle_rhs(2, 1.0)) > 1e-2


@pytest.mark.acceptance(3)
def test_oracle_ordinates_are_the_first_three(oracle_zeros):
    assert [round(y, 6) for y in oracle_zeros[:3]] == [14.134725, 21.02204, 25.010858]


@pytest.mark.acceptance(3)
@pytest.mark.parametrize("index", [0, 1, 2])
def test_corollary_vanishes_at_zeros(oracle_zeros, index):
    assert abs(corollary_residual(oracle_zeros[index]).residual) < 1e-8


@pytest.mark.acceptance(3)
@pytest.mark.parametrize("y", [5.0, 10.0, 18.0, 23.0])
def test_corollary_nonzero_off_zeros(y):
    assert abs(corollary_residual(y).residual) > 1e-6


@pytest.mark.acceptance(4)
def test_zero_finder_reproduces_oracle(oracle_zeros):
    found = [r.ordinate for r in find_zeros(10, 50, 0.25, 1e-9)]
    assert len(found) == len(oracle_zeros)
    assert max(abs(a - b) for a, b in zip(found, oracle_zeros)) < 1e-8


@pytest.mark.acceptance(5)
def test_shift_identity():
    rng = random.Random(20240601)

    def c():
        return complex(rng.uniform(-5, 5), rng.uniform(-5, 5))

    worst = 0.0
    for _ in range(50):
        s, z, w = c(), c(), c()
        a = inner_product(s, z).value
        b = inner_product(s - w.conjugate(), z + w).value
        worst = max(worst, abs(a - b))
    assert worst < 1e-12


@pytest.mark.acceptance(6)
def test_theta_functional_equation():
    worst = 0.0
    for t in np.linspace(0.05, 20.0, 200):
        t = float(t)
        lhs = 2 * omega_t(t).value + 1
        rhs = t**-0.5 * (2 * omega_t(1 / t).value + 1)
        worst = max(worst, abs(lhs - rhs))
    assert worst < 1e-12


@pytest.mark.acceptance(7)
def test_dual_method_agreement():
    worst = max(abs(F_quadrature(s).value - F_gamma_series(s).value) for s in GRID)
    assert worst < 1e-10


@pytest.mark.acceptance(8)
@pytest.mark.parametrize("s", [0, 2, 1 + 3j], ids=str)
@pytest.mark.parametrize("T", [0.5, 1.0, 2.0])
def test_eigenrelation(s, T):
    # Extended precision keeps roundoff (~eps/h) below the O(h^2) term being measured.
    def residual(h, dps):
        return abs(apply_A_fd(s, T, h, dps=dps) - s / 4 * eigenfunction_value(s, T, dps=dps))

    assert residual(1e-5, None) < 1e-7
    r1, r2 = residual(1e-5, 30), residual(5e-6, 30)
    assert r1 < 1e-7
    assert 3.5 <= r1 / r2 <= 4.5


@pytest.mark.acceptance(9)
def test_positivity_failure():
    p = RegProductParams(0, -4)
    v = continued_product(0.5, 0.5, p)
    assert v.real < 0 and abs(v - (-1.4603545)) < 1e-6
    # zeta argument is x itself, so x in [1.1, 3] maps into (1, 3].
    assert list(positivity_scan(p, 1.1, 3.0, 0.05)) == []


@pytest.mark.acceptance(10)
@pytest.mark.parametrize("z", [-4, -8])
def test_exclusion(z):
    with pytest.raises(ExclusionError):
        proposition_residual(z)


@pytest.mark.acceptance(10)
@pytest.mark.parametrize("z", [0, 2])
def test_poles(z):
    with pytest.raises(PoleError):
        proposition_residual(z)
