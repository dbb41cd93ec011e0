import cmath
import math

import mpmath
import numpy as np
import pytest

from zetacrit.errors import AccuracyError, ConvergenceError, DomainError
from zetacrit.mellin import (
    GK_NODES,
    GK_WEIGHTS,
    G_WEIGHTS,
    F,
    F_gamma_series,
    F_quadrature,
    _gamma_cf_scaled,
    adaptive_gk,
    upper_incomplete_gamma,
)
from zetacrit.precision import context
from zetacrit.results import Method

# mpmath (gammainc, quad of the defining integral), 40 digits
GAMMA_REF = {
    (0.5 + 7j, math.pi): -0.010464306198909276708 + 0.0026483809265304344676j,
    (-1.5 + 20j, 4 * math.pi): 8.8713220689423711046e-10 + 3.0997537854770730922e-9j,
    (3 - 30j, math.pi): -0.0097923213110938646928 + 0.043737580288163215305j,
}
F_REF = {
    2: 0.013755694918002687489,
    0: 0.01090655919896889218,
    1: 0.012189149767152141634,
    -2: 0.0089510049336767085728,
    -4: 0.0075473593122473869085,
    1 + 3j: 0.010997821782611749056 + 0.0039161383271802447198j,
    0.5 + 28.269450442j: 0.00062546014482857404021 + 0.0029755388921167780821j,
    -1.5 + 60j: 0.00018554200527722248082 + 0.0014213850200198541901j,
    2 + 15j: 0.0017839479759620066481 + 0.0055878095515495630567j,
}
INVARIANT_GRID = [complex(x, y) for x in np.arange(-4, 4.01, 0.5) for y in np.arange(0, 60.01, 2.5)]


class TestUpperIncompleteGamma:
    def test_exponential_case(self):
        assert upper_incomplete_gamma(1, math.pi) == pytest.approx(math.exp(-math.pi), rel=1e-14)

    def test_polynomial_case(self):
        assert upper_incomplete_gamma(2, 1.0) == pytest.approx(2 / math.e, rel=1e-14)

    @pytest.mark.parametrize("key", list(GAMMA_REF))
    def test_against_reference(self, key):
        a, x = key
        ref = GAMMA_REF[key]
        assert abs(upper_incomplete_gamma(a, x) - ref) <= 1e-13 * abs(ref)

    def test_against_direct_quadrature(self):
        a, x = 0.5 + 7j, math.pi
        # u^(a-1) e^-u on [x, 60]; the remainder is below e^-60.
        direct = mpmath.quad(lambda u: u ** (a - 1) * mpmath.exp(-u), [x, 5, 10, 20, 60])
        assert abs(upper_incomplete_gamma(a, x) - complex(direct)) < 1e-11

    def test_relative_accuracy_envelope(self):
        rng = np.random.default_rng(3)
        ctx = context()
        for _ in range(200):
            x = math.pi * rng.integers(1, 4) ** 2
            a = complex(rng.uniform(-40, 2), rng.uniform(-64, 64))
            if abs(a) > 64:
                continue
            ref = complex(mpmath.gammainc(a, x))
            value = upper_incomplete_gamma(a, x)
            assert abs(value - ref) <= 1e-13 * abs(ref)
            h, rel = _gamma_cf_scaled(ctx, a, x)
            scaled_ref = complex(mpmath.gammainc(a, x) * mpmath.exp(x) * mpmath.power(x, -a))
            assert abs(h - scaled_ref) <= rel * abs(scaled_ref)

    def test_non_convergence(self):
        with pytest.raises(ConvergenceError):
            _gamma_cf_scaled(context(), 0.5 + 30j, math.pi, max_iter=3)

    def test_domain(self):
        with pytest.raises(DomainError):
            upper_incomplete_gamma(1, 0.5)
        with pytest.raises(DomainError):
            upper_incomplete_gamma(10, math.pi)


class TestGammaSeries:
    def test_two_term_hand_value(self):
        hand = (math.exp(-math.pi) + math.exp(-4 * math.pi) / 4) / math.pi
        r = F_gamma_series(2, 1e-12)
        assert r.value == pytest.approx(hand, abs=1e-5)
        assert abs(r.value - F_REF[2]) <= r.abs_error_estimate <= 1e-12
        assert r.method is Method.GAMMA_SERIES

    def test_exponential_integral_sum(self):
        e1_sum = sum(complex(mpmath.e1(mpmath.pi * n * n)) for n in range(1, 8))
        gs = F_gamma_series(0, 1e-12).value
        assert abs(gs - e1_sum) < 1e-12
        assert abs(gs - F_quadrature(0, 1e-12).value) < 1e-11

    def test_schwarz_reflection(self):
        s = 1 + 3j
        assert F_gamma_series(s.conjugate()).value == pytest.approx(F_gamma_series(s).value.conjugate(), abs=1e-15)

    def test_domain(self):
        with pytest.raises(DomainError):
            F_gamma_series(1 + 200j)
        with pytest.raises(DomainError):
            F_gamma_series(9.0)
        with pytest.raises(DomainError):
            F_gamma_series(1, 0.0)

    def test_unreachable_tolerance(self):
        with pytest.raises(AccuracyError):
            F_gamma_series(1, 1e-30)

    def test_extended_precision_agrees(self):
        from zetacrit.mellin import _f_gamma_series

        ctx = context(40)
        value, err = _f_gamma_series(ctx, ctx.mpc(0.5, 28.269450442), 1e-35)
        assert err <= 1e-35
        assert abs(complex(value) - F_REF[0.5 + 28.269450442j]) < 1e-18


class TestQuadrature:
    def test_agrees_with_series_at_two(self):
        assert abs(F_quadrature(2, 1e-12).value - F_gamma_series(2, 1e-12).value) < 2e-12

    def test_real_positive_at_one(self):
        v = F_quadrature(1).value
        assert v.imag == 0 or abs(v.imag) < 1e-16
        assert v.real > 0

    def test_second_zero_scale(self):
        s = 0.5 + 28.269j
        q, g = F_quadrature(s, 1e-11), F_gamma_series(s, 1e-11)
        assert abs(q.value - g.value) <= q.abs_error_estimate + g.abs_error_estimate

    def test_unreachable_tolerance(self):
        with pytest.raises(AccuracyError):
            F_quadrature(1, 1e-30)

    def test_gauss_kronrod_exactness(self):
        for k in range(23):
            exact = (1 - (-1) ** (k + 1)) / (k + 1)
            assert (GK_NODES**k) @ GK_WEIGHTS == pytest.approx(exact, abs=1e-15)
        for k in range(14):
            exact = (1 - (-1) ** (k + 1)) / (k + 1)
            assert (GK_NODES**k) @ G_WEIGHTS == pytest.approx(exact, abs=1e-15)

    def test_adaptive_oscillatory(self):
        value, err, _ = adaptive_gk(lambda t: np.exp(40j * t), 0.0, 3.0, 1e-12)
        exact = (cmath.exp(120j) - 1) / 40j
        assert abs(value - exact) < 1e-12
        assert err <= 1e-12

    def test_panel_budget(self):
        with pytest.raises(AccuracyError):
            adaptive_gk(lambda t: np.exp(40j * t), 0.0, 3.0, 1e-12, max_panels=20)


@pytest.mark.parametrize("s", list(F_REF))
@pytest.mark.parametrize("method", [Method.GAMMA_SERIES, Method.QUADRATURE])
def test_error_estimates_cover_reference(s, method):
    r = F(s, 1e-12, method)
    assert abs(r.value - F_REF[s]) <= r.abs_error_estimate


def test_dual_method_agreement_on_grid():
    for s in INVARIANT_GRID:
        q, g = F_quadrature(s), F_gamma_series(s)
        diff = abs(q.value - g.value)
        assert diff <= q.abs_error_estimate + g.abs_error_estimate, s
        assert diff <= 1e-10, s


def test_real_on_real_axis():
    for x in np.arange(-4, 4.01, 0.25):
        assert abs(F_gamma_series(x).value.imag) <= 1e-13
        assert abs(F_quadrature(x).value.imag) <= 1e-13


def test_schwarz_reflection_on_grid():
    for s in INVARIANT_GRID[::7]:
        for fn in (F_gamma_series, F_quadrature):
            assert abs(fn(s.conjugate()).value - fn(s).value.conjugate()) <= 1e-12


@pytest.mark.parametrize("s", [0, 1, -2, -4])
def test_finite_where_zeta_factors_degenerate(s):
    r = F_gamma_series(s)
    assert math.isfinite(r.value.real) and math.isfinite(r.value.imag)
    assert r.value.real == pytest.approx(F_REF[s], abs=1e-12)


def test_dispatch_rejects_oracle_method():
    with pytest.raises(ValueError):
        F(1, method=Method.ORACLE)
