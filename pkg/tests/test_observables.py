"""Observables against coefficient-series oracles.

Every closed form here is cross-checked against the same quantity assembled
from the basis expansion: densities from |psi|^2, the angle operator from
the shifted-coefficient sum, momentum moments from the frequency ladder.
The series knows nothing about theta log-derivatives, so agreement pins the
whole log-space pipeline.
"""
import math

import numpy as np
import pytest

from circlecs.circle import PhasePoint, cs_coefficients, cs_norm_sq, cs_wavefunction
from circlecs.geometry import CircleGeometry
from circlecs.observables import (
    UncertaintyReport,
    angle_sweep,
    density_sweep,
    expect_angle,
    expect_momentum,
    expect_momentum_sq,
    log_abs_expect_angle,
    momentum_sweep,
    probability_density,
    uncertainty_report,
    uncertainty_sweep,
)

TWO_PI = 2.0 * math.pi


def _setup(alpha, v, u=0.0, k=0.0):
    g = CircleGeometry.from_alpha(alpha, k=k)
    p = g.hbar * g.k + v * TWO_PI * g.hbar / g.a
    return g, PhasePoint(u * g.a, p)


def _series_moments(label, g, shift=0):
    # sum conj(c_{n+shift}) c_n, without the closed forms
    state = cs_coefficients(label, g)
    acc = 0.0 + 0.0j
    for n, c in state.coeffs.items():
        cs = state.coeffs.get(n + shift)
        if cs is not None:
            acc += cs.conjugate() * c
    return acc


@pytest.mark.parametrize("alpha", [0.5, 5.0, 60.0])
@pytest.mark.parametrize("v", [0.0, 0.3, 0.5])
@pytest.mark.parametrize("k", [0.0, 0.3])
def test_density_matches_wavefunction(alpha, v, k):
    g, label = _setup(alpha, v, u=0.2, k=k)
    nrm = cs_norm_sq(label, g)
    for du in (0.0, 0.23, -0.4, 0.37):
        qp = label.q + du * g.a
        want = abs(cs_wavefunction(label, qp, g)) ** 2 / nrm
        got = probability_density(du, v, alpha, g.a)
        assert math.isclose(got, want, rel_tol=1e-9, abs_tol=1e-14)


def test_density_zero_and_periodicity():
    # the lone zero per cell sits at u = 1/2, v = 1/2
    peak = probability_density(0.0, 0.0, 4.0, 1.0)
    assert probability_density(0.5, 0.5, 4.0, 1.0) <= 1e-15 * peak
    for u in (0.17, -0.36):
        d0 = probability_density(u, 0.21, 4.0, 1.0)
        for shift in (1, -2, 5):
            ds = probability_density(u + shift, 0.21, 4.0, 1.0)
            assert math.isclose(d0, ds, rel_tol=1e-12)
    assert probability_density(0.3, 0.2, 1.0, 2.5) > 0.0
    with pytest.raises(ValueError):
        probability_density(0.1, 0.1, 0.0, 1.0)
    with pytest.raises(ValueError):
        probability_density(0.1, 0.1, 1.0, -2.0)


@pytest.mark.parametrize("alpha,v", [(0.5, 0.0), (8.0, 0.3)])
def test_density_normalized(alpha, v):
    cols, rows = density_sweep(alpha, v, np.linspace(0.0, 1.0, 4001))
    assert cols == ["u", "a_density"]
    integral = float(np.trapezoid(rows[:, 1], rows[:, 0]))
    assert math.isclose(integral, 1.0, rel_tol=1e-8)


@pytest.mark.parametrize("alpha", [0.5, 5.0, 60.0])
@pytest.mark.parametrize("v", [0.0, 0.17, 0.5])
@pytest.mark.parametrize("u,k", [(0.0, 0.0), (0.3, 0.2)])
def test_expect_angle_matches_series(alpha, v, u, k):
    g, label = _setup(alpha, v, u=u, k=k)
    want = _series_moments(label, g, shift=1) / cs_norm_sq(label, g)
    got = expect_angle(u, v, alpha)
    assert abs(got - want) <= 1e-9 * (abs(want) + 1e-13)


def test_expect_angle_log_form_in_the_deep_tail():
    # alpha small enough that the plain series result sits at e^-33; the log
    # route must track it without losing digits
    alpha, v = 0.15, 0.1
    g, label = _setup(alpha, v)
    want = _series_moments(label, g, shift=1) / cs_norm_sq(label, g)
    la = log_abs_expect_angle(v, alpha)
    assert la < -30.0
    assert math.isclose(la, math.log(abs(want)), rel_tol=1e-9)


def test_expect_angle_symmetries():
    for alpha in (0.4, 7.0):
        for v in (0.13, 0.31):
            assert math.isclose(log_abs_expect_angle(v, alpha),
                                log_abs_expect_angle(-v, alpha), rel_tol=1e-13)
            assert math.isclose(log_abs_expect_angle(v, alpha),
                                log_abs_expect_angle(v + 1.0, alpha),
                                rel_tol=1e-12)
    with pytest.raises(ValueError):
        log_abs_expect_angle(0.1, -1.0)


def test_expect_angle_localized_limit():
    # theta ratios collapse to 1 at large alpha, leaving e^(-pi^2/(2 alpha))
    for v in (0.0, 0.25, 0.5):
        assert math.isclose(log_abs_expect_angle(v, 100.0),
                            -math.pi ** 2 / 200.0, rel_tol=1e-12)
    assert abs(expect_angle(0.25, 0.0, 100.0)
               - cmath_exp_check(0.25, 100.0)) < 1e-12


def cmath_exp_check(u, alpha):
    import cmath

    return cmath.exp(complex(-math.pi ** 2 / (2.0 * alpha), TWO_PI * u))


@pytest.mark.parametrize("alpha", [0.5, 5.0, 40.0])
@pytest.mark.parametrize("v", [0.17, -0.4, 1.3])
@pytest.mark.parametrize("k", [0.0, 0.25])
def test_expect_momentum_matches_series(alpha, v, k):
    g, label = _setup(alpha, v, k=k)
    state = cs_coefficients(label, g)
    num = sum(g.hbar * g.omega_n(n) * abs(c) ** 2 for n, c in state.coeffs.items())
    want = num / cs_norm_sq(label, g)
    got = expect_momentum(label.p, g)
    assert math.isclose(got, want, rel_tol=1e-10, abs_tol=1e-12)


@pytest.mark.parametrize("alpha", [1.0, 10.0])
def test_expect_momentum_pinned_at_symmetric_v(alpha):
    # alpha = 1 runs the Gaussian-sum branch, alpha = 10 the direct branch;
    # the pin must be exact on both. k = 1/4 keeps p - hbar k free of
    # representation error, which the exactness claim is conditioned on.
    g = CircleGeometry.from_alpha(alpha, k=0.25)
    for v in (0.0, 0.5, -0.5, 2.0):
        p = g.hbar * g.k + v * TWO_PI * g.hbar / g.a
        assert expect_momentum(p, g) == p


def test_expect_momentum_covariant_under_ladder_shift():
    g = CircleGeometry.from_alpha(3.0, k=0.1)
    step = TWO_PI * g.hbar / g.a
    for p in (0.3, -0.9):
        lhs = expect_momentum(p + step, g)
        rhs = expect_momentum(p, g) + step
        assert math.isclose(lhs, rhs, rel_tol=1e-12)


@pytest.mark.parametrize("alpha", [0.5, 5.0, 40.0])
@pytest.mark.parametrize("v", [0.0, 0.17, 0.5])
def test_expect_momentum_sq_matches_series(alpha, v):
    g, label = _setup(alpha, v)
    state = cs_coefficients(label, g)
    num = sum((g.hbar * g.omega_n(n)) ** 2 * abs(c) ** 2
              for n, c in state.coeffs.items())
    want = num / cs_norm_sq(label, g)
    got = expect_momentum_sq(label.p, g)
    assert math.isclose(got, want, rel_tol=1e-9, abs_tol=1e-12)
    var = got - expect_momentum(label.p, g) ** 2
    assert var > 0.0


def test_momentum_variance_reaches_line_limit():
    g = CircleGeometry.from_alpha(1e4)
    p = 0.37
    var = expect_momentum_sq(p, g) - expect_momentum(p, g) ** 2
    assert math.isclose(var, g.omega * g.hbar / 2.0, rel_tol=1e-6)


def test_uncertainty_delocalized_limits():
    # alpha -> 0: 2 Delta/hbar -> sqrt(2) at v=0, sqrt(3) at v=1/2, 2 at v=1/4
    g = CircleGeometry.from_alpha(1e-6)
    r0 = uncertainty_report(0.0, 1e-6, g)
    assert math.isclose(r0.delta_fn, math.sqrt(2.0) / 2.0 * g.hbar, rel_tol=1e-9)
    rh = uncertainty_report(0.5, 1e-6, g)
    assert math.isclose(rh.delta_fn, math.sqrt(3.0) / 2.0 * g.hbar, rel_tol=1e-9)
    rq = uncertainty_report(0.25, 1e-6, g)
    assert math.isclose(rq.delta_fn, g.hbar, rel_tol=1e-9)


@pytest.mark.parametrize("alpha", [0.01, 0.5, 3.0, 20.0, 100.0])
def test_uncertainty_band_and_routes(alpha):
    g = CircleGeometry.from_alpha(alpha)
    for v in (0.0, 0.1, 0.25, 0.4, 0.5):
        rep = uncertainty_report(v, alpha, g)
        assert isinstance(rep, UncertaintyReport)
        assert rep.bound_lo == 0.5 * g.hbar and rep.bound_hi == g.hbar
        assert rep.delta_fn > rep.bound_lo
        # the true product stays under hbar; the closed route may poke over
        # by rounding when the margin is ~e^(-pi^2/alpha)
        assert rep.delta_fn < rep.bound_hi * (1.0 + 1e-12)
        assert rep.route_rel_dev < 1e-10
        assert 0.0 < rep.delta_e < 1.0 + 1e-15
        # delta_p itself underflows near v = 0 for tiny alpha (it falls like
        # e^(-pi^2/alpha)); the log-composed product above stays exact
        assert rep.delta_p > 0.0 or alpha < 0.1


def test_uncertainty_even_in_v():
    g = CircleGeometry.from_alpha(2.0)
    for v in (0.12, 0.37):
        a = uncertainty_report(v, 2.0, g)
        b = uncertainty_report(-v, 2.0, g)
        assert math.isclose(a.delta_fn, b.delta_fn, rel_tol=1e-12)


def test_sweep_shapes_and_pins():
    cols, rows = angle_sweep(3.0, np.array([0.0, 0.2, 0.5]))
    assert cols == ["v", "abs_expect_angle"]
    assert rows.shape == (3, 2)
    assert np.all(rows[:, 1] > 0.0)
    want = math.exp(log_abs_expect_angle(0.2, 3.0))
    assert math.isclose(rows[1, 1], want, rel_tol=1e-14)

    cols, rows = momentum_sweep(4.0, np.array([0.0, 0.25, 0.5]))
    assert cols == ["v", "momentum_shift"]
    assert rows[0, 1] == 0.0 and rows[2, 1] == 0.5  # pinned exactly
    assert 0.0 < rows[1, 1] < 0.25  # pulled toward the nearest rung

    cols, rows = uncertainty_sweep(3.0, np.array([0.1, 0.3]))
    assert cols == ["v", "two_delta_over_hbar", "route_rel_dev"]
    assert np.all(rows[:, 1] > 1.0) and np.all(rows[:, 1] < 2.0)
    assert np.all(rows[:, 2] < 1e-10)
