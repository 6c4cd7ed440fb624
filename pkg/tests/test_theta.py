"""Theta evaluation against brute-force high-precision series."""
import math

import mpmath as mp
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from conftest import brute_theta_nd, mp_theta3, mp_theta3_d1, mp_theta3_d2, rel_dev
from circlecs import (NomeOutOfRange, NonConvergence, PeriodNotConvergent,
                      log_abs_theta_c, theta3, theta3_accelerated, theta3_d1,
                      theta3_d2, theta_log_stats, theta_nd)
from circlecs.theta import RHO_SWITCH


def test_small_nome_reference_value():
    # 1 + 2(0.1 + 1e-4 + 1e-9 + 1e-16)
    got = theta3(0.0, 0.1).value
    assert got.imag == 0.0
    assert math.isclose(got.real, 1.2002000020000002, rel_tol=1e-15)


def test_zero_nome_gives_one():
    r = theta3(0.3 + 0.2j, 0.0)
    assert r.value == 1.0 + 0.0j
    assert r.terms_used == 1


def test_derivative_vanishes_at_half_period():
    assert abs(theta3_d1(math.pi / 2, 0.1).value) < 1e-15
    assert abs(theta3_d1(0.0, 0.37).value) == 0.0


def test_second_derivative_reference():
    got = theta3_d2(0.0, 0.1, tol=1e-15).value
    want = -8.0 * (0.1 + 4e-4 + 9e-9 + 16e-16)
    assert math.isclose(got.real, want, rel_tol=1e-14)
    assert got.imag == 0.0


_GRID_Z = [0.0, 0.31, math.pi / 2, 1.1 + 0.4j, -2.2 + 0.9j, 0.5 - 0.6j]
_GRID_RHO = [0.05, -0.05, 0.3, -0.3, 0.6, 0.85, -0.85, 0.95]


@pytest.mark.parametrize("rho", _GRID_RHO)
@pytest.mark.parametrize("z", _GRID_Z)
def test_value_matches_brute_series(z, rho):
    got = theta3(z, rho).value
    want = complex(mp_theta3(z, rho))
    # Error budget for a direct double summation: the requested absolute tail
    # (tol=1e-12) plus rounding proportional to the sum of term magnitudes.
    # Near z = pi/2 at high nome the terms cancel almost completely, so a
    # relative check against the tiny result would be asking the impossible.
    y = abs(complex(z).imag)
    scale = float(complex(mp_theta3(complex(0.0, -y), abs(rho))).real)
    assert abs(got - want) <= 2e-12 + 2e-14 * scale


@pytest.mark.parametrize("rho", [0.3, -0.6, 0.9])
@pytest.mark.parametrize("z", [0.4, 1.3 + 0.5j, -0.7 - 0.3j])
def test_derivatives_match_brute_series(z, rho):
    d1 = theta3_d1(z, rho).value
    d2 = theta3_d2(z, rho).value
    y = abs(complex(z).imag)
    # n^2-weighted magnitude sum bounds both derivative term sums
    s2 = float(complex(mp_theta3_d2(complex(0.0, -y), abs(rho))).real)
    assert abs(d1 - complex(mp_theta3_d1(z, rho))) <= 4e-12 + 5e-14 * abs(s2)
    assert abs(d2 - complex(mp_theta3_d2(z, rho))) <= 4e-12 + 5e-14 * abs(s2)


def test_derivatives_are_derivatives():
    # central differences, no series knowledge shared with the library
    z, rho, h = 0.7 + 0.2j, 0.55, 1e-5
    fd1 = (theta3(z + h, rho).value - theta3(z - h, rho).value) / (2 * h)
    assert rel_dev(fd1, theta3_d1(z, rho).value) < 1e-8
    fd2 = (theta3(z + h, rho).value - 2 * theta3(z, rho).value
           + theta3(z - h, rho).value) / (h * h)
    assert rel_dev(fd2, theta3_d2(z, rho).value) < 1e-5


def test_tail_bound_is_honest():
    for z, rho, tol in [(0.3, 0.9, 1e-12), (1.0 + 0.8j, 0.5, 1e-10),
                        (0.0, 0.1, 1e-14)]:
        r = theta3(z, rho, tol)
        assert r.tail_bound <= tol
        want = complex(mp_theta3(z, rho, nmax=400, dps=50))
        assert abs(r.value - want) <= 10 * max(r.tail_bound, 1e-16 * abs(want))


def test_term_count_grows_toward_unit_nome():
    rho = math.exp(-0.01 * math.pi)
    r = theta3(0.3, rho, 1e-12)
    assert r.terms_used >= 50
    assert r.terms_used < 200


@settings(max_examples=60, deadline=None)
@given(x=st.floats(-3.0, 3.0), y=st.floats(-0.8, 0.8),
       rho=st.floats(-0.8, 0.8))
def test_periodicity_and_evenness(x, y, rho):
    if abs(rho) < 1e-6:
        rho = 0.1
    z = complex(x, y)
    a = theta3(z, rho).value
    b = theta3(z + math.pi, rho).value
    assert rel_dev(a, b) < 1e-10
    c = theta3(-z, rho).value
    assert rel_dev(a, c) < 1e-13


@settings(max_examples=40, deadline=None)
@given(x=st.floats(-4.0, 4.0), rho=st.floats(0.001, 0.995))
def test_positive_on_reals(x, rho):
    # accelerated path: the high-nome branch sums positive Gaussians, so
    # strict positivity survives in floating point even where the value
    # dips under the direct series' rounding floor (x near pi/2, rho -> 1)
    v = theta3_accelerated(x, rho).value
    assert v.real > 0.0
    assert abs(v.imag) <= 1e-13 * v.real


@pytest.mark.parametrize("rho", [0.3, 0.8])
def test_quasi_periodicity(rho):
    z = 0.37 + 0.21j
    shift = 1j * (-math.log(rho))
    lhs = theta3(z + shift, rho).value
    rhs = (1.0 / rho) * np.exp(-2j * z) * theta3(z, rho).value
    assert rel_dev(lhs, complex(rhs)) < 1e-11


def test_accelerated_delegates_below_switch():
    z = 0.4 + 0.1j
    for rho in (0.01, RHO_SWITCH * 0.999):
        assert theta3_accelerated(z, rho).value == theta3(z, rho).value


@pytest.mark.parametrize("t", [0.9, 0.5, 0.1, 0.02])
def test_accelerated_near_unit_nome(t):
    rho = math.exp(-math.pi * t)
    for z in (0.0, 0.45, math.pi / 2, 0.3 + 0.2j):
        got = theta3_accelerated(z, rho).value
        want = complex(mp_theta3(z, rho, nmax=300, dps=50))
        assert rel_dev(got, want) < 1e-11


def test_accelerated_equals_direct_in_overlap_region():
    # around the switch both representations are cheap and must agree
    for t in (0.7, 1.0, 1.3):
        rho = math.exp(-math.pi * t)
        a = theta3_accelerated(0.8 + 0.3j, rho).value
        b = theta3(0.8 + 0.3j, rho).value
        assert rel_dev(a, b) < 1e-12


def test_nome_validation():
    for bad in (1.0, -1.0, 1.2, -3.0, math.nan):
        with pytest.raises(NomeOutOfRange):
            theta3(0.1, bad)
    with pytest.raises(NomeOutOfRange):
        theta3_accelerated(0.1, 1.0)


def test_nonconvergence_at_term_cap():
    with pytest.raises(NonConvergence):
        theta3(0.0, 0.99999999, 1e-12)


def test_theta_nd_reduces_to_theta3():
    t = 0.8
    om = np.array([[1j * t]])
    for zv in (0.3, 0.9 - 0.2j):
        got = theta_nd(np.array([zv]), om).value
        want = theta3(zv, math.exp(-math.pi * t)).value
        assert rel_dev(got, want) < 1e-10


def test_theta_nd_diagonal_factorizes():
    om = np.diag([0.9j, 1.7j])
    z = np.array([0.4, -0.8 + 0.3j])
    got = theta_nd(z, om).value
    want = (theta3(0.4, math.exp(-math.pi * 0.9)).value
            * theta3(-0.8 + 0.3j, math.exp(-math.pi * 1.7)).value)
    assert rel_dev(got, want) < 1e-10


def test_theta_nd_skew_vs_brute_sum():
    om = np.array([[1.0j, 0.3 + 0.2j], [0.3 + 0.2j, 1.4j]])
    z = np.array([0.25 + 0.1j, -0.6])
    got = theta_nd(z, om, tol=1e-11).value
    want = brute_theta_nd(z, om, nmax=15)
    assert rel_dev(got, want) < 1e-10


def test_theta_nd_three_dim_diagonal():
    om = np.diag([1.1j, 0.8j, 1.9j])
    z = np.array([0.2, 0.5, -0.3])
    got = theta_nd(z, om).value
    want = 1.0 + 0.0j
    for zi, ti in zip(z, (1.1, 0.8, 1.9)):
        want *= theta3(float(zi), math.exp(-math.pi * ti)).value
    assert rel_dev(got, want) < 1e-10


def test_theta_nd_rejects_bad_period_matrix():
    with pytest.raises(PeriodNotConvergent):
        theta_nd(np.array([0.1]), np.array([[-0.5j]]))
    with pytest.raises(PeriodNotConvergent):
        # indefinite imaginary part
        theta_nd(np.array([0.1, 0.2]), np.diag([1.0j, -1.0j]))
    with pytest.raises(ValueError):
        theta_nd(np.array([0.1, 0.2]),
                 np.array([[1.0j, 0.5], [0.1, 1.0j]]))


@pytest.mark.parametrize("t", [1.0, 1.7, 4.0])
@pytest.mark.parametrize("v", [0.0, 0.13, 0.25, 0.5, -0.37, 1.62])
def test_log_stats_direct_branch(v, t):
    st_ = theta_log_stats(v, t)
    rho = math.exp(-math.pi * t)
    z = math.pi * v
    val = theta3(z, rho).value.real
    d1 = theta3_d1(z, rho).value
    d2 = theta3_d2(z, rho).value
    assert math.isclose(st_.log_value, math.log(val), rel_tol=1e-12, abs_tol=1e-13)
    dlog = d1.real / val
    assert math.isclose(st_.dlog, dlog, rel_tol=1e-10, abs_tol=1e-13)
    b = 1.0 + (math.pi * t / 2.0) * (d2.real / val - dlog * dlog)
    assert math.isclose(math.exp(st_.log_b), b, rel_tol=1e-10)


@pytest.mark.parametrize("t", [0.5, 0.1, 0.02])
@pytest.mark.parametrize("v", [0.0, 0.13, 0.25, 0.5, -0.37])
def test_log_stats_gaussian_branch_vs_mp(v, t):
    st_ = theta_log_stats(v, t)
    # b is a near-total cancellation against 1 when t is small (it reaches
    # e^-150 at v=0, t=0.02), so the oracle needs two things: rho formed as
    # exp(-pi t) at full working precision, never rounded through a double,
    # and enough digits to resolve the residue.
    with mp.workdps(130):
        rho = mp.exp(-mp.pi * mp.mpf(t))
        z = mp.pi * mp.mpf(v)
        val = mp_theta3(z, rho, nmax=120, dps=130)
        d1 = mp_theta3_d1(z, rho, nmax=120, dps=130)
        d2 = mp_theta3_d2(z, rho, nmax=120, dps=130)
        want_log = mp.log(mp.fabs(val))
        want_dlog = mp.re(d1 / val)
        want_b = 1 + (mp.pi * t / 2) * (mp.re(d2 / val) - want_dlog ** 2)
        assert math.isclose(st_.log_value, float(want_log), rel_tol=1e-11,
                            abs_tol=1e-12)
        assert math.isclose(st_.dlog, float(want_dlog), rel_tol=1e-9,
                            abs_tol=1e-11)
        assert math.isclose(st_.log_b, float(mp.log(want_b)), rel_tol=1e-9,
                            abs_tol=1e-10)


def test_log_stats_continuous_at_branch_switch():
    for v in (0.0, 0.21, 0.5):
        lo = theta_log_stats(v, 1.0 - 1e-9)
        hi = theta_log_stats(v, 1.0 + 1e-9)
        assert math.isclose(lo.log_value, hi.log_value, rel_tol=1e-7, abs_tol=1e-9)
        assert math.isclose(lo.dlog, hi.dlog, rel_tol=1e-6, abs_tol=1e-9)
        assert math.isclose(lo.log_b, hi.log_b, rel_tol=1e-6, abs_tol=1e-7)


def test_log_stats_symmetry_points_exact():
    # the log-derivative must vanish exactly at the symmetric points
    for t in (0.05, 0.4, 1.0, 3.0):
        assert theta_log_stats(0.0, t).dlog == 0.0
        assert theta_log_stats(0.5, t).dlog == 0.0
        assert theta_log_stats(-0.5, t).dlog == 0.0
    s = theta_log_stats(0.31, 0.2)
    sm = theta_log_stats(-0.31, 0.2)
    assert math.isclose(s.dlog, -sm.dlog, rel_tol=1e-13)
    assert math.isclose(s.log_value, sm.log_value, rel_tol=1e-13)


def test_log_stats_periodic_in_v():
    for t in (0.08, 2.0):
        a = theta_log_stats(0.17, t)
        b = theta_log_stats(3.17, t)
        assert math.isclose(a.log_value, b.log_value, rel_tol=1e-12, abs_tol=1e-13)
        assert math.isclose(a.dlog, b.dlog, rel_tol=1e-12, abs_tol=1e-13)


def test_log_stats_small_t_scale():
    # theta(0; e^(-pi t)) -> t^(-1/2): log grows like -(1/2) ln t without
    # overflow far past where the double series would die
    st_ = theta_log_stats(0.0, 1e-6)
    assert math.isclose(st_.log_value, -0.5 * math.log(1e-6), rel_tol=1e-10)


@pytest.mark.parametrize("t", [0.3, 2.0])
def test_log_abs_theta_c_vs_mp(t):
    rho = math.exp(-math.pi * t)
    for x, y in [(0.0, 0.0), (0.8, 0.4), (math.pi / 2, -1.3), (2.6, 5.0)]:
        got = log_abs_theta_c(x, y, t)
        want = float(mp.log(abs(mp_theta3(complex(x, y), rho, nmax=300, dps=50))))
        assert math.isclose(got, want, rel_tol=1e-10, abs_tol=1e-11)


def test_log_abs_theta_c_zero_point():
    # theta3 vanishes at z = pi/2 + i pi t/2; the log must go to -inf or at
    # least far below anything the neighbors produce
    t = 0.7
    got = log_abs_theta_c(math.pi / 2, math.pi * t / 2, t)
    near = log_abs_theta_c(math.pi / 2 + 0.1, math.pi * t / 2, t)
    assert got < near - 25.0
