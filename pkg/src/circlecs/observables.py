"""Expectation values in a coherent state: position density, angle operator,
momentum moments, and the angle-momentum uncertainty product.

Everything here is driven by the reduced coordinates

    u = q / a,    v = a (p - hbar k) / (2 pi hbar),

in which all state dependence enters through theta ratios at the nomes
e^(-alpha), e^(-alpha/2). The ratios are computed in log space
(theta_log_stats / log_abs_theta_c) so that both the localized
(alpha -> infinity) and delocalized (alpha -> 0) regimes stay
full-precision; naive series quotients lose everything below
alpha ~ 0.5 where individual terms overflow.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .geometry import CircleGeometry
from .theta import log_abs_theta_c, theta_log_stats

_TWO_PI = 2.0 * math.pi


def _ln_expm1(x: float) -> float:
    """log(e^x - 1) for x > 0 without overflow."""
    if x <= 0.0:
        raise ValueError("ln_expm1 requires x > 0")
    if x > 30.0:
        return x + math.log1p(-math.exp(-x))
    return math.log(math.expm1(x))


def probability_density(u: float, v: float, alpha: float, a: float) -> float:
    """Position density of the normalized coherent state at angle variable u.

    (1/a) sqrt(2 alpha/pi) e^(-2 alpha u^2)
    |theta(pi v + i alpha u; e^-alpha)|^2 / theta(pi v; e^(-alpha/2))

    Exactly periodic in u with period 1 (the Gaussian growth cancels the
    theta quasi-period), so u is reduced to [-1/2, 1/2] first. Returns an
    exact 0.0 at the lone zero per cell (u = +-1/2, v = 1/2).
    """
    if alpha <= 0.0:
        raise ValueError("alpha must be positive")
    if a <= 0.0:
        raise ValueError("a must be positive")
    ur = u - round(u)
    la = log_abs_theta_c(math.pi * v, alpha * ur, alpha / math.pi)
    if la == -math.inf:
        return 0.0
    ln_norm = theta_log_stats(v, alpha / _TWO_PI).log_value
    ln_dens = (0.5 * math.log(2.0 * alpha / math.pi) - 2.0 * alpha * ur * ur
               + 2.0 * la - ln_norm - math.log(a))
    return math.exp(ln_dens)


def log_abs_expect_angle(v: float, alpha: float) -> float:
    """ln |<E>| for the unitary angle operator E = e^(2 pi i q/a).

    <E> = e^(2 pi i u) e^(-pi^2/(2 alpha))
          theta(pi(v - 1/2); e^(-alpha/2)) / theta(pi v; e^(-alpha/2))

    The log form survives the delocalized regime, where |<E>| falls like
    e^(-pi^2/alpha) and the plain double underflows below alpha ~ 0.007.
    """
    if alpha <= 0.0:
        raise ValueError("alpha must be positive")
    t = alpha / _TWO_PI
    return (-math.pi ** 2 / (2.0 * alpha)
            + theta_log_stats(v - 0.5, t).log_value
            - theta_log_stats(v, t).log_value)


def expect_angle(u: float, v: float, alpha: float) -> complex:
    """<E> as a complex number; underflows to 0j when |<E>| < 1e-308."""
    la = log_abs_expect_angle(v, alpha)
    return cmath.exp(complex(la, _TWO_PI * u))


def expect_momentum(p: float, geom: CircleGeometry) -> float:
    """<P> in the coherent state with momentum label p (any q label).

    p + (hbar alpha/(2 a)) d/dz ln theta(z; e^(-alpha/2)) at z = pi v.
    Equals p exactly at v in {0, 1/2}: there the log-derivative vanishes by
    the symmetric pairing inside theta_log_stats.
    """
    v = geom.a * (p - geom.hbar * geom.k) / (_TWO_PI * geom.hbar)
    st = theta_log_stats(v, geom.alpha / _TWO_PI)
    return p + (geom.hbar * geom.alpha / (2.0 * geom.a)) * st.dlog


def expect_momentum_sq(p: float, geom: CircleGeometry) -> float:
    """<P^2> assembled as <P>^2 + (hbar/a)^2 alpha B(v).

    B = 1 + (alpha/4)(theta''/theta - (theta'/theta)^2) > 0 is kept in log
    form by theta_log_stats, which makes the variance manifestly positive;
    expanding the square into raw theta'' / theta' quotients (the same
    quantity algebraically) cancels catastrophically for alpha < 1.
    """
    pm = expect_momentum(p, geom)
    v = geom.a * (p - geom.hbar * geom.k) / (_TWO_PI * geom.hbar)
    st = theta_log_stats(v, geom.alpha / _TWO_PI)
    return pm * pm + (geom.hbar / geom.a) ** 2 * geom.alpha * math.exp(st.log_b)


@dataclass(frozen=True)
class UncertaintyReport:
    """Angle-momentum uncertainty data at reduced momentum v.

    delta_e, delta_p are dimensionless (delta_p in units hbar/a). delta_fn
    carries units of hbar and is the closed-form product; delta_fn_composed
    rebuilds it from delta_e, delta_p and |<E>| through an independent
    floating-point route, so their agreement is a live consistency check.
    """

    v: float
    alpha: float
    delta_e: float
    delta_p: float
    delta_fn: float
    delta_fn_composed: float
    bound_lo: float
    bound_hi: float

    @property
    def route_rel_dev(self) -> float:
        return abs(self.delta_fn - self.delta_fn_composed) / self.delta_fn


def uncertainty_report(v: float, alpha: float, geom: CircleGeometry) -> UncertaintyReport:
    """Uncertainty measure Delta = Delta_P a DeltaE / (2 pi |<E>|).

    Closed route:    Delta^2 = (hbar/(2 pi))^2 alpha (e^(-2L) - 1) B,
                     L = ln|<E>|, B from theta_log_stats.
    Composed route:  (a/(2 pi)) Delta_P * [DeltaE / |<E>|].

    Both are evaluated in log space; they agree to rounding but share no
    intermediate beyond L and ln B. The report carries the open bounds
    (hbar/2, hbar) that Delta must sit strictly between.
    """
    if alpha <= 0.0:
        raise ValueError("alpha must be positive")
    hb = geom.hbar
    t = alpha / _TWO_PI
    st = theta_log_stats(v, t)
    ln_e = (-math.pi ** 2 / (2.0 * alpha)
            + theta_log_stats(v - 0.5, t).log_value - st.log_value)
    # ln_e < 0 always (|<E>| < 1); equality would need a point-localized state
    delta_e = math.sqrt(-math.expm1(2.0 * ln_e))
    ln_delta_p = 0.5 * (math.log(alpha) + st.log_b)
    delta_p = math.exp(ln_delta_p)
    ln_a_fac = _ln_expm1(-2.0 * ln_e)
    delta_fn = (hb / _TWO_PI) * math.exp(
        0.5 * (math.log(alpha) + ln_a_fac + st.log_b))
    delta_comp = (hb / _TWO_PI) * math.exp(
        ln_delta_p + math.log(delta_e) - ln_e)
    return UncertaintyReport(v=v, alpha=alpha, delta_e=delta_e, delta_p=delta_p,
                             delta_fn=delta_fn, delta_fn_composed=delta_comp,
                             bound_lo=0.5 * hb, bound_hi=hb)


# ---------------------------------------------------------------------------
# Sweeps: the array-producing entry points the CLI emits directly.

def density_sweep(alpha: float, v: float, u_values: np.ndarray):
    """Rows (u, a * density(u - 1/2, v)); the shift centers the peak."""
    u_values = np.asarray(u_values, dtype=np.float64)
    rows = np.empty((u_values.size, 2))
    for i, u in enumerate(u_values):
        rows[i] = (u, probability_density(float(u) - 0.5, v, alpha, 1.0))
    return ["u", "a_density"], rows


def angle_sweep(alpha: float, v_values: np.ndarray):
    """Rows (v, |<E>|)."""
    v_values = np.asarray(v_values, dtype=np.float64)
    rows = np.empty((v_values.size, 2))
    for i, v in enumerate(v_values):
        rows[i] = (v, math.exp(log_abs_expect_angle(float(v), alpha)))
    return ["v", "abs_expect_angle"], rows


def momentum_sweep(alpha: float, v_values: np.ndarray):
    """Rows (v, (a/(2 pi hbar)) (<P> - hbar k)) = v + (alpha/(4 pi)) dlog."""
    v_values = np.asarray(v_values, dtype=np.float64)
    rows = np.empty((v_values.size, 2))
    for i, v in enumerate(v_values):
        st = theta_log_stats(float(v), alpha / _TWO_PI)
        rows[i] = (v, float(v) + alpha / (4.0 * math.pi) * st.dlog)
    return ["v", "momentum_shift"], rows


def uncertainty_sweep(alpha: float, v_values: np.ndarray):
    """Rows (v, 2 Delta / hbar, route deviation)."""
    v_values = np.asarray(v_values, dtype=np.float64)
    geom = CircleGeometry.from_alpha(alpha)
    rows = np.empty((v_values.size, 3))
    for i, v in enumerate(v_values):
        rep = uncertainty_report(float(v), alpha, geom)
        rows[i] = (v, 2.0 * rep.delta_fn / geom.hbar, rep.route_rel_dev)
    return ["v", "two_delta_over_hbar", "route_rel_dev"], rows
