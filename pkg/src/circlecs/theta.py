"""Jacobi-type theta series: direct evaluation, derivatives, lattice (n-dim)
form, and a Gaussian-sum representation that converges fast where the direct
series is slow.

Conventions used throughout the package:

    theta(z; rho)   = sum_n rho^(n^2) e^(2 i n z)           (n over all integers)
    theta'(z; rho)  = 2 i sum_n n rho^(n^2) e^(2 i n z)
    theta''(z; rho) = -4 sum_n n^2 rho^(n^2) e^(2 i n z)

    Theta(z|Omega)  = sum_m exp(i pi m.Omega m + 2 i m.z)   (m over Z^d)

For real nome rho = e^(-pi t) the Gaussian-sum (dual) representation

    theta(z; e^(-pi t)) = t^(-1/2) sum_n exp(-(z - pi n)^2 / (pi t))

needs O(1) terms exactly where the defining series needs many (t small, i.e.
rho near 1), and vice versa. ``theta3_accelerated`` switches representation at
rho = RHO_SWITCH = e^(-pi), where both sides are cheap.

All truncations carry rigorous geometric tail bounds, reported in
``ComplexSeriesResult.tail_bound`` (absolute bound on the truncation error).
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ._backend import gauss_theta_log, lattice_theta_batch, theta_weighted_sum
from .errors import NomeOutOfRange, NonConvergence, PeriodNotConvergent

RHO_SWITCH = math.exp(-math.pi)

_TERM_CAP = 10_000


@dataclass(frozen=True)
class Nome:
    """Validated nome: either a real rho with |rho| < 1 (1-d series) or a
    complex period matrix with positive-definite imaginary part (lattice
    series). Exactly one of the two must be given."""

    rho: float | None = None
    period_matrix: object | None = None

    def __post_init__(self):
        if (self.rho is None) == (self.period_matrix is None):
            raise NomeOutOfRange("give exactly one of rho or period_matrix")
        if self.rho is not None:
            _validate_rho(self.rho)
        else:
            _validate_period_matrix(np.asarray(self.period_matrix, dtype=complex))


@dataclass(frozen=True)
class ComplexSeriesResult:
    """Value of a truncated series plus what the truncation cost.

    value      : the partial sum
    terms_used : number of lattice points summed
    tail_bound : rigorous absolute bound on the discarded tail
    """

    value: complex
    terms_used: int
    tail_bound: float


def _validate_rho(rho) -> float:
    rho = float(rho)
    if not math.isfinite(rho) or abs(rho) >= 1.0:
        raise NomeOutOfRange(f"need |rho| < 1, got rho = {rho!r}")
    return rho


def _validate_period_matrix(omega: np.ndarray) -> np.ndarray:
    omega = np.asarray(omega, dtype=complex)
    if omega.ndim != 2 or omega.shape[0] != omega.shape[1]:
        raise NomeOutOfRange(f"period matrix must be square, got shape {omega.shape}")
    if not np.allclose(omega, omega.T, rtol=0.0, atol=1e-12):
        raise NomeOutOfRange("period matrix must be symmetric")
    lam_min = float(np.linalg.eigvalsh(omega.imag).min())
    if lam_min <= 0.0:
        raise PeriodNotConvergent(
            f"imaginary part of the period matrix must be positive definite "
            f"(smallest eigenvalue {lam_min:g})")
    return omega


def _rho_of(nome) -> float:
    if isinstance(nome, Nome):
        if nome.rho is None:
            raise NomeOutOfRange("1-d theta needs a real nome, not a period matrix")
        return float(nome.rho)
    return _validate_rho(nome)


def _log_tail_bound(nmax: int, ln_abs_rho: float, abs_imz: float, weight: int) -> float:
    # tail <= 4 (N+1)^w |rho|^((N+1)^2) e^(2 (N+1) |Im z|), valid for N >= n_floor
    n1 = nmax + 1
    return math.log(4.0) + weight * math.log(n1) + n1 * n1 * ln_abs_rho + 2.0 * n1 * abs_imz


def _truncation_index(rho: float, im_z: float, tol: float, weight: int) -> tuple[int, float]:
    """Smallest N with a rigorous tail bound below tol; returns (N, bound)."""
    if rho == 0.0:
        return 0, 0.0
    ln_abs = math.log(abs(rho))
    b = abs(im_z)
    # ratio of consecutive term bounds falls below 1/2 from n_floor on
    n_floor = max(1, math.ceil((2.0 * b + (weight + 1) * math.log(2.0)) / (-2.0 * ln_abs) - 0.5))
    # closed-form first guess ignoring the polynomial factor, then step up
    n = n_floor
    ln_tol = math.log(tol)
    disc = b * b - ln_abs * (math.log(4.0) - ln_tol)
    if disc > 0.0:
        guess = math.ceil((-b - math.sqrt(disc)) / ln_abs) - 1
        n = max(n, guess)
    while n < _TERM_CAP and _log_tail_bound(n, ln_abs, b, weight) >= ln_tol:
        n += 1
    if n >= _TERM_CAP:
        raise NonConvergence(
            f"theta series needs more than {_TERM_CAP} terms at rho={rho!r}, "
            f"|Im z|={b!r}; use the accelerated form or loosen tol")
    return n, math.exp(_log_tail_bound(n, ln_abs, b, weight))


def theta3(z, rho, tol: float = 1e-12) -> ComplexSeriesResult:
    """Direct series for theta(z; rho), truncated to an absolute tail < tol."""
    rho = _rho_of(rho)
    z = complex(z)
    n, bound = _truncation_index(rho, z.imag, tol, weight=0)
    value = theta_weighted_sum(z.real, z.imag, rho, n, 0)
    return ComplexSeriesResult(value, 2 * n + 1, bound)


def theta3_d1(z, rho, tol: float = 1e-12) -> ComplexSeriesResult:
    """First z-derivative of theta, same truncation contract as theta3."""
    rho = _rho_of(rho)
    z = complex(z)
    n, bound = _truncation_index(rho, z.imag, tol / 2.0, weight=1)
    value = 2j * theta_weighted_sum(z.real, z.imag, rho, n, 1)
    return ComplexSeriesResult(value, 2 * n + 1, 2.0 * bound)


def theta3_d2(z, rho, tol: float = 1e-12) -> ComplexSeriesResult:
    """Second z-derivative of theta, same truncation contract as theta3."""
    rho = _rho_of(rho)
    z = complex(z)
    n, bound = _truncation_index(rho, z.imag, tol / 4.0, weight=2)
    value = -4.0 * theta_weighted_sum(z.real, z.imag, rho, n, 2)
    return ComplexSeriesResult(value, 2 * n + 1, 4.0 * bound)


def _gauss_window(x: float, y: float, t: float, tol: float) -> tuple[int, int, float]:
    """Lattice window [nlo, nhi] for the Gaussian-sum form plus its tail bound."""
    n0 = round(x / math.pi)
    lam = -math.log(tol) + 5.0 if tol > 0 else 40.0
    h = math.ceil(math.sqrt((math.pi / 2.0) ** 2 + math.pi * t * lam) / math.pi) + 1
    while True:
        d0 = math.pi * h - abs(x - math.pi * n0)
        # nearest excluded Gaussian is d0 away; geometric tail in j
        log_bound = (math.log(2.0) - 0.5 * math.log(t)
                     + (y * y - d0 * d0) / (math.pi * t)
                     - math.log1p(-math.exp(-2.0 * d0 / t)))
        if log_bound < math.log(tol):
            return n0 - h, n0 + h, math.exp(min(log_bound, 700.0))
        if h > max(64, int(2.0 * abs(y))):
            raise NonConvergence(
                f"Gaussian-sum window failed to close at t={t!r}, |Im z|={abs(y)!r}")
        h += 1


def theta3_accelerated(z, rho, tol: float = 1e-12) -> ComplexSeriesResult:
    """theta(z; rho) via the Gaussian-sum representation when rho > RHO_SWITCH.

    For rho <= RHO_SWITCH (including rho <= 0) the direct series is already
    short and this delegates to ``theta3``. For rho > RHO_SWITCH the dual form
    t^(-1/2) sum_n exp(-(z - pi n)^2/(pi t)) with t = -ln(rho)/pi needs only a
    handful of terms where the direct series would need hundreds.
    """
    rho = _rho_of(rho)
    if rho <= RHO_SWITCH:
        return theta3(z, rho, tol)
    z = complex(z)
    t = -math.log(rho) / math.pi
    nlo, nhi, bound = _gauss_window(z.real, z.imag, t, tol)
    sr, si, log_scale = gauss_theta_log(z.real, z.imag, t, nlo, nhi)
    scale = math.exp(log_scale - 0.5 * math.log(t))
    return ComplexSeriesResult(complex(sr * scale, si * scale), nhi - nlo + 1, bound)


def theta_nd(z, omega, tol: float = 1e-10) -> ComplexSeriesResult:
    """Lattice theta Theta(z|Omega) = sum_m exp(i pi m.Omega m + 2 i m.z).

    z     : length-d complex vector
    omega : d x d symmetric complex matrix, Im(omega) positive definite

    Truncates to the box max|m_i| <= N with a rigorous shell-sum tail bound.
    Raises PeriodNotConvergent if Im(omega) is not positive definite and
    NonConvergence if the box would exceed the term cap.
    """
    if isinstance(omega, Nome):
        if omega.period_matrix is None:
            raise NomeOutOfRange("lattice theta needs a period matrix")
        omega = omega.period_matrix
    omega = _validate_period_matrix(np.asarray(omega, dtype=complex))
    z = np.asarray(z, dtype=complex).reshape(-1)
    d = omega.shape[0]
    if z.shape[0] != d:
        raise NomeOutOfRange(f"argument length {z.shape[0]} != lattice dimension {d}")
    lam = float(np.linalg.eigvalsh(omega.imag).min())
    b = float(np.linalg.norm(z.imag))
    sd = math.sqrt(d)

    def log_shell(r: int) -> float:
        # <= 2d(2r+1)^(d-1) points on the shell, each bounded via |m|_2 in [r, r sqrt(d)]
        return (math.log(2 * d) + (d - 1) * math.log(2 * r + 1)
                - math.pi * lam * r * r + 2.0 * b * sd * r)

    n_floor = max(1, math.ceil((2.0 * b * sd + d * math.log(3.0)) / (2.0 * math.pi * lam)))
    n = n_floor
    ln_tol = math.log(tol)
    while log_shell(n + 1) + math.log(2.0) >= ln_tol:
        n += 1
        if (2 * n + 1) ** d > 2_000_000:
            raise NonConvergence(
                f"lattice theta box exceeds the term cap at dimension {d}; "
                f"Im(Omega) is too close to singular for tol={tol:g}")
    bound = 2.0 * math.exp(log_shell(n + 1))
    value = complex(lattice_theta_batch(omega.real, omega.imag,
                                        z.real[None, :], z.imag[None, :], n)[0])
    return ComplexSeriesResult(value, (2 * n + 1) ** d, bound)


# ---------------------------------------------------------------------------
# log-domain statistics of theta at real argument z = pi v, real nome e^(-pi t)
#
# These are what the observable formulas actually consume. Everything is
# assembled from manifestly positive pieces so that quantities like
# B = 1 + (pi t / 2) * (theta''/theta - (theta'/theta)^2), which underflows to
# 0 - 0 at small t if formed naively, stay meaningful down to e^(-thousands).
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ThetaLogStats:
    """Stable statistics of theta(pi v; e^(-pi t)) for real v, t > 0.

    log_value : ln theta
    dlog      : theta'/theta (z-derivative at z = pi v)
    log_b     : ln B with B = 1 + (pi t/2) (theta''/theta - (theta'/theta)^2);
                B is positive and can be far below double underflow.
    """

    log_value: float
    dlog: float
    log_b: float


def _logsumexp(a: np.ndarray) -> float:
    m = float(np.max(a))
    return m + math.log(float(np.sum(np.exp(a - m))))


def theta_log_stats(v: float, t: float) -> ThetaLogStats:
    """See ThetaLogStats. Switches representation at t = 1 (rho = e^(-pi))."""
    if not (t > 0.0) or not math.isfinite(t):
        raise NomeOutOfRange(f"need t > 0, got {t!r}")
    v = float(v)
    if t >= 1.0:
        rho = math.exp(-math.pi * t)
        delta = v - round(v)
        z = math.pi * delta
        n, _ = _truncation_index(rho, 0.0, 1e-16, weight=2)
        s0 = theta_weighted_sum(z, 0.0, rho, n, 0).real
        s1 = theta_weighted_sum(z, 0.0, rho, n, 1)
        s2 = theta_weighted_sum(z, 0.0, rho, n, 2).real
        if delta == 0.0 or abs(delta) == 0.5:
            dlog = 0.0                      # theta' vanishes at the even points
        else:
            dlog = -2.0 * s1.imag / s0      # theta' = 2i S1, real z makes it real
        dd = -4.0 * s2 / s0                 # theta''/theta
        b = 1.0 + 0.5 * math.pi * t * (dd - dlog * dlog)
        return ThetaLogStats(math.log(s0), dlog, math.log(b))
    # Gaussian-sum statistics: weights h_m = exp(-(pi/t) (delta - m)^2)
    delta = v - round(v)
    mmax = math.ceil(math.sqrt(800.0 * t / math.pi)) + 2
    m = np.arange(-mmax, mmax + 1, dtype=np.float64)
    e = -(math.pi / t) * (delta - m) ** 2
    emax = float(np.max(e))
    w = np.exp(e - emax)
    # fsum keeps the symmetric cancellations in s1 exact at delta in {0, 1/2}
    s0 = math.fsum(w)
    s1 = math.fsum(w * (m - delta))
    log_value = -0.5 * math.log(t) + emax + math.log(s0)
    dlog = (2.0 / t) * (s1 / s0)
    # pairwise-positive variance of m under h: no cancellation, stays in logs
    ii, jj = np.triu_indices(m.size, k=1)
    pair = e[ii] + e[jj] + 2.0 * np.log(m[jj] - m[ii])
    log_var = _logsumexp(pair) - 2.0 * _logsumexp(e)
    log_b = math.log(2.0 * math.pi / t) + log_var
    return ThetaLogStats(log_value, dlog, log_b)


def log_abs_theta_c(x: float, y: float, t: float) -> float:
    """ln |theta(x + i y; e^(-pi t))| for real x, y and t > 0.

    Returns -inf at a zero of theta. Uses the Gaussian-sum form for t < 1 and
    the direct series for t >= 1; stays in log scale throughout, so large |y|
    does not overflow.
    """
    if not (t > 0.0) or not math.isfinite(t):
        raise NomeOutOfRange(f"need t > 0, got {t!r}")
    if t >= 1.0:
        rho = math.exp(-math.pi * t)
        n, _ = _truncation_index(rho, y, 1e-16, weight=0)
        val = theta_weighted_sum(x, y, rho, n, 0)
        mag = abs(val)
        return math.log(mag) if mag > 0.0 else -math.inf
    nlo, nhi, _ = _gauss_window(x, y, t, 1e-16)
    sr, si, log_scale = gauss_theta_log(x, y, t, nlo, nhi)
    mag = math.hypot(sr, si)
    if mag == 0.0:
        return -math.inf
    return -0.5 * math.log(t) + log_scale + math.log(mag)
