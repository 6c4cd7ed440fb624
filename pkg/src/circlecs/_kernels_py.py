"""Pure-NumPy kernels: reference implementations of the series inner loops.

Each function here has a compiled twin in ``_theta_kernels`` (Cython) with an
identical signature; ``_backend`` picks whichever is importable. Keep the two
in exact algebraic lockstep: the (+n, -n) pairing below is load-bearing, it
makes the odd sums cancel exactly at symmetric arguments instead of to
round-off.
"""
from __future__ import annotations

import math

import numpy as np


def theta_weighted_sum_batch(zr, zi, rho, nmax, weight):
    """sum_{n=-N..N} n^w rho^(n^2) e^(2 i n z) at each z = zr + i*zi.

    zr, zi : float arrays of equal shape
    rho    : real nome, |rho| < 1 enforced by the caller
    nmax   : N, the symmetric truncation index (>= 0)
    weight : w in {0, 1, 2}

    Returns a complex array shaped like zr.
    """
    zr = np.asarray(zr, dtype=np.float64)
    zi = np.asarray(zi, dtype=np.float64)
    out = np.zeros(zr.shape, dtype=np.complex128)
    if weight == 0:
        out += 1.0  # n = 0 term; zero for weight >= 1
    if nmax <= 0:
        return out
    n = np.arange(1, nmax + 1, dtype=np.float64)
    ln_abs = math.log(abs(rho)) if rho != 0.0 else -math.inf
    # sign of rho^(n^2): n^2 has the parity of n
    sign = np.where((np.arange(1, nmax + 1) % 2 == 1) & (rho < 0.0), -1.0, 1.0)
    # broadcast: axis -1 runs over n
    e_base = (n * n) * ln_abs
    p = sign * np.exp(e_base - 2.0 * np.multiply.outer(zi, n))  # +n magnitude
    m = sign * np.exp(e_base + 2.0 * np.multiply.outer(zi, n))  # -n magnitude
    c = np.cos(2.0 * np.multiply.outer(zr, n))
    s = np.sin(2.0 * np.multiply.outer(zr, n))
    if weight == 0:
        re = (p + m) * c
        im = (p - m) * s
    elif weight == 1:
        re = n * ((p - m) * c)
        im = n * ((p + m) * s)
    elif weight == 2:
        re = (n * n) * ((p + m) * c)
        im = (n * n) * ((p - m) * s)
    else:
        raise ValueError("weight must be 0, 1 or 2")
    out += re.sum(axis=-1) + 1j * im.sum(axis=-1)
    return out


def theta_weighted_sum(zr, zi, rho, nmax, weight):
    """Scalar convenience wrapper around theta_weighted_sum_batch."""
    return complex(theta_weighted_sum_batch(np.float64(zr), np.float64(zi), rho, nmax, weight))


def gauss_theta_log(zr, zi, t, nlo, nhi):
    """Max-shifted Gaussian lattice sum sum_{n=nlo..nhi} e^(-(z - pi n)^2/(pi t)).

    Returns (sr, si, log_scale) with the sum equal to (sr + i si) * e^log_scale.
    The caller supplies the window [nlo, nhi] and the t^(-1/2) prefactor.
    """
    n = np.arange(nlo, nhi + 1, dtype=np.float64)
    x = zr - math.pi * n
    inv = 1.0 / (math.pi * t)
    e = (zi * zi - x * x) * inv
    ph = -2.0 * zi * x * inv
    emax = float(np.max(e))
    w = np.exp(e - emax)
    sr = float(np.sum(w * np.cos(ph)))
    si = float(np.sum(w * np.sin(ph)))
    return sr, si, emax


def lattice_theta_batch(om_re, om_im, zr, zi, nmax):
    """n-dim theta box sum at many points.

    om_re, om_im : (d, d) real/imag parts of the period matrix Omega
    zr, zi       : (npts, d) real/imag parts of the arguments
    nmax         : box truncation, lattice vectors with max|m_i| <= nmax

    Returns (npts,) complex values of
    sum_m exp(i pi m.Omega m + 2 i m.z).
    """
    om_re = np.asarray(om_re, dtype=np.float64)
    om_im = np.asarray(om_im, dtype=np.float64)
    zr = np.atleast_2d(np.asarray(zr, dtype=np.float64))
    zi = np.atleast_2d(np.asarray(zi, dtype=np.float64))
    d = om_re.shape[0]
    rng = np.arange(-nmax, nmax + 1)
    grids = np.meshgrid(*([rng] * d), indexing="ij")
    mvec = np.stack([g.ravel() for g in grids], axis=1).astype(np.float64)  # (M, d)
    quad_re = -math.pi * np.einsum("md,de,me->m", mvec, om_im, mvec)
    quad_im = math.pi * np.einsum("md,de,me->m", mvec, om_re, mvec)
    npts = zr.shape[0]
    out = np.zeros(npts, dtype=np.complex128)
    # chunk points to bound the (M, chunk) temporaries
    chunk = max(1, int(4_000_000 // max(1, mvec.shape[0])))
    for lo in range(0, npts, chunk):
        hi = min(npts, lo + chunk)
        cross_re = -2.0 * (mvec @ zi[lo:hi].T)  # (M, c)
        cross_im = 2.0 * (mvec @ zr[lo:hi].T)
        term = np.exp((quad_re[:, None] + cross_re) + 1j * (quad_im[:, None] + cross_im))
        out[lo:hi] = term.sum(axis=0)
    return out
