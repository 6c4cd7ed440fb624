# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled twins of the kernels in ``_kernels_py``.

Same signatures, same pairing structure (see the fallback module's docstring
for why the (+n, -n) pairing must not be refactored away).
"""
from libc.math cimport cos, sin, exp, log, fabs, INFINITY, M_PI

import numpy as np


cdef inline void _theta_scalar(double x, double y, double rho, int nmax,
                               int weight, double *outr, double *outi) noexcept nogil:
    cdef double lnr, sr, si, eb, sign, p, m, c, s, nn
    cdef int n
    if rho == 0.0:
        lnr = -INFINITY
    else:
        lnr = log(fabs(rho))
    sr = 1.0 if weight == 0 else 0.0
    si = 0.0
    for n in range(1, nmax + 1):
        nn = n
        eb = nn * nn * lnr
        sign = -1.0 if (rho < 0.0 and (n & 1)) else 1.0
        p = sign * exp(eb - 2.0 * nn * y)
        m = sign * exp(eb + 2.0 * nn * y)
        c = cos(2.0 * nn * x)
        s = sin(2.0 * nn * x)
        if weight == 0:
            sr += (p + m) * c
            si += (p - m) * s
        elif weight == 1:
            sr += nn * ((p - m) * c)
            si += nn * ((p + m) * s)
        else:
            sr += nn * nn * ((p + m) * c)
            si += nn * nn * ((p - m) * s)
    outr[0] = sr
    outi[0] = si


def theta_weighted_sum_batch(zr, zi, double rho, int nmax, int weight):
    """See _kernels_py.theta_weighted_sum_batch."""
    if weight not in (0, 1, 2):
        raise ValueError("weight must be 0, 1 or 2")
    zr_a = np.ascontiguousarray(np.asarray(zr, dtype=np.float64))
    zi_a = np.ascontiguousarray(np.asarray(zi, dtype=np.float64))
    shape = zr_a.shape
    cdef double[::1] x = zr_a.ravel()
    cdef double[::1] y = zi_a.ravel()
    cdef Py_ssize_t npts = x.shape[0]
    out = np.empty(npts, dtype=np.complex128)
    cdef double[::1] outr = np.empty(npts, dtype=np.float64)
    cdef double[::1] outi = np.empty(npts, dtype=np.float64)
    cdef Py_ssize_t i
    with nogil:
        for i in range(npts):
            _theta_scalar(x[i], y[i], rho, nmax, weight, &outr[i], &outi[i])
    out.real = outr
    out.imag = outi
    return out.reshape(shape)


def theta_weighted_sum(zr, zi, double rho, int nmax, int weight):
    """Scalar convenience wrapper around theta_weighted_sum_batch."""
    if weight not in (0, 1, 2):
        raise ValueError("weight must be 0, 1 or 2")
    cdef double outr = 0.0, outi = 0.0
    _theta_scalar(zr, zi, rho, nmax, weight, &outr, &outi)
    return complex(outr, outi)


def gauss_theta_log(double zr, double zi, double t, long nlo, long nhi):
    """See _kernels_py.gauss_theta_log."""
    cdef double inv = 1.0 / (M_PI * t)
    cdef double emax = -INFINITY
    cdef double x, e, ph, w, sr = 0.0, si = 0.0
    cdef long n
    for n in range(nlo, nhi + 1):
        x = zr - M_PI * n
        e = (zi * zi - x * x) * inv
        if e > emax:
            emax = e
    for n in range(nlo, nhi + 1):
        x = zr - M_PI * n
        e = (zi * zi - x * x) * inv
        ph = -2.0 * zi * x * inv
        w = exp(e - emax)
        sr += w * cos(ph)
        si += w * sin(ph)
    return sr, si, emax


def lattice_theta_batch(om_re, om_im, zr, zi, int nmax):
    """See _kernels_py.lattice_theta_batch."""
    om_re_a = np.ascontiguousarray(om_re, dtype=np.float64)
    om_im_a = np.ascontiguousarray(om_im, dtype=np.float64)
    zr_a = np.ascontiguousarray(np.atleast_2d(np.asarray(zr, dtype=np.float64)))
    zi_a = np.ascontiguousarray(np.atleast_2d(np.asarray(zi, dtype=np.float64)))
    cdef Py_ssize_t d = om_re_a.shape[0]
    rng = np.arange(-nmax, nmax + 1)
    grids = np.meshgrid(*([rng] * int(d)), indexing="ij")
    mvec_a = np.ascontiguousarray(
        np.stack([g.ravel() for g in grids], axis=1).astype(np.float64))
    quad_re_a = -np.pi * np.einsum("md,de,me->m", mvec_a, om_im_a, mvec_a)
    quad_im_a = np.pi * np.einsum("md,de,me->m", mvec_a, om_re_a, mvec_a)

    cdef double[:, ::1] mv = mvec_a
    cdef double[::1] qre = np.ascontiguousarray(quad_re_a)
    cdef double[::1] qim = np.ascontiguousarray(quad_im_a)
    cdef double[:, ::1] xr = zr_a
    cdef double[:, ::1] xi = zi_a
    cdef Py_ssize_t npts = zr_a.shape[0]
    cdef Py_ssize_t nterms = mvec_a.shape[0]
    cdef double[::1] outr = np.zeros(npts, dtype=np.float64)
    cdef double[::1] outi = np.zeros(npts, dtype=np.float64)
    cdef Py_ssize_t i, m, j
    cdef double cr, ci, w
    with nogil:
        for i in range(npts):
            for m in range(nterms):
                cr = qre[m]
                ci = qim[m]
                for j in range(d):
                    cr -= 2.0 * mv[m, j] * xi[i, j]
                    ci += 2.0 * mv[m, j] * xr[i, j]
                w = exp(cr)
                outr[i] += w * cos(ci)
                outi[i] += w * sin(ci)
    out = np.empty(npts, dtype=np.complex128)
    out.real = outr
    out.imag = outi
    return out
