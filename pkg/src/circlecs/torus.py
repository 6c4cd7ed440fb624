"""Coherent states on the n-torus (n <= 3): closed forms built on the
multidimensional theta function.

Coordinates: a lattice cell is spanned by unit vectors e_i scaled by lengths
a_i. Position-like vectors (q, q', and the label q) are given in lattice
coordinates, q = sum_i q_i e_i with q_i in [0, a_i); momentum-like vectors
(p, k, omega_m) in dual coordinates, p = sum_i p_i eps_i with eps_i . e_j =
delta_ij. Then p . q is the plain componentwise dot product, |dq|^2 = dq^T G
dq and |dp|^2 = dp^T G^-1 dp with G the Gram matrix of the unit vectors, and
the phase-space measure is prod dq_i dp_i (the sqrt(g) Jacobians cancel
between the two factors).

The period matrices

    Omega  = i (omega/(2 pi hbar)) Delta G Delta       (wavefunction side)
    Omega' = i (4 pi hbar/omega) Delta^-1 G^-1 Delta^-1  = -2 Omega^-1

are purely imaginary with positive-definite imaginary part, so every theta
series here converges. At n = 1 everything collapses to the circle module's
formulas, which is tested, not assumed.
"""
from __future__ import annotations

import cmath
import itertools
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DimensionMismatch
from .theta import theta_nd

_TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class LatticeSpec:
    """Cell geometry: rows of unit_vectors are the unit directions e_i,
    lengths are the cell edges a_i along them."""

    unit_vectors: np.ndarray
    lengths: np.ndarray

    def __post_init__(self):
        u = np.asarray(self.unit_vectors, dtype=np.float64)
        ln = np.asarray(self.lengths, dtype=np.float64)
        if u.ndim != 2 or u.shape[0] != u.shape[1]:
            raise ValueError("unit_vectors must be a square matrix of row vectors")
        n = u.shape[0]
        if not 1 <= n <= 3:
            raise ValueError("supported dimensions are 1, 2, 3")
        if ln.shape != (n,):
            raise DimensionMismatch(f"lengths must have shape ({n},)")
        norms = np.linalg.norm(u, axis=1)
        if np.any(np.abs(norms - 1.0) > 1e-12):
            raise ValueError("basis rows must be unit vectors")
        if not np.all(ln > 0.0):
            raise ValueError("cell lengths must be positive")
        if abs(np.linalg.det(u)) < 1e-12:
            raise ValueError("basis vectors are linearly dependent")
        object.__setattr__(self, "unit_vectors", u)
        object.__setattr__(self, "lengths", ln)

    @property
    def dimension(self) -> int:
        return self.unit_vectors.shape[0]

    @property
    def gram(self) -> np.ndarray:
        """G_ij = e_i . e_j."""
        return self.unit_vectors @ self.unit_vectors.T

    @property
    def gram_inv(self) -> np.ndarray:
        return np.linalg.inv(self.gram)

    @property
    def delta(self) -> np.ndarray:
        return np.diag(self.lengths)

    @property
    def dual_vectors(self) -> np.ndarray:
        """Rows eps_i with eps_i . e_j = delta_ij."""
        return np.linalg.inv(self.unit_vectors).T

    @property
    def g(self) -> float:
        """det G, the squared cell-shape Jacobian."""
        return float(np.linalg.det(self.gram))

    @property
    def cell_area(self) -> float:
        """prod a_i (coordinate volume; physical volume is sqrt(g) times it)."""
        return float(np.prod(self.lengths))

    @property
    def volume(self) -> float:
        return math.sqrt(self.g) * self.cell_area


@dataclass(frozen=True)
class TorusGeometry:
    """Torus cell plus quasimomentum sector k (dual coordinates) and scales."""

    lattice: LatticeSpec
    k_vec: np.ndarray
    omega: float = 1.0
    hbar: float = 1.0

    def __post_init__(self):
        k = np.asarray(self.k_vec, dtype=np.float64)
        n = self.lattice.dimension
        if k.shape != (n,):
            raise DimensionMismatch(f"k_vec must have shape ({n},)")
        hi = _TWO_PI / self.lattice.lengths
        if np.any(k < 0.0) or np.any(k >= hi):
            raise ValueError("each k_i must satisfy 0 <= k_i < 2 pi / a_i")
        if not (self.omega > 0.0 and self.hbar > 0.0):
            raise ValueError("omega and hbar must be positive")
        object.__setattr__(self, "k_vec", k)

    @property
    def dimension(self) -> int:
        return self.lattice.dimension

    @property
    def period_matrix(self) -> np.ndarray:
        """Omega = i (omega/(2 pi hbar)) Delta G Delta."""
        d = self.lattice.delta
        return 1j * (self.omega / (_TWO_PI * self.hbar)) * (d @ self.lattice.gram @ d)

    @property
    def period_matrix_dual(self) -> np.ndarray:
        """Omega' = -2 Omega^-1 = i (4 pi hbar/omega) Delta^-1 G^-1 Delta^-1."""
        dinv = np.diag(1.0 / self.lattice.lengths)
        return 1j * (4.0 * math.pi * self.hbar / self.omega) * (
            dinv @ self.lattice.gram_inv @ dinv)

    def omega_vec(self, m) -> np.ndarray:
        """Frequency ladder (dual coordinates): 2 pi m_i / a_i + k_i."""
        m = np.asarray(m, dtype=np.float64)
        return _TWO_PI * m / self.lattice.lengths + self.k_vec


def _as_vec(x, n: int, name: str) -> np.ndarray:
    v = np.asarray(x, dtype=np.float64)
    if v.shape != (n,):
        raise DimensionMismatch(f"{name} must have shape ({n},), got {v.shape}")
    return v


def _reduce_q(q: np.ndarray, geom: TorusGeometry) -> np.ndarray:
    return np.mod(q, geom.lattice.lengths)


def torus_cs_wavefunction(q_vec, p_vec, q_prime, geom: TorusGeometry,
                          tol: float = 1e-10) -> complex:
    """Coherent-state wavefunction at position q_prime (lattice coordinates).

    (omega/(pi hbar))^(n/4) e^(-i p.q/(2 hbar)) e^(i p.q'/hbar)
    e^(-omega |q-q'|^2/(2 hbar))
    Theta(Delta [(hbar k - p) + i omega G (q - q')]/(2 hbar) | Omega)

    The label q is reduced into the cell; q' is not (the value continues
    quasiperiodically off the fundamental cell).
    """
    n = geom.dimension
    q = _reduce_q(_as_vec(q_vec, n, "q_vec"), geom)
    p = _as_vec(p_vec, n, "p_vec")
    qp = _as_vec(q_prime, n, "q_prime")
    w, hb = geom.omega, geom.hbar
    G = geom.lattice.gram
    dq = q - qp
    expo = complex(-w * float(dq @ G @ dq) / (2.0 * hb),
                   -float(p @ q) / (2.0 * hb) + float(p @ qp) / hb)
    z = geom.lattice.lengths * ((geom.hbar * geom.k_vec - p)
                                + 1j * w * (G @ dq)) / (2.0 * hb)
    th = theta_nd(z, geom.period_matrix, tol)
    return (w / (math.pi * hb)) ** (n / 4.0) * cmath.exp(expo) * th.value


def torus_overlap(l1, l2, geom: TorusGeometry, tol: float = 1e-10) -> complex:
    """Overlap <l1|l2> of two torus coherent states; labels are (q, p) pairs.

    (2^n/(sqrt(g) A)) (pi hbar/omega)^(n/2) e^(i k.(q1-q2))
    e^(i(q2.p2 - q1.p1)/(2 hbar))
    e^(-[|hbar k - p2|^2 + |hbar k - p1|^2]/(2 omega hbar))
    Theta(pi Delta^-1 [(q1-q2) + (i/omega) G^-1 (2 hbar k - p1 - p2)] | Omega')

    Omega' has imaginary part growing like 1/omega, so this side converges
    fastest exactly where the Omega series does not: the two closed forms
    cover complementary regimes of the same kernel.
    """
    n = geom.dimension
    q1 = _reduce_q(_as_vec(l1[0], n, "l1.q"), geom)
    p1 = _as_vec(l1[1], n, "l1.p")
    q2 = _reduce_q(_as_vec(l2[0], n, "l2.q"), geom)
    p2 = _as_vec(l2[1], n, "l2.p")
    w, hb = geom.omega, geom.hbar
    gi = geom.lattice.gram_inv
    s1 = hb * geom.k_vec - p1
    s2 = hb * geom.k_vec - p2
    expo = complex(
        -(float(s2 @ gi @ s2) + float(s1 @ gi @ s1)) / (2.0 * w * hb),
        float(geom.k_vec @ (q1 - q2)) + (float(p2 @ q2) - float(p1 @ q1)) / (2.0 * hb))
    z = math.pi / geom.lattice.lengths * (
        (q1 - q2) + (1j / w) * (gi @ (2.0 * hb * geom.k_vec - p1 - p2)))
    th = theta_nd(z, geom.period_matrix_dual, tol)
    lat = geom.lattice
    pref = (2.0 ** n / (math.sqrt(lat.g) * lat.cell_area)) * (math.pi * hb / w) ** (n / 2.0)
    return pref * cmath.exp(expo) * th.value


def torus_norm_sq(q_vec, p_vec, geom: TorusGeometry, tol: float = 1e-10) -> float:
    """Squared norm of the torus coherent state (independent of q).

    (2^n/(sqrt(g) A)) (pi hbar/omega)^(n/2) e^(-|hbar k - p|^2/(omega hbar))
    Theta(i (2 pi/omega) Delta^-1 G^-1 (hbar k - p) | Omega')
    """
    n = geom.dimension
    _as_vec(q_vec, n, "q_vec")
    p = _as_vec(p_vec, n, "p_vec")
    w, hb = geom.omega, geom.hbar
    gi = geom.lattice.gram_inv
    s = hb * geom.k_vec - p
    z = 1j * (_TWO_PI / w) * (gi @ s) / geom.lattice.lengths
    th = theta_nd(z, geom.period_matrix_dual, tol)
    lat = geom.lattice
    pref = (2.0 ** n / (math.sqrt(lat.g) * lat.cell_area)) * (math.pi * hb / w) ** (n / 2.0)
    return pref * math.exp(-float(s @ gi @ s) / (w * hb)) * float(th.value.real)


def _basis_indices(n: int, n_max: int) -> np.ndarray:
    """Lexicographic integer vectors m with |m_i| <= n_max; shape (N, n)."""
    rng = range(-n_max, n_max + 1)
    return np.array(list(itertools.product(rng, repeat=n)), dtype=np.float64)


def _torus_coefficients(ms: np.ndarray, q: np.ndarray, pgrid: np.ndarray,
                        geom: TorusGeometry) -> np.ndarray:
    """c_m(q, p) on a momentum grid: ms (N, n), pgrid (M, n) -> (N, M).

    c_m = sqrt((2 pi hbar)^n / V) e^(i [p.q/(2 hbar) - omega_m.q])
          (pi omega hbar)^(-n/4) e^(-|hbar omega_m - p|^2/(2 omega hbar))

    with V = sqrt(g) A the physical cell volume. These are the expansion
    coefficients over the orthonormal plane waves V^(-1/2) e^(i omega_m . x).
    """
    n = geom.dimension
    w, hb = geom.omega, geom.hbar
    gi = geom.lattice.gram_inv
    wm = _TWO_PI * ms / geom.lattice.lengths + geom.k_vec
    d = hb * wm[:, None, :] - pgrid[None, :, :]
    quad = np.einsum("NMi,ij,NMj->NM", d, gi, d)
    phase = np.exp(1j * ((pgrid @ q)[None, :] / (2.0 * hb) - (wm @ q)[:, None]))
    pref = math.sqrt((_TWO_PI * hb) ** n / geom.lattice.volume) \
        * (math.pi * w * hb) ** (-n / 4.0)
    return pref * phase * np.exp(-quad / (2.0 * w * hb))


def verify_torus_unity(geom: TorusGeometry, n_max: int = 2) -> np.ndarray:
    """Unity matrix over the plane-wave basis with indices |m_i| <= n_max.

    M_{m m'} = (1/(2 pi hbar)^n) int_cell d^n q int d^n p conj(c_m) c_m'
    by tensor quadrature: per-axis periodic trapezoid in q (exact for the
    occurring phases), per-axis Simpson in p on a window covering every
    Gaussian center plus 8 widths. Returns the (2 n_max + 1)^n square matrix.
    """
    if n_max < 1:
        raise ValueError("n_max must be at least 1")
    n = geom.dimension
    w, hb = geom.omega, geom.hbar
    lat = geom.lattice
    ms = _basis_indices(n, n_max)

    evals = np.linalg.eigvalsh(lat.gram)
    # sharpest p-decay direction sets the Simpson step
    sigma = math.sqrt(w * hb * float(evals.min()) / 2.0)
    extra = 8.0 * math.sqrt(w * hb * float(evals.max()))
    q_axes, p_axes = [], []
    from .quadrature import periodic_trapezoid_nodes, simpson_nodes
    for i in range(n):
        a_i = float(lat.lengths[i])
        q_axes.append(periodic_trapezoid_nodes(a_i, max(4 * n_max + 4, 12)))
        c_span = n_max * _TWO_PI * hb / a_i
        center = hb * float(geom.k_vec[i])
        half = c_span + extra
        panels = math.ceil(2.0 * half / (sigma / 3.0))
        p_axes.append(simpson_nodes(center, half, panels))

    def _tensor(axes):
        grids = np.meshgrid(*[a[0] for a in axes], indexing="ij")
        pts = np.stack([g.ravel() for g in grids], axis=-1)
        wgrids = np.meshgrid(*[a[1] for a in axes], indexing="ij")
        wts = np.prod(np.stack([g.ravel() for g in wgrids], axis=-1), axis=-1)
        return pts, wts

    qpts, qwts = _tensor(q_axes)
    ppts, pwts = _tensor(p_axes)
    m = np.zeros((ms.shape[0], ms.shape[0]), dtype=np.complex128)
    for qv, wq in zip(qpts, qwts):
        c = _torus_coefficients(ms, qv, ppts, geom)
        m += wq * ((c.conj() * pwts) @ c.T)
    return m / (_TWO_PI * hb) ** n
