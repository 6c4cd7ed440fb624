"""Coherent states on the circle: wavefunction, basis coefficients, overlap
kernel, norm, and the resolution-of-unity verifier.

The family is labeled by phase points (q, p) on the cylinder (q lives on the
circle of length a, p on the line) and a quasimomentum sector k. States are
kept unnormalized; observables divide by the norm.

Conventions:

    z* = omega q + i p
    omega_n = 2 pi n / a + k                    (frequency ladder)
    basis |n;k> = (1/sqrt(a)) e^(i omega_n q')  (orthonormal on [0, a))

Labels are reduced mod a on entry (the label space is a circle); p is never
reduced. Reduction changes the state only by the phase fixed by that choice
of representative.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

import numpy as np

from .geometry import CircleGeometry
from .quadrature import QuadratureSpec, periodic_trapezoid_nodes, simpson_nodes
from .theta import theta3_accelerated


@dataclass(frozen=True)
class PhasePoint:
    """Coherent-state label (q, p) on the cylinder."""

    q: float
    p: float

    @classmethod
    def reduced(cls, q: float, p: float, a: float) -> "PhasePoint":
        """Label with q reduced into [0, a)."""
        return cls(q % a, p)


@dataclass(frozen=True)
class CircleState:
    """A state in L^2 of the circle, stored by its |n;k> coefficients."""

    coeffs: dict[int, complex]
    geom: CircleGeometry = field(repr=False)

    def norm_sq(self) -> float:
        return float(sum(abs(c) ** 2 for c in self.coeffs.values()))

    def inner(self, other: "CircleState") -> complex:
        """<self|other> = sum conj(self_n) other_n."""
        keys = self.coeffs.keys() & other.coeffs.keys()
        return complex(sum(self.coeffs[n].conjugate() * other.coeffs[n] for n in keys))

    def evaluate(self, q_prime: float) -> complex:
        """Pointwise value sum_n c_n (1/sqrt(a)) e^(i omega_n q')."""
        a = self.geom.a
        acc = 0.0 + 0.0j
        for n, c in self.coeffs.items():
            w = self.geom.omega_n(n)
            acc += c * complex(math.cos(w * q_prime), math.sin(w * q_prime))
        return acc / math.sqrt(a)


def cs_wavefunction(label: PhasePoint, q_prime: float, geom: CircleGeometry,
                    tol: float = 1e-12) -> complex:
    """Coherent-state wavefunction at position q_prime.

    Closed form: (omega/pi hbar)^(1/4) e^(i p z*/(2 omega hbar))
    e^(-(z* - omega q')^2/(2 omega hbar)) theta(i a (z* - omega q' - i k hbar)
    / (2 hbar); rho1), evaluated with the representation switch of
    theta3_accelerated (rho1 -> 1 as alpha -> 0).
    """
    q = label.q % geom.a
    p = label.p
    w, hb = geom.omega, geom.hbar
    zs = w * q + 1j * p
    # the two exponentials are combined: separately they can overflow at
    # large |p| even though the product is bounded
    expo = 1j * p * zs / (2.0 * w * hb) - (zs - w * q_prime) ** 2 / (2.0 * w * hb)
    zarg = 1j * geom.a * (zs - w * q_prime - 1j * geom.k * hb) / (2.0 * hb)
    th = theta3_accelerated(zarg, geom.rho1, tol)
    return (w / (math.pi * hb)) ** 0.25 * cmath.exp(expo) * th.value


def _coeff_grid(ns: np.ndarray, q: float, p, geom: CircleGeometry) -> np.ndarray:
    """Coefficients c_n(q, p) on a grid: shape (len(ns),) + shape(p)."""
    w, hb, a = geom.omega, geom.hbar, geom.a
    p = np.asarray(p, dtype=np.float64)
    omega_n = (2.0 * math.pi / a) * np.asarray(ns, dtype=np.float64) + geom.k
    omega_n = omega_n.reshape((-1,) + (1,) * p.ndim)
    amp = (math.pi * w * hb) ** -0.25 * np.exp(-((hb * omega_n - p) ** 2) / (2.0 * w * hb))
    phase = np.exp(1j * (p / (2.0 * hb) - omega_n) * q)
    return math.sqrt(2.0 * math.pi * hb / a) * phase * amp


def default_n_range(label: PhasePoint, geom: CircleGeometry) -> tuple[int, int]:
    """Symmetric index window holding all but < 1e-16 of the coefficient mass.

    Centered where the coefficient Gaussian peaks; the halfwidth covers six of
    its widths plus slack, so the omitted |c_n|^2 tail is ~e^(-36) of the norm.
    """
    v = geom.a * (label.p - geom.hbar * geom.k) / (2.0 * math.pi * geom.hbar)
    n0 = round(v)
    half = math.ceil(6.0 * math.sqrt(geom.omega * geom.hbar) * geom.a
                     / (2.0 * math.pi * geom.hbar)) + 4
    return n0 - half, n0 + half


def cs_coefficients(label: PhasePoint, geom: CircleGeometry,
                    n_range: tuple[int, int] | None = None) -> CircleState:
    """Expansion of |q,p;k> over the |n;k> basis.

    c_n = sqrt(2 pi hbar / a) e^(i [p/(2 hbar) - omega_n] q)
          (pi omega hbar)^(-1/4) e^(-(hbar omega_n - p)^2/(2 omega hbar))

    n_range defaults to default_n_range (tail below 1e-16 of the norm).
    """
    q = label.q % geom.a
    if n_range is None:
        n_range = default_n_range(label, geom)
    nlo, nhi = n_range
    ns = np.arange(nlo, nhi + 1)
    vals = _coeff_grid(ns, q, np.float64(label.p), geom)
    return CircleState({int(n): complex(c) for n, c in zip(ns, vals)}, geom)


def cs_overlap(l1: PhasePoint, l2: PhasePoint, geom: CircleGeometry,
               tol: float = 1e-12) -> complex:
    """Overlap <l1|l2> of two coherent states (l1 is the bra).

    Closed form: with (q', p') the bra label and (q, p) the ket label,

        (2/a) sqrt(pi hbar/omega) e^(i k (q'-q)) e^(i(q p - q' p')/(2 hbar))
        e^(-[(hbar k - p)^2 + (hbar k - p')^2]/(2 omega hbar))
        theta((pi/a) [(q'-q) + (i/omega)(2 hbar k - p - p')]; rho2)

    The theta always routes through theta3_accelerated: rho2 -> 1 as
    alpha -> infinity, exactly where the direct series stalls.
    """
    a, w, hb, k = geom.a, geom.omega, geom.hbar, geom.k
    q1, p1 = l1.q % a, l1.p
    q2, p2 = l2.q % a, l2.p
    expo = (1j * k * (q1 - q2)
            + 1j * (q2 * p2 - q1 * p1) / (2.0 * hb)
            - ((hb * k - p2) ** 2 + (hb * k - p1) ** 2) / (2.0 * w * hb))
    zarg = (math.pi / a) * ((q1 - q2) + 1j * (2.0 * hb * k - p1 - p2) / w)
    th = theta3_accelerated(zarg, geom.rho2, tol)
    pref = (2.0 / a) * math.sqrt(math.pi * hb / w)
    return pref * cmath.exp(expo) * th.value


def cs_norm_sq(label: PhasePoint, geom: CircleGeometry, tol: float = 1e-12) -> float:
    """Squared norm <label|label> = theta(a (hbar k - p)/(2 hbar); sqrt(rho1)).

    Strictly positive; equals the diagonal of cs_overlap through the theta
    functional equation (the two forms live at dual nomes).
    """
    z = geom.a * (geom.hbar * geom.k - label.p) / (2.0 * geom.hbar)
    rho = math.exp(-0.5 * geom.alpha)
    th = theta3_accelerated(z, rho, tol)
    return float(th.value.real)


def verify_resolution_of_unity(geom: CircleGeometry, n_max: int = 5,
                               quad: QuadratureSpec | None = None) -> np.ndarray:
    """Unity matrix M_nm = (1/2 pi hbar) int dq int dp conj(c_n) c_m.

    Returns the (2 n_max + 1)-square complex matrix; the resolution of unity
    says it approximates the identity. The q-integral is a periodic trapezoid
    (exact for the e^(2 pi i (m-n) q / a) phases), the p-integral a composite
    Simpson window covering every pair's product-Gaussian center plus
    p_halfwidth widths on each side; node spacing matches the single-window
    default so accuracy does not degrade with n_max.
    """
    if n_max < 2:
        raise ValueError("n_max must be at least 2")
    quad = quad or QuadratureSpec()
    a, hb, w = geom.a, geom.hbar, geom.omega
    ns = np.arange(-n_max, n_max + 1)
    qs, wq = periodic_trapezoid_nodes(a, quad.q_points)
    scale = math.sqrt(w * hb)
    centers = hb * ((2.0 * math.pi / a) * ns + geom.k)
    lo = float(centers.min()) - quad.p_halfwidth * scale
    hi = float(centers.max()) + quad.p_halfwidth * scale
    base_width = 2.0 * quad.p_halfwidth * scale
    panels = max(quad.p_points, math.ceil((hi - lo) / base_width * quad.p_points))
    ps, wp = simpson_nodes(0.5 * (lo + hi), 0.5 * (hi - lo), panels)
    m = np.zeros((ns.size, ns.size), dtype=np.complex128)
    for qi, wqi in zip(qs, wq):
        c = _coeff_grid(ns, float(qi), ps, geom)
        m += wqi * ((c.conj() * wp) @ c.T)
    return m / (2.0 * math.pi * hb)
