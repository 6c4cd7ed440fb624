"""Fock-Bargmann picture for the circle: entire-function representatives.

A state phi = {phi_n} maps to the entire function

    (B phi)(z) = sum_n phi_n psi_n(z),
    psi_n(z)   = (4 pi hbar / (a^2 omega))^(1/4) e^(-hbar omega_n^2/(2 omega))
                 e^(i omega_n z / omega),

with z = omega q - i p. The psi_n are orthonormal under the Gaussian-weighted
inner product (1/(2 pi hbar)) int_0^a dq int dp e^(-p^2/(omega hbar)), so B is
an isometry onto its image. Coherent states become elementary: B|z*;k> is a
theta function of z up to a Gaussian factor, and evaluation against the family
member at z recovers the analytic coherent state.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

import numpy as np

from .circle import CircleState, PhasePoint
from .geometry import CircleGeometry
from .quadrature import QuadratureSpec, periodic_trapezoid_nodes, simpson_nodes
from .theta import theta3_accelerated


@dataclass(frozen=True)
class BargmannPoint:
    """Point z = omega q - i p of the Bargmann domain."""

    z: complex

    @classmethod
    def from_label(cls, label: PhasePoint, geom: CircleGeometry) -> "BargmannPoint":
        q = label.q % geom.a
        return cls(complex(geom.omega * q, -label.p))

    def to_label(self, geom: CircleGeometry) -> PhasePoint:
        return PhasePoint((self.z.real / geom.omega) % geom.a, -self.z.imag)


@dataclass(frozen=True)
class FockElement:
    """Entire function sum_n a_n e^(i omega_n z / omega), stored by a_n."""

    coeffs: dict[int, complex]
    geom: CircleGeometry = field(repr=False)

    def evaluate(self, z: complex) -> complex:
        w = self.geom.omega
        acc = 0.0 + 0.0j
        for n, an in self.coeffs.items():
            acc += an * cmath.exp(1j * self.geom.omega_n(n) * z / w)
        return acc


def basis_psi_n(n: int, z: complex, geom: CircleGeometry) -> complex:
    """Image of the basis state |n;k> in the Bargmann picture."""
    a, w, hb = geom.a, geom.omega, geom.hbar
    wn = geom.omega_n(n)
    pref = (4.0 * math.pi * hb / (a * a * w)) ** 0.25
    return pref * cmath.exp(-hb * wn * wn / (2.0 * w) + 1j * wn * z / w)


def analytic_cs(z_star: complex, geom: CircleGeometry, q_prime: float,
                tol: float = 1e-12) -> complex:
    """Coherent-state wavefunction as an entire function of z* = omega q + i p.

    (omega/(pi hbar))^(1/4) e^(-(z* - omega q')^2/(2 omega hbar))
    theta(i a (z* - omega q' - i k hbar)/(2 hbar); rho1)

    Equals e^(-i p z*/(2 omega hbar)) cs_wavefunction(q, p) on the
    fundamental strip 0 <= Re(z*) < omega a, and continues it holomorphically
    off the strip with the shift rule A(z* + omega a) = e^(-i a k) A(z*).
    Evaluating the closed form directly (no label reduction, no phase) is
    what keeps the seam smooth; holomorphy is what makes label interpolation
    and the Kowalski comparison well posed. Grows like e^(Im(z*)^2/(2 omega
    hbar)), so |Im z*| beyond ~38 sqrt(omega hbar) overflows a double.
    """
    w, hb = geom.omega, geom.hbar
    expo = -(z_star - w * q_prime) ** 2 / (2.0 * w * hb)
    zarg = 1j * geom.a * (z_star - w * q_prime - 1j * geom.k * hb) / (2.0 * hb)
    th = theta3_accelerated(zarg, geom.rho1, tol)
    return (w / (math.pi * hb)) ** 0.25 * cmath.exp(expo) * th.value


def b_transform(phi: CircleState, z: complex) -> complex:
    """(B phi)(z) = sum_n phi_n psi_n(z)."""
    acc = 0.0 + 0.0j
    for n, c in phi.coeffs.items():
        acc += c * basis_psi_n(n, z, phi.geom)
    return acc


def fock_element_of(phi: CircleState) -> FockElement:
    """FockElement whose evaluate() equals b_transform(phi, .)."""
    g = phi.geom
    a, w, hb = g.a, g.omega, g.hbar
    pref = (4.0 * math.pi * hb / (a * a * w)) ** 0.25
    out: dict[int, complex] = {}
    for n, c in phi.coeffs.items():
        wn = g.omega_n(n)
        out[n] = c * pref * math.exp(-hb * wn * wn / (2.0 * w))
    return FockElement(out, g)


def b_inverse(psi: FockElement) -> CircleState:
    """Recover the circle state from its Bargmann representative.

    phi_n = a_n (a^2 omega / (4 pi hbar))^(1/4) e^(+hbar omega_n^2/(2 omega)).
    The growing factor mirrors the decay imposed by B; indices far outside
    the band where a_n carries weight (hbar omega_n^2/(2 omega) beyond ~700)
    overflow a double and should simply not be stored in psi.
    """
    g = psi.geom
    a, w, hb = g.a, g.omega, g.hbar
    pref = (a * a * w / (4.0 * math.pi * hb)) ** 0.25
    out: dict[int, complex] = {}
    for n, an in psi.coeffs.items():
        wn = g.omega_n(n)
        out[n] = an * pref * math.exp(hb * wn * wn / (2.0 * w))
    return CircleState(out, g)


def fock_inner(f1: FockElement, f2: FockElement, geom: CircleGeometry,
               quad: QuadratureSpec | None = None) -> complex:
    """Gaussian-weighted inner product of two Bargmann representatives.

    (1/(2 pi hbar)) int_0^a dq int dp e^(-p^2/(omega hbar))
    conj(f1(z)) f2(z), z = omega q - i p, by tensor quadrature. The p-window
    covers the centers hbar (omega_n + omega_m)/2 of every cross term's
    effective Gaussian, widened by p_halfwidth widths.
    """
    quad = quad or QuadratureSpec()
    a, w, hb = geom.a, geom.omega, geom.hbar
    ns = sorted(set(f1.coeffs) | set(f2.coeffs))
    if not ns:
        return 0.0 + 0.0j
    wn = np.array([geom.omega_n(n) for n in ns])
    scale = math.sqrt(w * hb)
    lo = float(hb * wn.min()) - quad.p_halfwidth * scale
    hi = float(hb * wn.max()) + quad.p_halfwidth * scale
    base_width = 2.0 * quad.p_halfwidth * scale
    panels = max(quad.p_points, math.ceil((hi - lo) / base_width * quad.p_points))
    qs, wq = periodic_trapezoid_nodes(a, quad.q_points)
    ps, wp = simpson_nodes(0.5 * (lo + hi), 0.5 * (hi - lo), panels)
    z = w * qs[:, None] - 1j * ps[None, :]
    g1 = np.zeros(z.shape, dtype=np.complex128)
    g2 = np.zeros(z.shape, dtype=np.complex128)
    for n in ns:
        e = np.exp(1j * geom.omega_n(n) * z / w)
        a1 = f1.coeffs.get(n)
        a2 = f2.coeffs.get(n)
        if a1 is not None:
            g1 += a1 * e
        if a2 is not None:
            g2 += a2 * e
    integrand = np.conj(g1) * g2 * np.exp(-ps[None, :] ** 2 / (w * hb))
    total = np.einsum("q,p,qp->", wq, wp, integrand)
    return complex(total / (2.0 * math.pi * hb))
