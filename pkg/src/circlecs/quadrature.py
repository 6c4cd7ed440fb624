"""Phase-space quadrature over the cylinder (one period in q, a Gaussian
window in p).

The q-integrand of every overlap-type quantity is a trigonometric polynomial
in q with period a, so the periodic trapezoid rule is exact once the node
count exceeds the bandwidth. The p-integrands are Gaussians times phases;
composite Simpson on a window of several Gaussian widths is superconvergent
there (aliasing error ~ e^(-2 pi^2 sigma^2 / h^2)), which is why the defaults
look so modest.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .geometry import CircleGeometry


@dataclass(frozen=True)
class QuadratureSpec:
    """Cylinder quadrature parameters.

    q_points    : periodic trapezoid node count over [0, a)
    p_points    : Simpson panel count (rounded up to even; nodes = panels + 1)
    p_halfwidth : momentum window half-width in units of sqrt(omega hbar)
    """

    q_points: int = 128
    p_points: int = 512
    p_halfwidth: float = 8.0

    def __post_init__(self):
        if self.q_points < 8:
            raise ValueError("q_points must be at least 8")
        if self.p_points < 16:
            raise ValueError("p_points must be at least 16")
        if not (self.p_halfwidth >= 4):
            raise ValueError("p_halfwidth must be at least 4 (shorter windows "
                             "visibly truncate the Gaussian integrands)")


def periodic_trapezoid_nodes(period: float, n: int):
    """Nodes and weights for the trapezoid rule on [0, period) (no endpoint
    duplication; exact for trig polynomials of bandwidth < n)."""
    x = np.arange(n, dtype=np.float64) * (period / n)
    w = np.full(n, period / n)
    return x, w


def simpson_nodes(center: float, halfwidth: float, panels: int):
    """Composite Simpson nodes and weights on [center - h, center + h]."""
    panels = int(panels)
    if panels % 2 == 1:
        panels += 1
    x = np.linspace(center - halfwidth, center + halfwidth, panels + 1)
    step = (2.0 * halfwidth) / panels
    w = np.full(panels + 1, 2.0 * step / 3.0)
    w[1::2] = 4.0 * step / 3.0
    w[0] = w[-1] = step / 3.0
    return x, w


def integrate_cylinder(f, geom: CircleGeometry, quad: QuadratureSpec | None = None,
                       p_center: float | None = None) -> complex:
    """(1 / 2 pi hbar) * int_0^a dq int dp f(q, p).

    f must accept broadcasting arrays (Q of shape (nq, 1), P of shape (1, np))
    and return the integrand on the grid. The p window is centered at p_center
    (default hbar k) with half-width p_halfwidth * sqrt(omega hbar).
    """
    quad = quad or QuadratureSpec()
    if p_center is None:
        p_center = geom.hbar * geom.k
    q, wq = periodic_trapezoid_nodes(geom.a, quad.q_points)
    scale = math.sqrt(geom.omega * geom.hbar)
    p, wp = simpson_nodes(p_center, quad.p_halfwidth * scale, quad.p_points)
    vals = np.asarray(f(q[:, None], p[None, :]))
    total = np.einsum("i,ij,j->", wq, vals, wp)
    return complex(total / (2.0 * math.pi * geom.hbar))
