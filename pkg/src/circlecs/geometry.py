"""Circle geometry: period, quasimomentum, and the fiducial Gaussian's scales.

A single frozen object carries everything the closed forms need:

    alpha = a^2 omega / (2 hbar)      dimensionless width parameter
    rho1  = e^(-alpha)                nome of the position-side series
    rho2  = e^(-2 pi^2 / alpha)       nome of the momentum-side series

alpha large means the state is narrow in angle (rho2 near 1), alpha small
means narrow in momentum (rho1 near 1); the two series trade places under the
Gaussian-sum duality in ``theta``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass


@dataclass(frozen=True)
class CircleGeometry:
    """Period a > 0, quasimomentum k, oscillator frequency omega > 0, hbar > 0."""

    a: float
    k: float = 0.0
    omega: float = 1.0
    hbar: float = 1.0

    def __post_init__(self):
        for name in ("a", "omega", "hbar"):
            val = getattr(self, name)
            if not (isinstance(val, (int, float)) and math.isfinite(val) and val > 0):
                raise ValueError(f"{name} must be a positive finite number, got {val!r}")
        if not (isinstance(self.k, (int, float)) and math.isfinite(self.k)):
            raise ValueError(f"k must be a finite real number, got {self.k!r}")
        if not (0.0 <= self.k < 2.0 * math.pi / self.a):
            raise ValueError(
                f"quasimomentum k must lie in [0, 2 pi / a) = [0, {2.0 * math.pi / self.a:g}), "
                f"got {self.k!r}")

    @property
    def alpha(self) -> float:
        return self.a * self.a * self.omega / (2.0 * self.hbar)

    @property
    def rho1(self) -> float:
        return math.exp(-self.alpha)

    @property
    def rho2(self) -> float:
        return math.exp(-2.0 * math.pi * math.pi / self.alpha)

    def omega_n(self, n: int) -> float:
        """Frequency ladder omega_n = 2 pi n / a + k."""
        return 2.0 * math.pi * n / self.a + self.k

    @classmethod
    def from_alpha(cls, alpha: float, a: float = 2.0 * math.pi, k: float = 0.0,
                   hbar: float = 1.0) -> "CircleGeometry":
        """Geometry with the requested alpha, solving for omega."""
        if not (alpha > 0 and math.isfinite(alpha)):
            raise ValueError(f"alpha must be positive and finite, got {alpha!r}")
        return cls(a=a, k=k, omega=2.0 * hbar * alpha / (a * a), hbar=hbar)


@dataclass(frozen=True)
class ReducedCoords:
    """Scaled label coordinates: u = position offset in periods, v = momentum
    offset from the quasimomentum in Brillouin units."""

    u: float
    v: float


def reduced_coords(q: float, p: float, geom: CircleGeometry) -> ReducedCoords:
    """(u, v) = (q/a, a (p - hbar k) / (2 pi hbar))."""
    return ReducedCoords(q / geom.a,
                         geom.a * (p - geom.hbar * geom.k) / (2.0 * math.pi * geom.hbar))
