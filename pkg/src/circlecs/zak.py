"""Lattice-sum transform between line wavefunctions and quasiperiodic circle
wavefunctions, and its inverse.

Forward:   (T psi)(q, k) = sum_n e^(i n a k) psi(q - n a)
Inverse:   psi(q - n a)  = (a / 2 pi) int_0^(2 pi / a) dk e^(-i n a k) (T psi)(q, k)

The forward image is quasiperiodic: (T psi)(q + n a, k) = e^(i n a k)
(T psi)(q, k), and periodic in k with period 2 pi / a. The inverse k-integral
runs over exactly one such period, so the periodic trapezoid rule is
spectrally accurate (exact once the node count exceeds the contributing
lattice range).
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional

from .errors import SlowDecay
from .geometry import CircleGeometry

_TERM_CAP = 10_000


@dataclass(frozen=True)
class LineFunction:
    """A wavefunction on the line.

    f            : complex-valued callable of one real argument
    support_hint : optional radius R; |f(x)| is treated as negligible for
                   |x| > R and the lattice sum is truncated accordingly.
                   Without a hint the sum grows its window adaptively.
    """

    f: Callable[[float], complex]
    support_hint: Optional[float] = None


def wbz_forward(psi: LineFunction, q: float, k: float, geom: CircleGeometry,
                tol: float = 1e-12) -> complex:
    """sum_n e^(i n a k) psi(q - n a) for q in [0, a).

    With a support hint R the sum covers |n| <= ceil((R + a)/a). Without one,
    the window doubles until two consecutive doublings change the partial sum
    by less than tol; functions decaying only polynomially exhaust the term
    cap and raise SlowDecay.
    """
    a = geom.a
    if psi.support_hint is not None:
        nmax = math.ceil((abs(psi.support_hint) + a) / a)
        return _phase_sum(psi.f, q, k, a, -nmax, nmax)
    total = _phase_sum(psi.f, q, k, a, -1, 1)
    stable = 0
    half = 1
    while 2 * half + 1 <= _TERM_CAP:
        prev = total
        new_half = half * 2
        # add only the freshly uncovered lattice points
        total += _phase_sum(psi.f, q, k, a, -new_half, -half - 1)
        total += _phase_sum(psi.f, q, k, a, half + 1, new_half)
        half = new_half
        if abs(total - prev) < tol:
            stable += 1
            if stable >= 2:
                return total
        else:
            stable = 0
    raise SlowDecay(
        f"lattice sum did not settle within {_TERM_CAP} terms; "
        f"the line function decays too slowly for tol={tol:g}")


def _phase_sum(f, q, k, a, nlo, nhi):
    acc = 0.0 + 0.0j
    for n in range(nlo, nhi + 1):
        acc += complex(math.cos(n * a * k), math.sin(n * a * k)) * f(q - n * a)
    return acc


def wbz_inverse(transform: Callable[[float, float], complex], q: float, n: int,
                geom: CircleGeometry, k_points: int = 256) -> complex:
    """Recover psi(q - n a) from the transform by the inverse k-integral.

    transform : callable (q, k) -> complex, quasiperiodic in its arguments
    k_points  : periodic trapezoid node count over one Brillouin period;
                exact once k_points exceeds the lattice range contributing
                to the transform at this q (Gaussian inputs need far fewer
                than the 256 default)
    """
    a = geom.a
    dk = (2.0 * math.pi / a) / k_points
    acc = 0.0 + 0.0j
    for j in range(k_points):
        kj = j * dk
        acc += complex(math.cos(n * a * kj), -math.sin(n * a * kj)) * transform(q, kj)
    return acc / k_points
