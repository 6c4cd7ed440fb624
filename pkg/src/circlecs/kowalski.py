"""Bridge to the Kowalski-Rembielinski circle states.

That family is labeled by a single complex number xi = e^(-l + i phi) and
comes in two sectors: boson (integer ladder) and fermion (half-integer
ladder). Its expansion coefficients over the frequency ladder are

    kappa_j = xi^(-j) e^(-j^2 / 2),    j = n + 0 or n + 1/2.

For non-integer j the power means e^(-j ln xi) with ln xi = -l + i phi, which
is how the coefficients are evaluated here (no complex powers, no branch
ambiguity).

equivalence_check compares these against the analytic coherent-state
coefficients of this package at a = 2 pi, hbar = 1, q = phi, p = l omega,
with the sector selecting k = 0 or k = 1/2. At omega = 1 the ratio is the
same constant pi^(-1/4) for every j; any other omega leaves a residual
e^(j^2 (1 - 1/omega)/2) dependence, so constancy is a sharp fingerprint of
the correspondence rather than a normalization coincidence.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from .circle import PhasePoint, cs_coefficients
from .errors import SectorMismatch
from .geometry import CircleGeometry

_SECTOR_K = {"boson": 0.0, "fermion": 0.5}
_TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class KowalskiLabel:
    """Label (l, phi) with phi reduced into [0, 2 pi); xi = e^(-l + i phi)."""

    l: float
    phi: float
    sector: str = "boson"

    def __post_init__(self):
        if self.sector not in _SECTOR_K:
            raise SectorMismatch(f"unknown sector {self.sector!r}; "
                                 "expected 'boson' or 'fermion'")
        if not math.isfinite(self.l) or not math.isfinite(self.phi):
            raise ValueError("label components must be finite")
        object.__setattr__(self, "phi", self.phi % _TWO_PI)

    @property
    def xi(self) -> complex:
        return cmath.exp(complex(-self.l, self.phi))


def _ladder(label: KowalskiLabel, j_range: tuple[float, float] | None) -> list[float]:
    off = _SECTOR_K[label.sector]
    if j_range is None:
        center = round(label.l - off) + off
        return [center + d for d in range(-12, 13)]
    lo, hi = j_range
    if abs((lo - off) - round(lo - off)) > 1e-9:
        raise SectorMismatch(
            f"j_range start {lo} is not on the {label.sector} ladder")
    count = int(round(hi - lo))
    return [lo + d for d in range(count + 1)]


def kowalski_coefficients(label: KowalskiLabel,
                          j_range: tuple[float, float] | None = None
                          ) -> dict[float, complex]:
    """Coefficients kappa_j = e^(j l - j^2/2) e^(-i j phi) over the ladder.

    Default window: 12 steps either side of the peak j ~ l, which keeps the
    relative tail below e^(-72).
    """
    out: dict[float, complex] = {}
    for j in _ladder(label, j_range):
        out[j] = cmath.exp(complex(j * label.l - 0.5 * j * j, -j * label.phi))
    return out


@dataclass(frozen=True)
class EquivalenceReport:
    """Result of comparing the two coefficient families."""

    sector: str
    omega: float
    fitted_constant: complex
    expected_constant: float
    max_rel_dev: float
    n_compared: int
    ratios: dict[float, complex]


def equivalence_check(label: KowalskiLabel, omega: float = 1.0,
                      k: float | None = None) -> EquivalenceReport:
    """Ratio test c~_n / kappa_j with j = n + k, at q = phi, p = l omega.

    c~_n are the analytic coherent-state coefficients, i.e. cs_coefficients
    times the label phase e^(-i p z*/(2 omega hbar)); without that factor the
    ratio would drag a label-dependent modulus along. If k is passed it must
    match the sector (0 for boson, 1/2 for fermion), otherwise
    SectorMismatch. The fitted constant is the ratio at the peak coefficient;
    expected_constant is pi^(-1/4), attained exactly when omega = 1.
    """
    sector_k = _SECTOR_K[label.sector]
    if k is not None and k != sector_k:
        raise SectorMismatch(
            f"sector {label.sector!r} lives at k = {sector_k}, got k = {k}")
    geom = CircleGeometry(a=_TWO_PI, k=sector_k, omega=omega, hbar=1.0)
    q, p = label.phi, label.l * omega
    state = cs_coefficients(PhasePoint.reduced(q, p, geom.a), geom)
    zs = omega * (q % geom.a) + 1j * p
    phase = cmath.exp(-1j * p * zs / (2.0 * omega))
    ratios: dict[float, complex] = {}
    for n, cn in sorted(state.coeffs.items()):
        j = n + sector_k
        kap = cmath.exp(complex(j * label.l - 0.5 * j * j, -j * label.phi))
        ct = phase * cn
        if abs(kap) > 1e-250 and abs(ct) > 1e-250:
            ratios[j] = ct / kap
    if not ratios:
        raise SectorMismatch("no overlapping ladder support to compare")
    j_fit = min(ratios, key=lambda j: (abs(j - label.l), j))
    fitted = ratios[j_fit]
    max_rel = max(abs(r - fitted) / abs(fitted) for r in ratios.values())
    return EquivalenceReport(sector=label.sector, omega=omega,
                             fitted_constant=fitted,
                             expected_constant=math.pi ** -0.25,
                             max_rel_dev=max_rel, n_compared=len(ratios),
                             ratios=ratios)
