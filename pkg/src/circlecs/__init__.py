"""Coherent states on the circle and n-torus.

Numerics for the theta-function family of circle coherent states: stable
theta evaluation across the full nome range, wavefunctions / overlaps /
norms in closed form, position and momentum observables with the
angle-momentum uncertainty measure, the Weil-Brezin-Zak transform, the
Fock-Bargmann picture, torus generalizations, and a bridge to the
Kowalski-Rembielinski family.
"""
from ._backend import BACKEND
from .bargmann import BargmannPoint, FockElement, analytic_cs, b_inverse, \
    b_transform, basis_psi_n, fock_element_of, fock_inner
from .circle import CircleState, PhasePoint, cs_coefficients, cs_norm_sq, \
    cs_overlap, cs_wavefunction, default_n_range, verify_resolution_of_unity
from .errors import CircleCSError, DimensionMismatch, NomeOutOfRange, \
    NonConvergence, PeriodNotConvergent, SectorMismatch, SlowDecay
from .geometry import CircleGeometry, ReducedCoords, reduced_coords
from .kowalski import EquivalenceReport, KowalskiLabel, equivalence_check, \
    kowalski_coefficients
from .observables import UncertaintyReport, angle_sweep, density_sweep, \
    expect_angle, expect_momentum, expect_momentum_sq, log_abs_expect_angle, \
    momentum_sweep, probability_density, uncertainty_report, uncertainty_sweep
from .quadrature import QuadratureSpec, integrate_cylinder, \
    periodic_trapezoid_nodes, simpson_nodes
from .theta import ComplexSeriesResult, Nome, ThetaLogStats, log_abs_theta_c, \
    theta3, theta3_accelerated, theta3_d1, theta3_d2, theta_log_stats, theta_nd
from .torus import LatticeSpec, TorusGeometry, torus_cs_wavefunction, \
    torus_norm_sq, torus_overlap, verify_torus_unity
from .zak import LineFunction, wbz_forward, wbz_inverse

__version__ = "0.1.0"

__all__ = [
    "BACKEND", "BargmannPoint", "CircleCSError", "CircleGeometry",
    "CircleState", "ComplexSeriesResult", "DimensionMismatch",
    "EquivalenceReport", "FockElement", "KowalskiLabel", "LatticeSpec",
    "LineFunction", "Nome", "NomeOutOfRange", "NonConvergence",
    "PeriodNotConvergent", "PhasePoint", "QuadratureSpec", "ReducedCoords",
    "SectorMismatch", "SlowDecay", "ThetaLogStats", "TorusGeometry",
    "UncertaintyReport", "analytic_cs", "angle_sweep", "b_inverse",
    "b_transform", "basis_psi_n", "cs_coefficients", "cs_norm_sq",
    "cs_overlap", "cs_wavefunction", "default_n_range", "density_sweep",
    "equivalence_check", "expect_angle", "expect_momentum",
    "expect_momentum_sq", "fock_element_of", "fock_inner",
    "integrate_cylinder", "kowalski_coefficients", "log_abs_expect_angle",
    "log_abs_theta_c", "momentum_sweep", "periodic_trapezoid_nodes",
    "probability_density", "reduced_coords", "simpson_nodes", "theta3",
    "theta3_accelerated", "theta3_d1", "theta3_d2", "theta_log_stats",
    "theta_nd", "torus_cs_wavefunction", "torus_norm_sq", "torus_overlap",
    "uncertainty_report", "uncertainty_sweep", "verify_resolution_of_unity",
    "verify_torus_unity", "wbz_forward", "wbz_inverse",
]
