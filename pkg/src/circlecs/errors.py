"""Exception types raised by the library."""


class CircleCSError(Exception):
    """Base class for all library-specific errors."""


class NomeOutOfRange(CircleCSError, ValueError):
    """Nome outside the convergence domain |rho| < 1, or a period matrix
    whose imaginary part is not positive definite."""


class NonConvergence(CircleCSError, RuntimeError):
    """A series failed to reach the requested tolerance within the term cap."""


class PeriodNotConvergent(CircleCSError, ValueError):
    """Period matrix gives a divergent lattice sum (Im(Omega) not positive
    definite, or too close to singular for the requested tolerance)."""


class SlowDecay(CircleCSError, RuntimeError):
    """A line function decays too slowly for its lattice sum to converge
    within the term cap."""


class DimensionMismatch(CircleCSError, ValueError):
    """Vector argument length does not match the lattice dimension."""


class SectorMismatch(CircleCSError, ValueError):
    """Quasimomentum sector inconsistent with the requested statistics
    (integer labels need k = 0, half-integer labels need k = pi/a)."""
