"""Slab configuration, eigenvalue bookkeeping and wavenumber conversions.

Units convention
----------------
Everything is dimensionless: lengths are measured in units of 1/k0 and
wavenumbers in units of k0, so a slab is fully described by the product
A = k0*a (half width) and the core refractive index U0.  The propagation
constant eps plays the role of an energy; the guided band is
-U0 <= eps < -1, the radiation band -1 <= eps < 0.

Wavenumber conventions (K exterior, Q interior, both in units of k0):

    K**2 / 2 = eps + 1
    Q**2     = U0 * (K**2 + 2*(U0 - 1))        (= 2*U0*(eps + U0))

Leaky modes live on the branch with K in the closed fourth quadrant
(Re K >= 0, Im K <= 0).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass


@dataclass(frozen=True)
class SlabConfig:
    """Dimensionless description of a homogeneous slab in vacuum.

    Attributes:
        half_width_A: k0*a, half width of the core in units of 1/k0.
        core_index_U0: refractive index of the core; must exceed the clad.
        clad_index: fixed to 1 (vacuum).  Kept as a field so exports are
            explicit about the convention.
    """

    half_width_A: float
    core_index_U0: float
    clad_index: float = 1.0

    def __post_init__(self):
        if not self.half_width_A > 0:
            raise ValueError(f"half_width_A must be > 0, got {self.half_width_A}")
        if not self.core_index_U0 > 1:
            raise ValueError(
                f"core_index_U0 must be > 1 (index well), got {self.core_index_U0}"
            )
        if self.clad_index != 1.0:
            raise ValueError("clad_index is fixed to 1 (vacuum)")

    @property
    def well_depth(self) -> float:
        """Equivalent well depth |1 - U0| of the index profile."""
        return abs(1.0 - self.core_index_U0)


@dataclass(frozen=True)
class ComplexEigenvalue:
    """Propagation constant eps = eps_R - i*Gamma/2.

    half_width_Gamma is Gamma/2 >= 0; Gamma = 0 describes real (guided or
    radiation) propagation constants.  For the slab treated here leaky and
    scattering eigenvalues satisfy -U0 <= eps_R < 0.
    """

    eps_R: float
    half_width_Gamma: float = 0.0

    def __post_init__(self):
        if self.half_width_Gamma < 0:
            raise ValueError(
                f"half_width_Gamma must be >= 0, got {self.half_width_Gamma}"
            )

    @property
    def value(self) -> complex:
        return complex(self.eps_R, -self.half_width_Gamma)

    @property
    def width_Gamma(self) -> float:
        return 2.0 * self.half_width_Gamma

    @classmethod
    def from_complex(cls, eps: complex) -> "ComplexEigenvalue":
        if eps.imag > 0:
            raise ValueError(f"eigenvalue must lie in the lower half plane, got {eps}")
        return cls(eps_R=eps.real, half_width_Gamma=-eps.imag)


@dataclass(frozen=True)
class Wavenumbers:
    """Exterior (K) and interior (Q) wavenumbers in units of k0."""

    K: complex
    Q: complex


def fourth_quadrant_sqrt(z: complex) -> complex:
    """Square root of z on the branch with Re >= 0 and, if Re == 0, Im <= 0."""
    w = cmath.sqrt(z)
    if w.real < 0 or (w.real == 0 and w.imag > 0):
        w = -w
    return w


def eigenvalue_to_wavenumbers(eps: ComplexEigenvalue, cfg: SlabConfig) -> Wavenumbers:
    """Convert eps to the wavenumber pair (K, Q).

    K is taken in the closed fourth quadrant so that leaky modes are
    outgoing; Q is the principal square root of U0*(K**2 + 2*(U0-1)).
    The round trip eps = K**2/2 - 1 holds to machine precision.
    """
    K = fourth_quadrant_sqrt(2.0 * (eps.value + 1.0))
    Q = cmath.sqrt(cfg.core_index_U0 * (K * K + 2.0 * (cfg.core_index_U0 - 1.0)))
    return Wavenumbers(K=K, Q=Q)


def wavenumbers_to_eigenvalue(wn: Wavenumbers) -> ComplexEigenvalue:
    """Invert eigenvalue_to_wavenumbers: eps = K**2/2 - 1."""
    return ComplexEigenvalue.from_complex(wn.K * wn.K / 2.0 - 1.0)


def beam_slope(eps_R: float, x_index: float) -> float:
    """Local ray angle theta with respect to the optical axis, in radians.

    The eigenvalue fixes the beam slope through eps = -n(x)*cos(theta(x)).
    Returns theta in [0, pi/2].  Raises ValueError in the evanescent regime
    |eps_R| > n(x) where no real ray angle exists.
    """
    if abs(eps_R) > x_index:
        raise ValueError(
            f"no real ray angle: |eps_R|={abs(eps_R)} exceeds local index {x_index}"
        )
    return math.acos(-eps_R / x_index)
