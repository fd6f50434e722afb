"""Piecewise leaky-mode profiles and their axial propagation.

A mode is outgoing on both sides: A_I*e^{-iKx} for x < -A, B*e^{iQx} +
C*e^{-iQx} inside, D*e^{+iKx} for x > A.  With Im K < 0 the exterior grows
exponentially while e^{-i*eps*z} attenuates the whole profile axially, so
|E(x, z)|^2 = e^{-Gamma*z} |phi(x)|^2 exactly.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import SlabConfig
from .resonances import REFINED, Resonance

_NORM_GRID = 4001


@dataclass(frozen=True)
class ModeField:
    """Leaky-mode profile phi(x) with its four piece amplitudes.

    coefficients = (A_I, B, C, D_III) for the pieces e^{-iKx} | e^{+iQx},
    e^{-iQx} | e^{+iKx}.  Normalized so that max |phi| over the core is 1.
    """

    resonance: Resonance
    slab: SlabConfig
    coefficients: tuple[complex, complex, complex, complex]
    normalization: str = "interior_max"

    def evaluate(self, x) -> np.ndarray:
        """phi(x) on an arbitrary set of points (units of 1/k0)."""
        x = np.asarray(x, dtype=float)
        A = self.slab.half_width_A
        K = self.resonance.wavenumbers.K
        Q = self.resonance.wavenumbers.Q
        a_i, b, c, d = self.coefficients
        out = np.empty(x.shape, dtype=complex)
        left = x < -A
        right = x > A
        mid = ~(left | right)
        out[left] = a_i * np.exp(-1j * K * x[left])
        out[mid] = b * np.exp(1j * Q * x[mid]) + c * np.exp(-1j * Q * x[mid])
        out[right] = d * np.exp(1j * K * x[right])
        return out

    def derivative(self, x) -> np.ndarray:
        """dphi/dx, piecewise analytic."""
        x = np.asarray(x, dtype=float)
        A = self.slab.half_width_A
        K = self.resonance.wavenumbers.K
        Q = self.resonance.wavenumbers.Q
        a_i, b, c, d = self.coefficients
        out = np.empty(x.shape, dtype=complex)
        left = x < -A
        right = x > A
        mid = ~(left | right)
        out[left] = -1j * K * a_i * np.exp(-1j * K * x[left])
        out[mid] = 1j * Q * (b * np.exp(1j * Q * x[mid]) - c * np.exp(-1j * Q * x[mid]))
        out[right] = 1j * K * d * np.exp(1j * K * x[right])
        return out

    def log_derivative(self, x: float) -> complex:
        """beta(x) = -phi'(x)/phi(x); tends to -iK (x > A) and +iK (x < -A)."""
        return complex(-self.derivative([x])[0] / self.evaluate([x])[0])


@dataclass(frozen=True)
class FieldGrid:
    """Complex amplitudes E(x, z) on a rectangle, shape (len(x), len(z))."""

    x_grid: np.ndarray
    z_grid: np.ndarray
    amplitudes: np.ndarray

    def __post_init__(self):
        x = np.asarray(self.x_grid, dtype=float)
        z = np.asarray(self.z_grid, dtype=float)
        a = np.asarray(self.amplitudes)
        object.__setattr__(self, "x_grid", x)
        object.__setattr__(self, "z_grid", z)
        object.__setattr__(self, "amplitudes", a)
        if np.any(np.diff(x) <= 0) or np.any(np.diff(z) < 0):
            raise ValueError("grids must be increasing")
        if a.shape != (len(x), len(z)):
            raise ValueError(
                f"amplitudes shape {a.shape} does not match grids ({len(x)}, {len(z)})"
            )


def mode_profile(res: Resonance, cfg: SlabConfig) -> ModeField:
    """Solve the outgoing four-amplitude matching for a refined eigenvalue.

    Construction: set D_III = 1, obtain B, C from the right interface and
    A_I from left-interface continuity; the leftover derivative mismatch at
    x = -A is the matching residual and vanishes with the quantization
    condition.  Raises ValueError for unrefined seeds or unconverged roots.
    """
    if res.method != REFINED:
        raise ValueError("mode_profile requires a refined resonance")
    if res.residual > 1e-8:
        raise ValueError(
            f"quantization residual {res.residual:.3e} too large; root not converged"
        )
    A = cfg.half_width_A
    K = res.wavenumbers.K
    Q = res.wavenumbers.Q
    d = 1.0 + 0.0j
    b = 0.5 * d * np.exp(1j * K * A) * (1.0 + K / Q) * np.exp(-1j * Q * A)
    c = 0.5 * d * np.exp(1j * K * A) * (1.0 - K / Q) * np.exp(1j * Q * A)
    a_i = (b * np.exp(-1j * Q * A) + c * np.exp(1j * Q * A)) * np.exp(-1j * K * A)

    # leftover matching condition: interior derivative vs outgoing -iK*A_I at -A
    lhs = 1j * Q * (b * np.exp(-1j * Q * A) - c * np.exp(1j * Q * A))
    rhs = -1j * K * a_i * np.exp(1j * K * A)
    rel = abs(lhs - rhs) / max(abs(lhs), abs(rhs))
    if rel > 1e-8:
        raise ValueError(f"derivative matching failed at x=-A: relative jump {rel:.3e}")

    field = ModeField(
        resonance=res, slab=cfg, coefficients=(complex(a_i), complex(b), complex(c), complex(d))
    )
    xs = np.linspace(-A, A, _NORM_GRID)
    scale = np.max(np.abs(field.evaluate(xs)))
    coeffs = tuple(z / scale for z in field.coefficients)
    return ModeField(resonance=res, slab=cfg, coefficients=coeffs)


def interior_node_count(field: ModeField, samples: int = 8192) -> int:
    """Sign changes of Re(phi) strictly inside the core."""
    A = field.slab.half_width_A
    xs = np.linspace(-A, A, samples)[1:-1]
    re = np.real(field.evaluate(xs))
    return int(np.sum(np.sign(re[:-1]) * np.sign(re[1:]) < 0))


def propagate_mode(field: ModeField, x_grid, z_grid) -> FieldGrid:
    """E(x, z) = phi(x) * e^{-i*eps*z}; complex eps attenuates axially."""
    x = np.asarray(x_grid, dtype=float)
    z = np.asarray(z_grid, dtype=float)
    if np.any(z < 0):
        raise ValueError("z_grid must be >= 0 (forward propagation)")
    phi = field.evaluate(x)
    eps = field.resonance.eigenvalue.value
    return FieldGrid(
        x_grid=x,
        z_grid=z,
        amplitudes=phi[:, None] * np.exp(-1j * eps * z)[None, :],
    )


def default_render_grids(cfg: SlabConfig) -> tuple[np.ndarray, np.ndarray]:
    """Grids resolving the interior half-waves of every admissible mode."""
    A = cfg.half_width_A
    return np.linspace(-2 * A, 2 * A, 801), np.linspace(0.0, 200.0, 401)
