"""Real-energy scattering off the slab: transfer matrix, r/t, phase, FBW sum.

Amplitudes are computed by 2x2 interface matrix products across x = -A and
x = +A in the plane-wave basis (a*e^{iwx} + b*e^{-iwx} per region), so flux
conservation is a property of the construction rather than an input.

The transmission phase phi is the quantity entering the wave-packet
integrands: phi = arg t + 2*K*A - pi/2.  Single-point calls return its
principal value in (-pi/2, pi/2]; sweeps return the continuously unwrapped
branch (accumulated along increasing K with adaptive refinement).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .core import SlabConfig


@dataclass(frozen=True)
class ScatteringAmplitudes:
    """Reflection/transmission amplitudes and transmission phase at one eps_R."""

    r: complex
    t: complex
    phase_phi: float


@dataclass(frozen=True)
class Curve:
    """Sampled 1-D function: strictly increasing abscissa + value columns.

    labels[0] names the abscissa, labels[1:] name the value columns.  values
    has shape (n,) for a single column or (n, k) for k columns; complex
    columns are allowed and are split into re_/im_ pairs on export.
    """

    abscissa: np.ndarray
    values: np.ndarray
    labels: tuple[str, ...]

    def __post_init__(self):
        a = np.asarray(self.abscissa, dtype=float)
        v = np.asarray(self.values)
        object.__setattr__(self, "abscissa", a)
        object.__setattr__(self, "values", v)
        if a.ndim != 1 or len(a) < 1:
            raise ValueError("abscissa must be a non-empty 1-D grid")
        if np.any(np.diff(a) <= 0):
            raise ValueError("abscissa must be strictly increasing")
        if v.shape[0] != a.shape[0]:
            raise ValueError(
                f"values length {v.shape[0]} does not match abscissa {a.shape[0]}"
            )
        ncols = 1 if v.ndim == 1 else v.shape[1]
        if len(self.labels) != 1 + ncols:
            raise ValueError(
                f"expected {1 + ncols} labels (abscissa + columns), got {len(self.labels)}"
            )


def _check_radiation_band(eps_R: np.ndarray | float):
    e = np.asarray(eps_R, dtype=float)
    if np.any(e <= -1.0) or np.any(e >= 0.0):
        raise ValueError("eps_R must lie strictly inside the radiation band (-1, 0)")


def _amplitudes_vec(eps_R, cfg: SlabConfig):
    """Vectorized r(eps), t(eps) via the two interface matrices."""
    e = np.asarray(eps_R, dtype=float)
    A = cfg.half_width_A
    U0 = cfg.core_index_U0
    K = np.sqrt(2.0 * (e + 1.0)).astype(complex)
    Q = np.sqrt(U0 * (K * K + 2.0 * (U0 - 1.0)))

    def interface(x0, w1, w2):
        rho = w1 / w2
        m11 = 0.5 * (1 + rho) * np.exp(1j * (w1 - w2) * x0)
        m12 = 0.5 * (1 - rho) * np.exp(-1j * (w1 + w2) * x0)
        m21 = 0.5 * (1 - rho) * np.exp(1j * (w1 + w2) * x0)
        m22 = 0.5 * (1 + rho) * np.exp(-1j * (w1 - w2) * x0)
        return m11, m12, m21, m22

    a11, a12, a21, a22 = interface(-A, K, Q)   # vacuum -> core at x=-A
    b11, b12, b21, b22 = interface(+A, Q, K)   # core -> vacuum at x=+A
    m11 = b11 * a11 + b12 * a21
    m12 = b11 * a12 + b12 * a22
    m21 = b21 * a11 + b22 * a21
    m22 = b21 * a12 + b22 * a22
    r = -m21 / m22
    t = (m11 * m22 - m12 * m21) / m22
    return K, r, t


def _fold_half_pi(x):
    """Reduce a phase (array or scalar) to its principal branch mod pi."""
    return x - np.pi * np.round(x / np.pi)


def transfer_amplitudes(eps_R: float, cfg: SlabConfig) -> ScatteringAmplitudes:
    """r, t and the principal-branch transmission phase at one eps_R.

    Raises ValueError outside the radiation band (-1, 0).
    """
    _check_radiation_band(eps_R)
    K, r, t = _amplitudes_vec(eps_R, cfg)
    phi = np.angle(t) + 2.0 * K.real * cfg.half_width_A - math.pi / 2.0
    return ScatteringAmplitudes(
        r=complex(r), t=complex(t), phase_phi=float(_fold_half_pi(phi))
    )


def transmission_coefficient(eps_R: float, cfg: SlabConfig) -> float:
    """T = |t|^2 in (0, 1]."""
    _check_radiation_band(eps_R)
    _, _, t = _amplitudes_vec(eps_R, cfg)
    return float(np.abs(t) ** 2)


def transmission_sweep(eps_grid, cfg: SlabConfig) -> Curve:
    """T(eps) and the unwrapped phase phi(eps) over an increasing grid."""
    e = np.asarray(eps_grid, dtype=float)
    _check_radiation_band(e)
    _, _, t = _amplitudes_vec(e, cfg)
    phi = unwrapped_phase(e, cfg)
    return Curve(
        abscissa=e,
        values=np.column_stack([np.abs(t) ** 2, phi]),
        labels=("eps_R", "T", "phi"),
    )


def _principal_phase(eps_R, cfg: SlabConfig):
    K, _, t = _amplitudes_vec(eps_R, cfg)
    return _fold_half_pi(np.angle(t) + 2.0 * K.real * cfg.half_width_A - math.pi / 2.0)


def _aligned_delta(e0, e1, p0, p1, cfg, depth=0):
    # Difference of the continuous phase across [e0, e1]; bisect until the
    # mod-pi branch assignment is unambiguous (|delta| < pi/4).
    d = float(_fold_half_pi(p1 - p0))
    if abs(d) < np.pi / 4 or depth >= 40:
        return d
    mid = 0.5 * (e0 + e1)
    pm = float(_principal_phase(mid, cfg))
    return _aligned_delta(e0, mid, p0, pm, cfg, depth + 1) + _aligned_delta(
        mid, e1, pm, p1, cfg, depth + 1
    )


def unwrapped_phase(eps_grid, cfg: SlabConfig) -> np.ndarray:
    """Continuously unwrapped phi over an increasing eps grid.

    Anchored at the principal value of the first point; increments are
    accumulated with adaptive bisection so each step stays below pi/4.
    """
    e = np.asarray(eps_grid, dtype=float)
    _check_radiation_band(e)
    if e.ndim != 1 or len(e) == 0:
        raise ValueError("eps_grid must be a non-empty 1-D array")
    p = np.atleast_1d(_principal_phase(e, cfg))
    out = np.empty_like(p)
    out[0] = p[0]
    for i in range(1, len(e)):
        out[i] = out[i - 1] + _aligned_delta(e[i - 1], e[i], p[i - 1], p[i], cfg)
    return out


def fbw_superposition(
    eps_R: float,
    resonances: Sequence[tuple[float, float]],
    count: int | None = None,
) -> float:
    """Sum of Lorentzian lineshapes, one per resonance (E_n, Gamma_n).

    Each term is (Gamma_n/2)^2 / ((E - E_n)^2 + (Gamma_n/2)^2); the list must
    be sorted by E_n and at least one term is required.  ``count`` restricts
    the sum to the first N entries.
    """
    if count is None:
        count = len(resonances)
    if count < 1:
        raise ValueError("at least one resonance term is required")
    if count > len(resonances):
        raise ValueError(f"count={count} exceeds list length {len(resonances)}")
    centers = [en for en, _ in resonances]
    if any(b <= a for a, b in zip(centers, centers[1:])):
        raise ValueError("resonance list must be sorted by increasing E_n")
    total = 0.0
    for e_n, gamma_n in resonances[:count]:
        hw = 0.5 * gamma_n
        total += hw * hw / ((eps_R - e_n) ** 2 + hw * hw)
    return total
