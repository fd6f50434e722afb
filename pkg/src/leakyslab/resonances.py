"""Leaky-mode eigenvalues of the slab.

Closed-form estimates seed a complex Newton iteration on the exact
quantization condition (vanishing denominator of the transmission
amplitude, equivalently the purely outgoing matching determinant):

    f(eps) = cos(2*Q*A) - i * (K^2 + Q^2)/(2*K*Q) * sin(2*Q*A)

whose zeros with K in the fourth quadrant are the leaky modes.  A winding
number counter over a rectangle in the eps plane provides an independent
root count.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, replace

import numpy as np

from .core import (
    ComplexEigenvalue,
    SlabConfig,
    Wavenumbers,
    eigenvalue_to_wavenumbers,
    fourth_quadrant_sqrt,
)
from .errors import ConvergenceError, RootJumpError

APPROXIMATE = "approximate"
REFINED = "refined"


@dataclass(frozen=True)
class Resonance:
    """One leaky mode: index, eigenvalue, wavenumbers and solution quality."""

    mode_index_m: int
    eigenvalue: ComplexEigenvalue
    wavenumbers: Wavenumbers
    residual: float
    method: str

    def __post_init__(self):
        if self.method not in (APPROXIMATE, REFINED):
            raise ValueError(f"method must be approximate|refined, got {self.method}")
        if self.method == REFINED and self.residual > 1e-10:
            raise ValueError(
                f"refined resonance must have residual <= 1e-10, got {self.residual}"
            )


def mode_index_range(cfg: SlabConfig) -> range:
    """Integers m with sqrt(2*U0*(U0-1)) < m*pi/(2*A) < sqrt(2)*U0.

    Returns an empty range when no integer fits (very thin slab).
    """
    A = cfg.half_width_A
    U0 = cfg.core_index_U0
    lo = math.sqrt(2.0 * U0 * (U0 - 1.0)) * 2.0 * A / math.pi
    hi = math.sqrt(2.0) * U0 * 2.0 * A / math.pi
    m_min = math.floor(lo) + 1          # smallest integer strictly above lo
    m_max = math.ceil(hi) - 1           # largest integer strictly below hi
    if m_min < 1:
        m_min = 1
    if m_max < m_min:
        return range(m_min, m_min)
    return range(m_min, m_max + 1)


def _approximate_eigenvalue(m: int, cfg: SlabConfig) -> ComplexEigenvalue:
    A = cfg.half_width_A
    U0 = cfg.core_index_U0
    eps_R = (m * math.pi / (2.0 * A)) ** 2 / (2.0 * U0) - U0
    half_gamma = math.sqrt(2.0 * (eps_R + 1.0)) / (A * U0)
    return ComplexEigenvalue(eps_R=eps_R, half_width_Gamma=half_gamma)


def approximate_resonances(cfg: SlabConfig) -> list[Resonance]:
    """Closed-form eigenvalues for every admissible mode index.

    eps_R(m) = (1/(2*U0)) * (m*pi/(2*A))^2 - U0 and
    Gamma/2  = sqrt(2*(eps_R+1)) / (A*U0), in units of k0.
    """
    out = []
    for m in mode_index_range(cfg):
        eps = _approximate_eigenvalue(m, cfg)
        wn = eigenvalue_to_wavenumbers(eps, cfg)
        out.append(
            Resonance(
                mode_index_m=m,
                eigenvalue=eps,
                wavenumbers=wn,
                residual=abs(_condition_from_K(wn.K, cfg)),
                method=APPROXIMATE,
            )
        )
    return out


def _condition_from_K(K: complex, cfg: SlabConfig) -> complex:
    """Quantization condition evaluated from the exterior wavenumber."""
    U0 = cfg.core_index_U0
    A = cfg.half_width_A
    Q = cmath.sqrt(U0 * (K * K + 2.0 * (U0 - 1.0)))
    if K == 0 or Q == 0:
        raise ValueError("K = 0 or Q = 0 is a pole of the outgoing condition")
    return cmath.cos(2 * Q * A) - 0.5j * (K / Q + Q / K) * cmath.sin(2 * Q * A)


def siegert_residual(eps: ComplexEigenvalue, cfg: SlabConfig) -> complex:
    """f(eps) = cos(2QA) - i*(K^2+Q^2)/(2KQ)*sin(2QA); zero on leaky modes.

    On the real axis |f| >= 1, so real eigenvalues are never roots.
    Raises ValueError at the poles K = 0 and Q = 0.
    """
    wn = eigenvalue_to_wavenumbers(eps, cfg)
    return _condition_from_K(wn.K, cfg)


def refine_resonance(
    seed: Resonance,
    cfg: SlabConfig,
    tol: float = 1e-12,
    max_iter: int = 100,
    derivative_step: float = 1e-6,
) -> Resonance:
    """Newton-polish a seed to an exact root of the outgoing condition.

    The iteration runs in the exterior wavenumber K (analytic away from
    K = 0, unlike eps near the band edge); the derivative is a central
    difference with a small complex-plane step.  The refined eigenvalue must
    stay within 5*Gamma_seed of the seed, otherwise RootJumpError signals a
    collision with a neighbouring mode.
    """
    K = complex(seed.wavenumbers.K)
    h = derivative_step
    converged = False
    for _ in range(max_iter):
        val = _condition_from_K(K, cfg)
        if abs(val) <= tol:
            converged = True
            break
        dval = (_condition_from_K(K + h, cfg) - _condition_from_K(K - h, cfg)) / (2 * h)
        step = val / dval
        K = K - step
        if abs(step) < 1e-14:
            converged = abs(_condition_from_K(K, cfg)) <= 1e-10
            break
    if not converged:
        raise ConvergenceError(
            f"no convergence after {max_iter} iterations for seed m={seed.mode_index_m}"
        )
    if K.real < 0 or K.imag > 0:
        raise RootJumpError(
            f"iterate left the fourth quadrant for seed m={seed.mode_index_m}: K={K}"
        )
    eps = ComplexEigenvalue.from_complex(K * K / 2.0 - 1.0)
    trust = 5.0 * seed.eigenvalue.width_Gamma
    if abs(eps.value - seed.eigenvalue.value) > trust:
        raise RootJumpError(
            f"refined root moved {abs(eps.value - seed.eigenvalue.value):.3e} "
            f"from seed m={seed.mode_index_m}, beyond trust region {trust:.3e}"
        )
    residual = abs(_condition_from_K(K, cfg))
    wn = eigenvalue_to_wavenumbers(eps, cfg)
    return replace(
        seed, eigenvalue=eps, wavenumbers=wn, residual=residual, method=REFINED
    )


def refine_all(seeds: list[Resonance], cfg: SlabConfig, **kwargs) -> list[Resonance]:
    """Refine every seed; independent per mode."""
    return [refine_resonance(s, cfg, **kwargs) for s in seeds]


def narrowness_diagnostic(resonances: list[Resonance]) -> list[float]:
    """Per adjacent pair, (Gamma_n/2) / (eps_{R,n+1} - eps_{R,n}).

    Small ratios mean well-separated, long-lived modes.  Requires at least
    two entries sorted by eps_R.
    """
    if len(resonances) < 2:
        raise ValueError("need at least two resonances")
    eps = [r.eigenvalue.eps_R for r in resonances]
    if any(b <= a for a, b in zip(eps, eps[1:])):
        raise ValueError("resonances must be sorted by increasing eps_R")
    out = []
    for a, b in zip(resonances, resonances[1:]):
        out.append(a.eigenvalue.half_width_Gamma / (b.eigenvalue.eps_R - a.eigenvalue.eps_R))
    return out


def _winding_on_segment(
    z0: complex, z1: complex, cfg: SlabConfig, n: int, depth: int = 0
) -> float:
    """Accumulated phase change of f along [z0, z1], adaptively refined."""
    if depth > 24:
        raise ConvergenceError(
            "winding-number refinement stalled; the contour probably passes "
            f"through a root near {z0}"
        )
    ts = np.linspace(0.0, 1.0, n + 1)
    zs = z0 + (z1 - z0) * ts
    K = np.array([fourth_quadrant_sqrt(2.0 * (z + 1.0)) for z in zs])
    U0 = cfg.core_index_U0
    A = cfg.half_width_A
    Q = np.sqrt(U0 * (K * K + 2.0 * (U0 - 1.0)) + 0j)
    vals = np.cos(2 * Q * A) - 0.5j * (K / Q + Q / K) * np.sin(2 * Q * A)
    dphi = np.angle(vals[1:] / vals[:-1])
    total = 0.0
    for i, d in enumerate(dphi):
        if abs(d) > np.pi / 2:
            total += _winding_on_segment(zs[i], zs[i + 1], cfg, 16, depth + 1)
        else:
            total += d
    return total


def count_leaky_modes(
    cfg: SlabConfig,
    eps_R_limits: tuple[float, float] = (-0.999, -0.001),
    eps_I_limits: tuple[float, float] = (-0.15, 0.05),
    samples_per_edge: int = 2048,
) -> int:
    """Argument-principle count of outgoing-condition roots in a rectangle.

    The condition is analytic for Re(eps) > -1, so the winding number of
    f along the (counterclockwise) rectangle boundary counts the enclosed
    leaky modes exactly.  Limits must avoid the branch point eps = -1.
    """
    el, er = eps_R_limits
    ib, it = eps_I_limits
    if el <= -1.0:
        raise ValueError("left edge must stay right of the branch point eps = -1")
    corners = [
        complex(el, ib),
        complex(er, ib),
        complex(er, it),
        complex(el, it),
    ]
    total = 0.0
    for i in range(4):
        total += _winding_on_segment(
            corners[i], corners[(i + 1) % 4], cfg, samples_per_edge
        )
    return round(total / (2.0 * np.pi))
