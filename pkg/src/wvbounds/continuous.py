"""Grid-discretized position-momentum pair: saturating Gaussians and their checks.

Wave functions live on a uniform position grid with trapezoid-rule
normalization; momentum acts through centered finite differences.  The
quadratic-phase Gaussian family saturates the variance-product bound, which
splits into a phase condition (fixing the quadratic phase) and a modulus
condition (fixing the Gaussian envelope); both are verified here as pointwise
residuals of the logarithmic derivative.  The discord of momentum relative to
position reduces to an integral of ``|psi'|^2`` over the zero set of ``psi``
and vanishes for every smooth wave function.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "GridTooNarrow",
    "NotConverged",
    "GridWaveFunction",
    "GaussianFamilyParams",
    "gaussian_mus",
    "phase_condition_residual",
    "modulus_condition_residual",
    "discord_p_given_x",
    "schrodinger_check_continuous",
]

# Default grid: mean_x +/- 8 sigma.  The point count is chosen so the
# centered-difference error of Im(psi'/psi) at the 8-sigma edge stays an
# order of magnitude under the 1e-4 residual contract for |lambda| <= 2,
# mu >= 0.5 (the error grows like |d log psi / dx|^3 * dx^2).
DEFAULT_N_POINTS = 131072
GRID_HALF_WIDTH_SIGMAS = 8.0

AMPLITUDE_FLOOR = 1e-8
ZERO_SET_RTOL = 1e-10

# Halved-grid change of the variance product beyond which the grid is deemed
# unconverged (a Richardson-style proxy for "doubling changes lhs < 1e-6").
CONVERGENCE_RTOL = 4e-6


class GridTooNarrow(ValueError):
    """The position grid does not cover the required support of the state."""


class NotConverged(RuntimeError):
    """Grid moments change too much under refinement to be trusted."""


@dataclass(frozen=True)
class GridWaveFunction:
    """A wave function sampled on a uniform grid, trapezoid-normalized."""

    x_min: float
    x_max: float
    n_points: int
    values: np.ndarray
    hbar: float = 1.0
    dx: float = field(init=False)

    def __post_init__(self) -> None:
        if self.n_points < 16:
            raise ValueError("n_points must be at least 16")
        if not (self.x_max > self.x_min):
            raise ValueError("x_max must exceed x_min")
        if not (self.hbar > 0.0):
            raise ValueError("hbar must be positive")
        vals = np.asarray(self.values, dtype=np.complex128).reshape(-1)
        if vals.size != self.n_points:
            raise ValueError(f"expected {self.n_points} samples, got {vals.size}")
        if not np.isfinite(vals).all():
            raise ValueError("wave function samples must be finite")
        dx = (self.x_max - self.x_min) / (self.n_points - 1)
        norm_sq = float(np.sum(self._trapezoid_weights(dx) * np.abs(vals) ** 2))
        if norm_sq <= 0.0:
            raise ValueError("wave function has zero norm on the grid")
        object.__setattr__(self, "values", vals / math.sqrt(norm_sq))
        object.__setattr__(self, "dx", dx)

    def _trapezoid_weights(self, dx: float | None = None) -> np.ndarray:
        w = np.full(self.n_points, dx if dx is not None else self.dx)
        w[0] *= 0.5
        w[-1] *= 0.5
        return w

    @property
    def grid(self) -> np.ndarray:
        return np.linspace(self.x_min, self.x_max, self.n_points)

    @property
    def weights(self) -> np.ndarray:
        return self._trapezoid_weights()

    def derivative(self) -> np.ndarray:
        """Centered-difference first derivative (second-order one-sided at the ends)."""
        return np.gradient(self.values, self.dx, edge_order=2)

    def second_derivative(self) -> np.ndarray:
        """Three-point second difference; endpoints are zeroed."""
        out = np.zeros_like(self.values)
        out[1:-1] = (self.values[2:] - 2.0 * self.values[1:-1] + self.values[:-2]) / self.dx**2
        return out

    def coarsened(self) -> "GridWaveFunction":
        """Resample onto every other grid point (doubled spacing)."""
        vals = self.values[::2]
        x_last = self.x_min + self.dx * 2.0 * (vals.size - 1)
        return GridWaveFunction(
            x_min=self.x_min, x_max=x_last, n_points=vals.size, values=vals, hbar=self.hbar
        )


@dataclass(frozen=True)
class GaussianFamilyParams:
    """Quadratic-phase Gaussian parameters: phase curvature, envelope width, means."""

    lam: float = 0.0
    mu: float = 1.0
    mean_x: float = 0.0
    mean_p: float = 0.0

    def __post_init__(self) -> None:
        if not (self.mu > 0.0):
            raise ValueError("mu must be positive (normalizability)")

    def sigma(self, hbar: float) -> float:
        return math.sqrt(hbar / (2.0 * self.mu))


def gaussian_mus(
    params: GaussianFamilyParams,
    x_min: float | None = None,
    x_max: float | None = None,
    n_points: int = DEFAULT_N_POINTS,
    hbar: float = 1.0,
) -> GridWaveFunction:
    """Sample the bound-saturating Gaussian family member on a grid.

    ``psi(x) = C exp[i(lam (x - <x>)^2 / 2 hbar + <p> x / hbar)]
               exp[-mu (x - <x>)^2 / 2 hbar]``

    The grid must cover ``<x> +/- 8 sigma`` with ``sigma = sqrt(hbar / 2 mu)``;
    narrower explicit bounds raise GridTooNarrow with the suggested interval.
    """
    sigma = params.sigma(hbar)
    lo_required = params.mean_x - GRID_HALF_WIDTH_SIGMAS * sigma
    hi_required = params.mean_x + GRID_HALF_WIDTH_SIGMAS * sigma
    lo = lo_required if x_min is None else x_min
    hi = hi_required if x_max is None else x_max
    pad = 1e-12 * max(1.0, abs(lo_required), abs(hi_required))
    if lo > lo_required + pad or hi < hi_required - pad:
        raise GridTooNarrow(
            f"grid [{lo:g}, {hi:g}] does not cover the required support; "
            f"use at least [{lo_required:g}, {hi_required:g}]"
        )
    x = np.linspace(lo, hi, n_points)
    u = x - params.mean_x
    phase = params.lam * u**2 / (2.0 * hbar) + params.mean_p * x / hbar
    envelope = np.exp(-params.mu * u**2 / (2.0 * hbar))
    values = envelope * np.exp(1j * phase)
    return GridWaveFunction(x_min=lo, x_max=hi, n_points=n_points, values=values, hbar=hbar)


def _admissible(wf: GridWaveFunction) -> np.ndarray:
    """Interior points with amplitude above the relative floor."""
    magnitude = np.abs(wf.values)
    mask = magnitude > AMPLITUDE_FLOOR * float(magnitude.max())
    mask[0] = mask[-1] = False
    return mask


def phase_condition_residual(
    wf: GridWaveFunction, lam: float, mean_x: float, mean_p: float
) -> float:
    """Max-norm residual of ``Im(psi'/psi) = (lam/hbar)(x - <x>) + <p>/hbar``.

    Points whose amplitude is below 1e-8 of the maximum are excluded; there the
    logarithmic derivative cannot be evaluated stably.
    """
    mask = _admissible(wf)
    if not mask.any():
        return 0.0
    ratio = wf.derivative()[mask] / wf.values[mask]
    x = wf.grid[mask]
    target = (lam / wf.hbar) * (x - mean_x) + mean_p / wf.hbar
    return float(np.abs(ratio.imag - target).max())


def modulus_condition_residual(wf: GridWaveFunction, mu: float, mean_x: float) -> float:
    """Max-norm residual of ``Re(psi'/psi) = -(mu/hbar)(x - <x>)`` over admissible points."""
    mask = _admissible(wf)
    if not mask.any():
        return 0.0
    ratio = wf.derivative()[mask] / wf.values[mask]
    x = wf.grid[mask]
    target = -(mu / wf.hbar) * (x - mean_x)
    return float(np.abs(ratio.real - target).max())


def discord_p_given_x(wf: GridWaveFunction, zero_tol: float | None = None) -> float:
    """Discord of momentum given position: ``hbar^2 * sum_{|psi| < tol} |psi'|^2 dx``.

    The sum runs over the grid points where the wave function (numerically)
    vanishes; for smooth states this is empty or measure-zero and the result
    stays below 1e-8.
    """
    magnitude = np.abs(wf.values)
    tol = ZERO_SET_RTOL * float(magnitude.max()) if zero_tol is None else zero_tol
    mask = magnitude < tol
    if not mask.any():
        return 0.0
    derivative = wf.derivative()
    return float(wf.hbar**2 * np.sum(wf.weights[mask] * np.abs(derivative[mask]) ** 2))


def _moments(wf: GridWaveFunction) -> tuple[float, float, float, float, float]:
    """(mean_x, var_x, mean_p, var_p, covariance) by quadrature and differences."""
    x = wf.grid
    w = wf.weights
    density = np.abs(wf.values) ** 2
    mean_x = float(np.sum(w * x * density))
    var_x = max(float(np.sum(w * (x - mean_x) ** 2 * density)), 0.0)

    dpsi = wf.derivative()
    p_psi = -1j * wf.hbar * dpsi
    mean_p = float(np.sum(w * (wf.values.conj() * p_psi)).real)
    p2 = float(np.sum(w * (wf.values.conj() * (-(wf.hbar**2)) * wf.second_derivative())).real)
    var_p = max(p2 - mean_p**2, 0.0)

    xp = np.sum(w * (wf.values.conj() * x * p_psi))
    covariance = float(xp.real) - mean_x * mean_p
    return mean_x, var_x, mean_p, var_p, covariance


def position_momentum_moments(wf: GridWaveFunction) -> dict[str, float]:
    """Grid-quadrature moments of position and momentum."""
    mean_x, var_x, mean_p, var_p, covariance = _moments(wf)
    return {
        "mean_x": mean_x,
        "var_x": var_x,
        "mean_p": mean_p,
        "var_p": var_p,
        "covariance": covariance,
    }


def schrodinger_check_continuous(
    wf: GridWaveFunction, convergence_rtol: float = CONVERGENCE_RTOL
) -> tuple[float, float, float]:
    """Variance product of momentum and position against its lower bound.

    Returns ``(lhs, rhs, gap)`` with ``lhs = var_p * var_x`` and
    ``rhs = (hbar/2)^2 + covariance^2``.  The grid is required to be converged:
    if dropping to every other sample changes ``lhs`` by more than
    ``convergence_rtol`` relatively, NotConverged is raised.
    """
    _, var_x, _, var_p, covariance = _moments(wf)
    lhs = var_p * var_x
    if (wf.n_points + 1) // 2 >= 16:
        coarse = wf.coarsened()
        _, cvar_x, _, cvar_p, _ = _moments(coarse)
        coarse_lhs = cvar_p * cvar_x
        if abs(coarse_lhs - lhs) > convergence_rtol * max(abs(lhs), 1e-300):
            raise NotConverged(
                f"variance product changes by {abs(coarse_lhs - lhs):.3e} "
                f"under grid coarsening; refine the grid"
            )
    rhs = (wf.hbar / 2.0) ** 2 + covariance**2
    return lhs, rhs, lhs - rhs
