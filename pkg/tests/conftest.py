"""Shared fixtures and independent oracles for the test suite.

The brute-force oracle here deliberately avoids the package's spectral
machinery: the spin-1 projectors are hard-coded closed forms, and weak values
and norms are evaluated straight from their defining expressions, so the
package pipeline is always checked against an independent route.
"""

from __future__ import annotations

import numpy as np
import pytest

from wvbounds.linalg import PureState

# Closed-form projectors of the spin-1 measured observable (eigenvalues -1, +1).
SPIN1_PROJ_MINUS = 0.5 * np.array(
    [[1.0, 1.0j, 0.0], [-1.0j, 1.0, 0.0], [0.0, 0.0, 0.0]], dtype=np.complex128
)
SPIN1_PROJ_PLUS = 0.5 * np.array(
    [[1.0, -1.0j, 0.0], [1.0j, 1.0, 0.0], [0.0, 0.0, 2.0]], dtype=np.complex128
)


def brute_force_weak_values(a, projectors, psi: PureState, fill=0.0, zero_tol=1e-12):
    """Weak values straight from <P_i A> / <P_i> with an explicit projector list."""
    vec = psi.amplitudes
    values = []
    for proj in projectors:
        weight = float(np.vdot(vec, proj @ vec).real)
        if weight > zero_tol:
            values.append(complex(np.vdot(proj @ vec, a @ vec) / weight))
        else:
            values.append(complex(fill))
    return values


def brute_force_discord(a, eigenpairs, psi: PureState):
    """|A psi - A_w(B) psi|^2 from an explicit (eigenvalue, projector) list."""
    vec = psi.amplitudes
    proxy = np.zeros_like(vec)
    for value, proj in zip(
        brute_force_weak_values(a, [p for _, p in eigenpairs], psi), (p for _, p in eigenpairs)
    ):
        proxy += value * (proj @ vec)
    diff = a @ vec - proxy
    return float(np.vdot(diff, diff).real)


def brute_force_variance(x, psi: PureState) -> float:
    vec = psi.amplitudes
    mean = complex(np.vdot(vec, x @ vec)).real
    sq = complex(np.vdot(vec, x @ (x @ vec))).real
    return sq - mean**2


def random_hermitian(rng: np.random.Generator, dim: int) -> np.ndarray:
    m = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    return (m + m.conj().T) / 2.0


def random_state(rng: np.random.Generator, dim: int) -> PureState:
    return PureState(rng.standard_normal(dim) + 1j * rng.standard_normal(dim))


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20260811)
