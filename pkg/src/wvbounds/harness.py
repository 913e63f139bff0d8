"""Seeded random verification harness for the bound hierarchy.

Instances are random Hermitian pairs with a random state, optionally engineered
so that the measured observable has a repeated eigenvalue (conjugated
block-diagonal construction) or so that the state is orthogonal to one of its
eigenvectors.  Every instance is pushed through the full pipeline and checked
against the inequality chain, the Pythagorean identity, the three discord
routes, fill invariance, and the elementary inner-product properties.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .bounds import schrodinger_report
from .linalg import PureState, hs_inner, spectral_decomposition
from .weakvalue import discord_norm_sq, weak_value_function

__all__ = [
    "DEGENERACY_MODES",
    "RandomHarnessConfig",
    "InstanceViolations",
    "HarnessSummary",
    "random_hermitian",
    "random_state",
    "random_unitary",
    "degenerate_hermitian",
    "orthogonal_state",
    "build_instance",
    "check_instance",
    "run_random_harness",
]

DEGENERACY_MODES = ("none", "degenerate_B", "orthogonal_psi")

CHAIN_TOL = 1e-9
PYTHAGOREAN_TOL = 1e-9
DISCORD_ROUTES_TOL = 1e-9
FILL_INVARIANCE_TOL = 1e-10
CAUCHY_SCHWARZ_TOL = 1e-10

ALTERNATE_FILL = 5.0 - 3.0j

INVARIANT_NAMES = (
    "chain",
    "pythagorean",
    "discord_routes",
    "fill_invariance",
    "cauchy_schwarz",
    "conjugate_symmetry",
)

_TOLERANCES = {
    "chain": CHAIN_TOL,
    "pythagorean": PYTHAGOREAN_TOL,
    "discord_routes": DISCORD_ROUTES_TOL,
    "fill_invariance": FILL_INVARIANCE_TOL,
    "cauchy_schwarz": CAUCHY_SCHWARZ_TOL,
    "conjugate_symmetry": 0.0,
}


@dataclass(frozen=True)
class RandomHarnessConfig:
    """Configuration of one harness run."""

    seed: int
    dims: tuple[int, ...]
    samples_per_dim: int
    degeneracy_modes: tuple[str, ...] = DEGENERACY_MODES

    def __post_init__(self) -> None:
        if self.samples_per_dim < 1:
            raise ValueError("samples_per_dim must be at least 1")
        for mode in self.degeneracy_modes:
            if mode not in DEGENERACY_MODES:
                raise ValueError(f"unknown degeneracy mode {mode!r}")


@dataclass(frozen=True)
class InstanceViolations:
    """Per-invariant violation magnitudes of one instance (0 means satisfied)."""

    magnitudes: dict[str, float]

    @property
    def worst(self) -> float:
        return max(self.magnitudes.values())

    @property
    def passed(self) -> bool:
        return self.worst <= 0.0


@dataclass
class HarnessSummary:
    """Aggregate result of a harness run."""

    checked: int = 0
    failures: int = 0
    max_violation: dict[str, float] = field(
        default_factory=lambda: {name: 0.0 for name in INVARIANT_NAMES}
    )
    first_failure: dict | None = None


def random_hermitian(rng: np.random.Generator, dim: int) -> np.ndarray:
    """Standard-normal complex matrix, symmetrized to Hermitian."""
    m = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    return (m + m.conj().T) / 2.0


def random_state(rng: np.random.Generator, dim: int) -> PureState:
    """Normalized standard-normal complex vector."""
    return PureState(rng.standard_normal(dim) + 1j * rng.standard_normal(dim))


def random_unitary(rng: np.random.Generator, dim: int) -> np.ndarray:
    """Haar-ish unitary from the QR factorization of a complex normal matrix."""
    m = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    q, r = np.linalg.qr(m)
    return q * (np.diag(r) / np.abs(np.diag(r)))


def degenerate_hermitian(rng: np.random.Generator, dim: int) -> np.ndarray:
    """Hermitian matrix with at least one repeated eigenvalue."""
    n_distinct = int(rng.integers(1, dim)) if dim > 1 else 1
    values = rng.standard_normal(n_distinct)
    assignment = np.concatenate(
        [np.arange(n_distinct), rng.integers(0, n_distinct, size=dim - n_distinct)]
    )
    u = random_unitary(rng, dim)
    return (u * values[assignment]) @ u.conj().T


def orthogonal_state(rng: np.random.Generator, b: np.ndarray) -> PureState:
    """State orthogonal to one randomly chosen eigenvector of ``b``."""
    dim = b.shape[0]
    _, vectors = np.linalg.eigh(b)
    column = vectors[:, int(rng.integers(dim))]
    while True:
        raw = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
        raw -= column * np.vdot(column, raw)
        if np.linalg.norm(raw) > 1e-6:
            return PureState(raw)


def build_instance(
    rng: np.random.Generator, dim: int, mode: str
) -> tuple[np.ndarray, np.ndarray, PureState]:
    """One random (A, B, psi) instance in the given degeneracy mode."""
    a = random_hermitian(rng, dim)
    if mode == "degenerate_B":
        b = degenerate_hermitian(rng, dim)
        psi = random_state(rng, dim)
    elif mode == "orthogonal_psi":
        b = random_hermitian(rng, dim)
        psi = orthogonal_state(rng, b)
    else:
        b = random_hermitian(rng, dim)
        psi = random_state(rng, dim)
    return a, b, psi


def _chain_violation(report) -> float:
    # lhs >= rhs + E_max >= rhs + E_AB >= rhs + E_tilde >= rhs >= commutator,
    # each link allowed slack down to -CHAIN_TOL
    links = (
        report.lhs - (report.schrodinger_rhs + report.extra_E_max),
        report.extra_E_max - report.extra_E_AB,
        report.extra_E_AB - report.extra_E_tilde,
        report.extra_E_tilde,
        report.covariance_term,
    )
    return max(0.0, -(min(links) + CHAIN_TOL))


def check_instance(a: np.ndarray, b: np.ndarray, psi: PureState) -> InstanceViolations:
    """Run every harness invariant on one instance; returns violation magnitudes."""
    report = schrodinger_report(a, b, psi)
    spec_b = spectral_decomposition(b)
    spec_a = spectral_decomposition(a)

    out = {name: 0.0 for name in INVARIANT_NAMES}
    out["chain"] = _chain_violation(report)

    wv = weak_value_function(a, spec_b, psi)
    breakdown = discord_norm_sq(a, spec_b, psi)
    vec = psi.amplitudes
    centered = wv.operator @ vec - (
        float(np.vdot(vec, a @ vec).real) * vec
    )
    proxy_var = float(np.vdot(centered, centered).real)
    pyth = abs(report.var_A - (breakdown.direct + proxy_var))
    out["pythagorean"] = max(0.0, pyth - PYTHAGOREAN_TOL)

    breakdown_ba = discord_norm_sq(b, spec_a, psi)
    spread = max(
        abs(breakdown.direct - breakdown.by_subtraction),
        abs(breakdown.direct - breakdown.by_sum_formula),
        abs(breakdown_ba.direct - breakdown_ba.by_subtraction),
        abs(breakdown_ba.direct - breakdown_ba.by_sum_formula),
    )
    out["discord_routes"] = max(0.0, spread - DISCORD_ROUTES_TOL)

    if wv.fill_mask.any():
        alt = schrodinger_report(
            a, b, psi, fill=np.full(spec_b.n_distinct, ALTERNATE_FILL)
        )
        drift = max(
            abs(getattr(report, name) - getattr(alt, name))
            for name in (
                "var_A",
                "var_B",
                "commutator_term",
                "covariance_term",
                "schrodinger_rhs",
                "extra_E_AB",
                "extra_E_BA",
                "extra_E_max",
                "extra_E_tilde",
                "lhs",
                "gap_schrodinger",
                "gap_tight_AB",
                "gap_tight_max",
                "equality_residual_cov",
                "equality_residual_kr",
                "lambda_fit",
                "mu_fit",
            )
        )
        out["fill_invariance"] = max(0.0, drift - FILL_INVARIANCE_TOL)

    mean_a = float(np.vdot(vec, a @ vec).real)
    mean_b = float(np.vdot(vec, b @ vec).real)
    da = a - mean_a * np.eye(a.shape[0])
    db = b - mean_b * np.eye(b.shape[0])
    cs = abs(hs_inner(da, db, psi)) ** 2 - report.var_A * report.var_B
    out["cauchy_schwarz"] = max(0.0, cs - CAUCHY_SCHWARZ_TOL)

    forward = hs_inner(a, b, psi)
    backward = hs_inner(b, a, psi)
    out["conjugate_symmetry"] = abs(forward.conjugate() - backward)

    return InstanceViolations(magnitudes=out)


def run_random_harness(config: RandomHarnessConfig, stop_on_failure: bool = True) -> HarnessSummary:
    """Check ``samples_per_dim`` instances per dimension, cycling degeneracy modes."""
    summary = HarnessSummary()
    modes = config.degeneracy_modes
    for dim in config.dims:
        rng = np.random.default_rng(np.random.SeedSequence([config.seed, dim]))
        for index in range(config.samples_per_dim):
            mode = modes[index % len(modes)]
            a, b, psi = build_instance(rng, dim, mode)
            violations = check_instance(a, b, psi)
            summary.checked += 1
            for name, magnitude in violations.magnitudes.items():
                if magnitude > summary.max_violation[name]:
                    summary.max_violation[name] = magnitude
            if not violations.passed:
                summary.failures += 1
                if summary.first_failure is None:
                    summary.first_failure = {
                        "seed": config.seed,
                        "dim": dim,
                        "index": index,
                        "mode": mode,
                        "a": a,
                        "b": b,
                        "psi": psi,
                        "violations": violations.magnitudes,
                    }
                if stop_on_failure:
                    return summary
    return summary
