"""Variance uncertainty bounds: Kennard-Robertson, Schrodinger, decomposed, tightened.

For Hermitian observables ``A`` and ``B`` in a state ``psi`` this module
evaluates the variance product against the commutator and covariance bounds,
the two decomposed Cauchy-Schwarz inequalities built from the real and
imaginary parts of the weak-value operator, and the tightened bound that adds
the discord term ``E(A, B) = |A - A_w(B)|^2 * var(B)`` (with its symmetric
variants).  Equality diagnostics recover the proportionality constants of the
saturation conditions by least squares.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .linalg import (
    DimensionMismatch,
    PureState,
    require_hermitian,
    spectral_decomposition,
)
from .weakvalue import discord_norm_sq, weak_value_function

__all__ = [
    "UncertaintyReport",
    "EqualityDiagnosis",
    "variance",
    "schrodinger_report",
    "decomposed_bounds",
    "diagnose_equality",
]

# Residual and gap thresholds for declaring equality, scaled by max(1, lhs).
EQUALITY_RESIDUAL_TOL = 1e-8

# Below this norm of (B - <B>)|psi> the least-squares fit is skipped.
FIT_FLOOR = 1e-12

REPORT_FIELDS = (
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


@dataclass(frozen=True)
class UncertaintyReport:
    """All variance-bound quantities for one (A, B, psi) instance."""

    var_A: float
    var_B: float
    commutator_term: float
    covariance_term: float
    schrodinger_rhs: float
    extra_E_AB: float
    extra_E_BA: float
    extra_E_max: float
    extra_E_tilde: float
    lhs: float
    gap_schrodinger: float
    gap_tight_AB: float
    gap_tight_max: float
    equality_residual_cov: float
    equality_residual_kr: float
    lambda_fit: float
    mu_fit: float
    conditioning_warnings: tuple[str, ...] = ()


@dataclass(frozen=True)
class EqualityDiagnosis:
    """Saturation diagnostics for the decomposed and combined inequalities.

    The residuals measure how far ``(Re A_w(B) - <A>)|psi>`` and
    ``Im A_w(B)|psi>`` are from real multiples of ``(B - <B>)|psi>``, relative
    to the norm of the latter (or absolutely, against the zero vector, when
    that norm vanishes).  ``proportionality_constant`` is populated only when
    ``B`` has exactly two distinct eigenvalues, in which case it reconstructs
    ``(A_w(B) - <A>)|psi>`` from ``(B - <B>)|psi>`` exactly.
    """

    residual_cov: float
    residual_kr: float
    schrodinger_equality: bool
    tight_equality: bool
    proportionality_constant: complex | None
    lambda_fit: float
    mu_fit: float


def variance(x, psi: PureState) -> float:
    """Variance ``<X^2> - <X>^2`` of a Hermitian observable, clamped to >= 0."""
    xm = require_hermitian(x)
    vec = psi.amplitudes
    if psi.dim != xm.shape[0]:
        raise DimensionMismatch(f"state dimension {psi.dim} does not match {xm.shape[0]}")
    x_vec = xm @ vec
    mean = float(np.vdot(vec, x_vec).real)
    centered = x_vec - mean * vec
    return max(float(np.vdot(centered, centered).real), 0.0)


def _centered_vector(xm: np.ndarray, vec: np.ndarray) -> tuple[np.ndarray, float]:
    x_vec = xm @ vec
    mean = float(np.vdot(vec, x_vec).real)
    return x_vec - mean * vec, mean


def _real_lsq(target: np.ndarray, direction: np.ndarray, norm_sq: float) -> tuple[float, float]:
    """Real least-squares coefficient of ``target ~ coeff * direction`` and residual."""
    if norm_sq < FIT_FLOOR**2:
        return 0.0, float(np.linalg.norm(target))
    coeff = float(np.vdot(direction, target).real) / norm_sq
    residual = float(np.linalg.norm(target - coeff * direction)) / math.sqrt(norm_sq)
    return coeff, residual


def _equality_fits(
    a: np.ndarray, b: np.ndarray, psi: PureState, wv_operator: np.ndarray
) -> tuple[float, float, float, float, float]:
    """lambda/mu fits, their residuals, and the combined-condition residual."""
    vec = psi.amplitudes
    db_vec, _ = _centered_vector(b, vec)
    da_vec, mean_a = _centered_vector(a, vec)
    nb_sq = float(np.vdot(db_vec, db_vec).real)

    w_vec = wv_operator @ vec
    w_dag_vec = wv_operator.conj().T @ vec
    re_vec = (w_vec + w_dag_vec) / 2.0 - mean_a * vec
    im_vec = (w_vec - w_dag_vec) / 2.0j

    lam, residual_cov = _real_lsq(re_vec, db_vec, nb_sq)
    mu, residual_kr = _real_lsq(im_vec, db_vec, nb_sq)

    if nb_sq < FIT_FLOOR**2:
        schr_residual = float(np.linalg.norm(da_vec))
    else:
        kappa = np.vdot(db_vec, da_vec) / nb_sq
        schr_residual = float(np.linalg.norm(da_vec - kappa * db_vec)) / math.sqrt(nb_sq)
    return lam, mu, residual_cov, residual_kr, schr_residual


def schrodinger_report(
    a,
    b,
    psi: PureState,
    fill=None,
    zero_tol: float = 1e-12,
    rel_tol: float = 1e-9,
    hermitian_rtol: float = 1e-9,
) -> UncertaintyReport:
    """Evaluate every bound and extra term for one (A, B, psi) instance.

    ``fill`` feeds the weak-value function of ``A`` relative to ``B``; it does
    not influence any reported quantity (only masked weak values themselves).
    """
    am = require_hermitian(a, rtol=hermitian_rtol)
    bm = require_hermitian(b, rtol=hermitian_rtol)
    if am.shape != bm.shape:
        raise DimensionMismatch(f"operator shapes differ: {am.shape} vs {bm.shape}")
    vec = psi.amplitudes
    if psi.dim != am.shape[0]:
        raise DimensionMismatch(f"state dimension {psi.dim} does not match {am.shape[0]}")
    # compute with the Hermitian part: exact inputs pass through bitwise, and
    # inputs accepted under a loosened tolerance stay consistent downstream
    am = (am + am.conj().T) / 2.0
    bm = (bm + bm.conj().T) / 2.0

    a_vec = am @ vec
    b_vec = bm @ vec
    mean_a = float(np.vdot(vec, a_vec).real)
    mean_b = float(np.vdot(vec, b_vec).real)
    var_a = max(float(np.vdot(a_vec, a_vec).real) - mean_a**2, 0.0)
    var_b = max(float(np.vdot(b_vec, b_vec).real) - mean_b**2, 0.0)

    cross = np.vdot(a_vec, b_vec)  # <AB> for Hermitian A
    commutator_term = float(cross.imag) ** 2
    covariance_term = (float(cross.real) - mean_a * mean_b) ** 2
    schrodinger_rhs = commutator_term + covariance_term
    lhs = var_a * var_b

    spec_b = spectral_decomposition(bm, rel_tol=rel_tol)
    spec_a = spectral_decomposition(am, rel_tol=rel_tol)
    wv_ab = weak_value_function(am, spec_b, psi, fill=fill, zero_tol=zero_tol)
    wv_ba = weak_value_function(bm, spec_a, psi, zero_tol=zero_tol)
    discord_ab = discord_norm_sq(am, spec_b, psi, zero_tol=zero_tol).direct
    discord_ba = discord_norm_sq(bm, spec_a, psi, zero_tol=zero_tol).direct

    extra_ab = discord_ab * var_b
    extra_ba = discord_ba * var_a
    extra_max = max(extra_ab, extra_ba)
    extra_tilde = discord_ab * discord_ba

    lam, mu, residual_cov, residual_kr, _ = _equality_fits(am, bm, psi, wv_ab.operator)

    warnings = list(wv_ab.warnings)
    warnings.extend(f"[roles swapped] {w}" for w in wv_ba.warnings)
    if var_b < FIT_FLOOR:
        warnings.append("trivial instance: psi is an eigenstate of B (var_B = 0)")
    if var_a < FIT_FLOOR:
        warnings.append("trivial instance: psi is an eigenstate of A (var_A = 0)")

    return UncertaintyReport(
        var_A=var_a,
        var_B=var_b,
        commutator_term=commutator_term,
        covariance_term=covariance_term,
        schrodinger_rhs=schrodinger_rhs,
        extra_E_AB=extra_ab,
        extra_E_BA=extra_ba,
        extra_E_max=extra_max,
        extra_E_tilde=extra_tilde,
        lhs=lhs,
        gap_schrodinger=lhs - schrodinger_rhs,
        gap_tight_AB=lhs - (schrodinger_rhs + extra_ab),
        gap_tight_max=lhs - (schrodinger_rhs + extra_max),
        equality_residual_cov=residual_cov,
        equality_residual_kr=residual_kr,
        lambda_fit=lam,
        mu_fit=mu,
        conditioning_warnings=tuple(warnings),
    )


def decomposed_bounds(a, b, psi: PureState) -> tuple[float, float, float, float]:
    """The two Cauchy-Schwarz halves of the Schrodinger inequality.

    Returns ``(lhs_cov, rhs_cov, lhs_kr, rhs_kr)`` with
    ``lhs_cov = |Re A_w(B) - <A>| * |B - <B>|`` against the covariance bound and
    ``lhs_kr = |Im A_w(B)| * |B - <B>|`` against the commutator bound.
    """
    am = require_hermitian(a)
    bm = require_hermitian(b)
    if am.shape != bm.shape:
        raise DimensionMismatch(f"operator shapes differ: {am.shape} vs {bm.shape}")
    vec = psi.amplitudes
    if psi.dim != am.shape[0]:
        raise DimensionMismatch(f"state dimension {psi.dim} does not match {am.shape[0]}")

    spec_b = spectral_decomposition(bm)
    wv = weak_value_function(am, spec_b, psi)
    a_vec = am @ vec
    b_vec = bm @ vec
    mean_a = float(np.vdot(vec, a_vec).real)
    mean_b = float(np.vdot(vec, b_vec).real)
    db_norm = float(np.linalg.norm(b_vec - mean_b * vec))

    w_vec = wv.operator @ vec
    w_dag_vec = wv.operator.conj().T @ vec
    re_vec = (w_vec + w_dag_vec) / 2.0 - mean_a * vec
    im_vec = (w_vec - w_dag_vec) / 2.0j

    cross = np.vdot(a_vec, b_vec)
    lhs_cov = float(np.linalg.norm(re_vec)) * db_norm
    rhs_cov = abs(float(cross.real) - mean_a * mean_b)
    lhs_kr = float(np.linalg.norm(im_vec)) * db_norm
    rhs_kr = abs(float(cross.imag))
    return lhs_cov, rhs_cov, lhs_kr, rhs_kr


def diagnose_equality(a, b, psi: PureState) -> EqualityDiagnosis:
    """Diagnose saturation of the decomposed, combined, and tightened bounds."""
    am = require_hermitian(a)
    bm = require_hermitian(b)
    if am.shape != bm.shape:
        raise DimensionMismatch(f"operator shapes differ: {am.shape} vs {bm.shape}")
    if psi.dim != am.shape[0]:
        raise DimensionMismatch(f"state dimension {psi.dim} does not match {am.shape[0]}")

    spec_b = spectral_decomposition(bm)
    wv = weak_value_function(am, spec_b, psi)
    lam, mu, residual_cov, residual_kr, schr_residual = _equality_fits(
        am, bm, psi, wv.operator
    )
    lhs = variance(am, psi) * variance(bm, psi)
    tol = EQUALITY_RESIDUAL_TOL * max(1.0, lhs)

    constant: complex | None = None
    if spec_b.n_distinct == 2 and not wv.fill_mask.any():
        b1, b2 = spec_b.distinct_eigenvalues
        constant = complex((wv.values[0] - wv.values[1]) / (b1 - b2))

    return EqualityDiagnosis(
        residual_cov=residual_cov,
        residual_kr=residual_kr,
        schrodinger_equality=schr_residual < tol,
        tight_equality=max(residual_cov, residual_kr) < tol,
        proportionality_constant=constant,
        lambda_fit=lam,
        mu_fit=mu,
    )
