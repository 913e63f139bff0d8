"""Weak-value functions and operators, and the discord norm they induce.

Given a Hermitian observable ``A``, the spectral decomposition of a second
observable ``B``, and a state ``psi``, the weak-value function assigns to each
distinct eigenvalue ``b_i`` the value ``<P_i A> / <P_i>`` whenever the
projector weight ``<P_i>`` is nonzero; where the weight vanishes the value is
a caller-supplied fill constant that provably drops out of every physical
quantity.  The weak-value operator ``sum_i values[i] P_i`` is the best proxy
for ``A`` inside the commutative algebra generated by ``B``, and the squared
distance ``|A - A_w(B)|^2`` between the two (the discord) is computed here by
three independent routes that must agree.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .linalg import (
    DimensionMismatch,
    PureState,
    SpectralDecomposition,
    as_operator,
    hs_inner,
)

__all__ = [
    "FillLengthMismatch",
    "WeakValueData",
    "DiscordBreakdown",
    "weak_value_function",
    "weak_value_operator",
    "re_part",
    "im_part",
    "discord_norm_sq",
    "projection_identity_residual",
]

DEFAULT_ZERO_TOL = 1e-12

# Weights between the zero threshold and this floor give finite but possibly
# wildly amplified weak values; they are computed and flagged, not masked.
CONDITIONING_FLOOR = 1e-8

CLAMP_NEGATIVE = 1e-12


class FillLengthMismatch(ValueError):
    """Fill constants must supply one entry per distinct eigenvalue."""


@dataclass(frozen=True)
class WeakValueData:
    """Weak values of one observable relative to another's eigenspaces.

    ``values[i]`` is the weak value at the i-th distinct eigenvalue;
    ``fill_mask[i]`` marks indices where the projector weight vanished and the
    value is the fill constant.  ``weights[i]`` is ``<P_i>`` clamped to be
    nonnegative, and ``operator`` is the assembled ``sum_i values[i] P_i``.
    """

    values: np.ndarray
    fill_mask: np.ndarray
    operator: np.ndarray
    spectral: SpectralDecomposition
    weights: np.ndarray
    warnings: tuple[str, ...] = ()


@dataclass(frozen=True)
class DiscordBreakdown:
    """The discord ``|A - A_w(B)|^2`` computed by three routes.

    ``direct`` evaluates the norm head-on, ``by_subtraction`` uses
    ``|A|^2 - |A_w(B)|^2``, and ``by_sum_formula`` sums the zero-weight and
    degenerate-eigenspace contributions.  The two contribution fields
    partition ``by_sum_formula``.
    """

    direct: float
    by_subtraction: float
    by_sum_formula: float
    zero_expectation_contribution: float
    degenerate_contribution: float


def _clamp(value: float) -> float:
    return 0.0 if -CLAMP_NEGATIVE <= value < 0.0 else value


def weak_value_function(
    a,
    b_spec: SpectralDecomposition,
    psi: PureState,
    fill=None,
    zero_tol: float = DEFAULT_ZERO_TOL,
) -> WeakValueData:
    """Evaluate the weak-value function of ``a`` over the eigenspaces of ``b_spec``.

    ``fill`` supplies the (arbitrary) value used at indices with vanishing
    projector weight, one entry per distinct eigenvalue; it defaults to zeros.
    """
    am = as_operator(a)
    dim = b_spec.dim
    if am.shape[0] != dim:
        raise DimensionMismatch(
            f"observable dimension {am.shape[0]} does not match spectral dimension {dim}"
        )
    if psi.dim != dim:
        raise DimensionMismatch(f"state dimension {psi.dim} does not match {dim}")
    n = b_spec.n_distinct
    if fill is None:
        fill_values = np.zeros(n, dtype=np.complex128)
    else:
        fill_values = np.asarray(fill, dtype=np.complex128).reshape(-1)
        if fill_values.size != n:
            raise FillLengthMismatch(
                f"fill has {fill_values.size} entries, expected {n} (one per distinct eigenvalue)"
            )

    vec = psi.amplitudes
    a_vec = am @ vec
    values = np.empty(n, dtype=np.complex128)
    weights = np.empty(n, dtype=float)
    mask = np.zeros(n, dtype=bool)
    notes: list[str] = []
    operator = np.zeros((dim, dim), dtype=np.complex128)
    for i, proj in enumerate(b_spec.projectors):
        p_vec = proj @ vec
        weight = max(float(np.vdot(vec, p_vec).real), 0.0)
        weights[i] = weight
        if weight > zero_tol:
            values[i] = np.vdot(p_vec, a_vec) / weight
            if weight <= CONDITIONING_FLOOR:
                notes.append(
                    f"weak value at distinct eigenvalue index {i} is ill-conditioned: "
                    f"projector weight {weight:.3e} is below {CONDITIONING_FLOOR:.0e}"
                )
        else:
            values[i] = fill_values[i]
            mask[i] = True
        operator += values[i] * proj
    return WeakValueData(
        values=values,
        fill_mask=mask,
        operator=operator,
        spectral=b_spec,
        weights=weights,
        warnings=tuple(notes),
    )


def weak_value_operator(data: WeakValueData) -> np.ndarray:
    """The assembled weak-value operator ``sum_i values[i] P_i``."""
    return data.operator


def re_part(x) -> np.ndarray:
    """Hermitian part ``(X + X^dag) / 2``."""
    xm = as_operator(x)
    return (xm + xm.conj().T) / 2.0


def im_part(x) -> np.ndarray:
    """Anti-Hermitian part divided by i: ``(X - X^dag) / 2i``; itself Hermitian."""
    xm = as_operator(x)
    return (xm - xm.conj().T) / 2.0j


def discord_norm_sq(
    a,
    b_spec: SpectralDecomposition,
    psi: PureState,
    fill=None,
    zero_tol: float = DEFAULT_ZERO_TOL,
) -> DiscordBreakdown:
    """Compute ``|A - A_w(B)|^2`` by three mutually checking routes.

    The sum-formula route adds ``<A P_i A>`` over zero-weight indices and
    ``<A (P_i - |P_i psi><P_i psi| / <P_i>) A>`` over degenerate indices with
    nonzero weight; for non-degenerate nonzero-weight indices that projector
    difference vanishes identically.
    """
    data = weak_value_function(a, b_spec, psi, fill=fill, zero_tol=zero_tol)
    am = as_operator(a)
    vec = psi.amplitudes
    a_vec = am @ vec

    diff = a_vec - data.operator @ vec
    direct = _clamp(float(np.vdot(diff, diff).real))

    norm_a_sq = float(np.vdot(a_vec, a_vec).real)
    live = ~data.fill_mask
    norm_w_sq = float((np.abs(data.values[live]) ** 2 * data.weights[live]).sum())
    by_subtraction = _clamp(norm_a_sq - norm_w_sq)

    zero_contrib = 0.0
    degen_contrib = 0.0
    for i, proj in enumerate(b_spec.projectors):
        if data.fill_mask[i]:
            zero_contrib += float(np.vdot(a_vec, proj @ a_vec).real)
        elif b_spec.multiplicities[i] >= 2:
            p_vec = proj @ vec
            overlap = np.vdot(p_vec, a_vec)
            degen_contrib += float(
                np.vdot(a_vec, proj @ a_vec).real - abs(overlap) ** 2 / data.weights[i]
            )
    zero_contrib = _clamp(zero_contrib)
    degen_contrib = _clamp(degen_contrib)
    return DiscordBreakdown(
        direct=direct,
        by_subtraction=by_subtraction,
        by_sum_formula=_clamp(zero_contrib + degen_contrib),
        zero_expectation_contribution=zero_contrib,
        degenerate_contribution=degen_contrib,
    )


def projection_identity_residual(a, b_spec: SpectralDecomposition, psi: PureState, f_values) -> float:
    """Residual of ``(A, f(B)) == (A_w(B), f(B))`` for ``f(B) = sum_i f_i P_i``.

    The weak-value operator is the orthogonal projection of ``A`` onto the
    algebra generated by ``B``, so this residual stays at rounding level for
    every choice of ``f_values``.
    """
    f = np.asarray(f_values, dtype=np.complex128).reshape(-1)
    if f.size != b_spec.n_distinct:
        raise FillLengthMismatch(
            f"f_values has {f.size} entries, expected {b_spec.n_distinct}"
        )
    f_op = np.zeros((b_spec.dim, b_spec.dim), dtype=np.complex128)
    for fi, proj in zip(f, b_spec.projectors):
        f_op += fi * proj
    data = weak_value_function(a, b_spec, psi)
    return abs(hs_inner(a, f_op, psi) - hs_inner(data.operator, f_op, psi))
