"""Closed-form spin-1 and spin-3/2 reference models and their parameter sweeps.

The spin-1 model pairs block-diagonal observables built from the first two
Pauli matrices (with a trailing 1) against the state family ``(x, y, z)``; all
of its bound quantities admit closed forms in ``N = |x|^2 + |y|^2 + |z|^2``,
``theta = arg(x) - arg(y)``, ``c = 2|x||y|cos(theta)`` and
``s = 2|x||y|sin(theta)``.  The spin-3/2 model is a 4x4 pair whose tightened
bound saturates only with the roles of the observables exchanged.  Sweeps are
evaluated with a vectorized version of the generic pipeline so that dense
grids stay cheap.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .bounds import schrodinger_report
from .linalg import PureState, ZeroState, spectral_decomposition

__all__ = [
    "Spin1Params",
    "Spin32Params",
    "Spin1ClosedForms",
    "ExtraTermForms",
    "SweepTable",
    "spin1_instance",
    "spin1_closed_forms",
    "spin1_extra_closed_form",
    "spin32_instance",
    "spin1_numeric_table",
    "sweep_spin1",
    "sweep_spin32",
    "SPIN1_SWEEP_COLUMNS",
    "SPIN32_SWEEP_COLUMNS",
]

PAULI_1 = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=np.complex128)
PAULI_2 = np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=np.complex128)


@dataclass(frozen=True)
class Spin1Params:
    """Unnormalized spin-1 state amplitudes (x, y, z)."""

    x: complex
    y: complex
    z: complex

    @property
    def n_total(self) -> float:
        """Squared norm N of the unnormalized amplitudes."""
        return abs(self.x) ** 2 + abs(self.y) ** 2 + abs(self.z) ** 2

    @property
    def theta(self) -> float:
        """Relative phase arg(x) - arg(y)."""
        return cmath.phase(self.x) - cmath.phase(self.y)

    @property
    def c(self) -> float:
        return 2.0 * abs(self.x) * abs(self.y) * math.cos(self.theta)

    @property
    def s(self) -> float:
        return 2.0 * abs(self.x) * abs(self.y) * math.sin(self.theta)


@dataclass(frozen=True)
class Spin32Params:
    """Spin-3/2 state parameter t for the family (1, 0, 1, t)."""

    t: float

    @property
    def n_total(self) -> float:
        return 2.0 + abs(self.t) ** 2


@dataclass(frozen=True)
class Spin1ClosedForms:
    var_A: float
    var_B: float
    covariance_term: float
    commutator_term: float
    wvop_norm_sq: float
    discord: float


class ExtraTermForms(NamedTuple):
    """Extra term by the discord*variance route and by the direct display form."""

    value: float
    display_form: float


@dataclass(frozen=True)
class SweepTable:
    """Column-labelled numeric table produced by a parameter sweep."""

    columns: tuple[str, ...]
    rows: np.ndarray

    def column(self, name: str) -> np.ndarray:
        return self.rows[:, self.columns.index(name)]


def _block3(two_by_two: np.ndarray, corner: float) -> np.ndarray:
    out = np.zeros((3, 3), dtype=np.complex128)
    out[:2, :2] = two_by_two
    out[2, 2] = corner
    return out


SPIN1_A = _block3(PAULI_1, 1.0)
SPIN1_B = _block3(PAULI_2, 1.0)


def spin1_instance(params: Spin1Params) -> tuple[np.ndarray, np.ndarray, PureState]:
    """The spin-1 observables and normalized state for the given amplitudes."""
    if params.n_total == 0.0:
        raise ZeroState("spin-1 amplitudes (x, y, z) are all zero")
    psi = PureState(np.array([params.x, params.y, params.z], dtype=np.complex128))
    return SPIN1_A.copy(), SPIN1_B.copy(), psi


def spin1_closed_forms(params: Spin1Params) -> Spin1ClosedForms:
    """All closed-form bound quantities of the spin-1 model.

    Each value coincides with the generic numeric pipeline on the same
    instance to 1e-10.  When the state is orthogonal to the +1 eigenspace
    (N + |z|^2 - s = 0, which forces |z| = 0) the generic expressions hit 0/0
    and the exact single-eigenspace forms are used instead.
    """
    n = params.n_total
    if n <= 0.0:
        raise ZeroState("spin-1 amplitudes (x, y, z) are all zero")
    zz = abs(params.z) ** 2
    c = params.c
    s = params.s
    xx_minus_yy = abs(params.x) ** 2 - abs(params.y) ** 2

    var_a = (n**2 - (zz + c) ** 2) / n**2
    var_b = (n**2 - (zz - s) ** 2) / n**2
    cov = ((zz * n - (zz + c) * (zz - s)) / n**2) ** 2
    comm = (xx_minus_yy / n) ** 2
    denom = n + zz - s
    if denom <= 0.0:
        # only the -1 eigenspace carries weight: |A_w|^2 = |<P_1 A>/<P_1>|^2
        wvop = (c**2 + xx_minus_yy**2) / (4.0 * n**2)
        discord = 1.0 - wvop
    elif zz == 0.0:
        wvop = (n * (n - zz - s)) / (n * denom)
        discord = 0.0
    else:
        wvop = (n * (n - zz - s) + 2.0 * zz * (zz + c)) / (n * denom)
        discord = (2.0 * zz / n) * (n - zz - c) / denom
    return Spin1ClosedForms(
        var_A=var_a,
        var_B=var_b,
        covariance_term=cov,
        commutator_term=comm,
        wvop_norm_sq=wvop,
        discord=discord,
    )


def spin1_extra_closed_form(params: Spin1Params) -> ExtraTermForms:
    """Closed-form extra term of the tightened bound, by two algebraic routes.

    ``value`` is the product of the closed-form discord and variance of B; the
    ``display_form`` evaluates ``(2|z|^2/N^3)(N - |z|^2 - c)(N - |z|^2 + s)``
    directly.  The two expressions are algebraically identical and both are
    reported so a sweep can cross-check them pointwise.
    """
    forms = spin1_closed_forms(params)
    n = params.n_total
    zz = abs(params.z) ** 2
    display = (2.0 * zz / n**3) * (n - zz - params.c) * (n - zz + params.s)
    return ExtraTermForms(value=forms.discord * forms.var_B, display_form=display)


def _block4(two_by_two: np.ndarray, d1: float, d2: float) -> np.ndarray:
    out = np.zeros((4, 4), dtype=np.complex128)
    out[:2, :2] = two_by_two
    out[2, 2] = d1
    out[3, 3] = d2
    return out


SPIN32_A = _block4(PAULI_1, 1.0, -1.0)
SPIN32_B = _block4(PAULI_2, 1.0, 0.0)


def spin32_instance(params: Spin32Params) -> tuple[np.ndarray, np.ndarray, PureState]:
    """The spin-3/2 observables and normalized state (1, 0, 1, t)."""
    if not math.isfinite(params.t):
        raise ValueError("t must be finite")
    psi = PureState(np.array([1.0, 0.0, 1.0, params.t], dtype=np.complex128))
    return SPIN32_A.copy(), SPIN32_B.copy(), psi


# Vectorized generic pipeline for batches of spin-1 states.  The observables
# are fixed, so the spectral decomposition of B is computed once and every
# per-state quantity reduces to batched matrix-vector contractions.

_SPIN1_SPEC = spectral_decomposition(SPIN1_B)

SPIN1_TABLE_KEYS = (
    "var_A",
    "var_B",
    "covariance_term",
    "commutator_term",
    "wvop_norm_sq",
    "discord",
    "extra",
    "lhs",
    "schrodinger_rhs",
)


def spin1_numeric_table(states: np.ndarray, zero_tol: float = 1e-12) -> dict[str, np.ndarray]:
    """Generic-pipeline quantities for a batch of spin-1 states.

    ``states`` has one (not necessarily normalized) 3-vector per row.  Masked
    weak values (vanishing projector weight) use a zero fill, which drops out
    of every returned quantity.
    """
    psi = np.ascontiguousarray(states, dtype=np.complex128)
    if psi.ndim != 2 or psi.shape[1] != 3:
        raise ValueError(f"expected an (m, 3) state batch, got shape {psi.shape}")
    norms = np.linalg.norm(psi, axis=1, keepdims=True)
    if np.any(norms == 0.0):
        raise ZeroState("state batch contains a zero vector")
    psi = psi / norms

    a_psi = psi @ SPIN1_A.T
    b_psi = psi @ SPIN1_B.T
    mean_a = np.einsum("mi,mi->m", psi.conj(), a_psi).real
    mean_b = np.einsum("mi,mi->m", psi.conj(), b_psi).real
    var_a = np.maximum(np.einsum("mi,mi->m", a_psi.conj(), a_psi).real - mean_a**2, 0.0)
    var_b = np.maximum(np.einsum("mi,mi->m", b_psi.conj(), b_psi).real - mean_b**2, 0.0)

    cross = np.einsum("mi,mi->m", a_psi.conj(), b_psi)
    comm = cross.imag**2
    cov = (cross.real - mean_a * mean_b) ** 2

    wv_psi = np.zeros_like(psi)
    wvop_norm_sq = np.zeros(psi.shape[0])
    for proj in _SPIN1_SPEC.projectors:
        p_psi = psi @ proj.T
        weight = np.einsum("mi,mi->m", psi.conj(), p_psi).real
        live = weight > zero_tol
        value = np.zeros(psi.shape[0], dtype=np.complex128)
        num = np.einsum("mi,mi->m", p_psi.conj(), a_psi)
        value[live] = num[live] / weight[live]
        wv_psi += value[:, None] * p_psi
        wvop_norm_sq += np.abs(value) ** 2 * np.maximum(weight, 0.0)

    diff = a_psi - wv_psi
    discord = np.maximum(np.einsum("mi,mi->m", diff.conj(), diff).real, 0.0)
    extra = discord * var_b
    return {
        "var_A": var_a,
        "var_B": var_b,
        "covariance_term": cov,
        "commutator_term": comm,
        "wvop_norm_sq": wvop_norm_sq,
        "discord": discord,
        "extra": extra,
        "lhs": var_a * var_b,
        "schrodinger_rhs": comm + cov,
    }


def spin1_closed_table(states: np.ndarray) -> dict[str, np.ndarray]:
    """Closed-form counterparts of :func:`spin1_numeric_table` for a state batch."""
    psi = np.ascontiguousarray(states, dtype=np.complex128)
    ax = np.abs(psi[:, 0])
    ay = np.abs(psi[:, 1])
    az = np.abs(psi[:, 2])
    theta = np.angle(psi[:, 0]) - np.angle(psi[:, 1])
    n = ax**2 + ay**2 + az**2
    zz = az**2
    c = 2.0 * ax * ay * np.cos(theta)
    s = 2.0 * ax * ay * np.sin(theta)

    var_a = (n**2 - (zz + c) ** 2) / n**2
    var_b = (n**2 - (zz - s) ** 2) / n**2
    cov = ((zz * n - (zz + c) * (zz - s)) / n**2) ** 2
    comm = ((ax**2 - ay**2) / n) ** 2
    dxy = ax**2 - ay**2
    denom = n + zz - s
    masked = denom <= 0.0  # state orthogonal to the +1 eigenspace (forces zz = 0)
    safe = np.where(masked, 1.0, denom)
    wvop = np.where(
        masked,
        (c**2 + dxy**2) / (4.0 * n**2),
        (n * (n - zz - s) + 2.0 * zz * (zz + c)) / (n * safe),
    )
    discord = np.where(
        masked,
        1.0 - (c**2 + dxy**2) / (4.0 * n**2),
        np.where(zz > 0.0, (2.0 * zz / n) * (n - zz - c) / safe, 0.0),
    )
    extra = discord * var_b
    extra_display = (2.0 * zz / n**3) * (n - zz - c) * (n - zz + s)
    return {
        "var_A": var_a,
        "var_B": var_b,
        "covariance_term": cov,
        "commutator_term": comm,
        "wvop_norm_sq": wvop,
        "discord": discord,
        "extra": extra,
        "extra_display": extra_display,
        "lhs": var_a * var_b,
        "schrodinger_rhs": comm + cov,
    }


SPIN1_SWEEP_COLUMNS = (
    "abs_x",
    "abs_y",
    "abs_z",
    "extra_AB_closed",
    "extra_AB_numeric",
    "lhs",
    "schrodinger_rhs",
    "tight_rhs",
)


def spin1_sphere_grid(resolution: int, theta: float = 0.0) -> np.ndarray:
    """States on the unit-octant sphere, uniform in spherical angles.

    Rows are ordered polar-angle major, azimuthal minor.  The relative phase
    ``theta`` is carried by the first amplitude.
    """
    if resolution < 2:
        raise ValueError("resolution must be at least 2 per axis")
    polar = np.linspace(0.0, math.pi / 2.0, resolution)
    azimuth = np.linspace(0.0, math.pi / 2.0, resolution)
    pp, aa = np.meshgrid(polar, azimuth, indexing="ij")
    abs_x = (np.sin(pp) * np.cos(aa)).ravel()
    abs_y = (np.sin(pp) * np.sin(aa)).ravel()
    abs_z = np.cos(pp).ravel()
    states = np.empty((abs_x.size, 3), dtype=np.complex128)
    states[:, 0] = abs_x * cmath.exp(1j * theta)
    states[:, 1] = abs_y
    states[:, 2] = abs_z
    return states


def sweep_spin1(resolution: int, theta: float = 0.0) -> SweepTable:
    """Extra-term sweep over the unit-sphere octant at a fixed relative phase."""
    states = spin1_sphere_grid(resolution, theta)
    numeric = spin1_numeric_table(states)
    closed = spin1_closed_table(states)
    rows = np.column_stack(
        [
            np.abs(states[:, 0]),
            np.abs(states[:, 1]),
            np.abs(states[:, 2]),
            closed["extra"],
            numeric["extra"],
            numeric["lhs"],
            numeric["schrodinger_rhs"],
            numeric["schrodinger_rhs"] + numeric["extra"],
        ]
    )
    return SweepTable(columns=SPIN1_SWEEP_COLUMNS, rows=rows)


SPIN32_SWEEP_COLUMNS = (
    "t",
    "lhs",
    "schrodinger_rhs",
    "rhs_plus_tilde",
    "rhs_plus_AB",
    "rhs_plus_BA",
    "rhs_plus_max",
)


def sweep_spin32(t_min: float, t_max: float, steps: int) -> SweepTable:
    """Bound contributions of the spin-3/2 model over a range of t."""
    if steps < 2:
        raise ValueError("steps must be at least 2")
    rows = np.empty((steps, len(SPIN32_SWEEP_COLUMNS)))
    for k, t in enumerate(np.linspace(t_min, t_max, steps)):
        a, b, psi = spin32_instance(Spin32Params(t=float(t)))
        report = schrodinger_report(a, b, psi)
        rhs = report.schrodinger_rhs
        rows[k] = (
            t,
            report.lhs,
            rhs,
            rhs + report.extra_E_tilde,
            rhs + report.extra_E_AB,
            rhs + report.extra_E_BA,
            rhs + report.extra_E_max,
        )
    return SweepTable(columns=SPIN32_SWEEP_COLUMNS, rows=rows)
