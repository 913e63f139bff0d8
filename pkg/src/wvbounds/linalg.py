"""Dense complex matrices, Hermitian spectra, and state-dependent operator geometry.

Operators are plain complex ``numpy`` arrays; states and spectral data are
immutable dataclasses.  Every inner product and norm in this package is taken
with respect to a fixed pure state: ``(X, Y) = <psi| X^dag Y |psi>``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = [
    "DimensionMismatch",
    "NonHermitianInput",
    "NoConvergence",
    "ZeroState",
    "PureState",
    "SpectralDecomposition",
    "as_operator",
    "require_hermitian",
    "eig_hermitian",
    "group_spectrum",
    "spectral_decomposition",
    "hs_inner",
    "op_norm_sq",
    "commutator",
    "anticommutator",
    "expectation",
]

HERMITIAN_RTOL = 1e-9
DEGENERACY_RTOL = 1e-9
NORM_CLAMP = 1e-14


class DimensionMismatch(ValueError):
    """Operands act on spaces of different dimensions."""


class NonHermitianInput(ValueError):
    """A matrix required to be Hermitian fails the symmetry check."""


class NoConvergence(RuntimeError):
    """The eigenvalue iteration did not converge."""


class ZeroState(ValueError):
    """A state vector with (near-)zero norm cannot be normalized."""


def as_operator(matrix) -> np.ndarray:
    """Validate and return a finite square complex matrix."""
    a = np.ascontiguousarray(matrix, dtype=np.complex128)
    if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] < 1:
        raise DimensionMismatch(f"expected a square matrix, got shape {a.shape}")
    if not np.isfinite(a).all():
        raise ValueError("matrix entries must be finite")
    return a


def require_hermitian(matrix, rtol: float = HERMITIAN_RTOL) -> np.ndarray:
    """Validate Hermiticity relative to the largest entry magnitude."""
    a = as_operator(matrix)
    scale = max(1.0, float(np.abs(a).max()))
    defect = float(np.abs(a - a.conj().T).max())
    if defect > rtol * scale:
        raise NonHermitianInput(
            f"matrix is not Hermitian: max |A - A^dag| = {defect:.3e} "
            f"exceeds {rtol:.1e} * {scale:.3e}"
        )
    return a


@dataclass(frozen=True)
class PureState:
    """A normalized state vector; construction rescales to unit Euclidean norm."""

    amplitudes: np.ndarray

    def __post_init__(self) -> None:
        amps = np.asarray(self.amplitudes, dtype=np.complex128).reshape(-1)
        if amps.size < 1:
            raise DimensionMismatch("state vector must have dimension >= 1")
        if not np.isfinite(amps).all():
            raise ValueError("state amplitudes must be finite")
        norm = float(np.linalg.norm(amps))
        if norm < 1e-150:
            raise ZeroState("state vector has zero norm")
        object.__setattr__(self, "amplitudes", amps / norm)

    @property
    def dim(self) -> int:
        return self.amplitudes.size


@dataclass(frozen=True)
class SpectralDecomposition:
    """Distinct eigenvalues of a Hermitian matrix with their eigenspace projectors."""

    distinct_eigenvalues: np.ndarray
    projectors: tuple[np.ndarray, ...]
    multiplicities: tuple[int, ...]

    @property
    def dim(self) -> int:
        return self.projectors[0].shape[0]

    @property
    def n_distinct(self) -> int:
        return len(self.projectors)

    def matrix(self) -> np.ndarray:
        """Reassemble ``sum_i b_i P_i``."""
        out = np.zeros((self.dim, self.dim), dtype=np.complex128)
        for value, proj in zip(self.distinct_eigenvalues, self.projectors):
            out += value * proj
        return out

    def validate(self, source: np.ndarray | None = None) -> None:
        """Check the projector algebra; raise ValueError on any violation.

        Completeness and pairwise orthogonality are checked to 1e-10 entrywise,
        Hermiticity to 1e-10, traces against multiplicities to 1e-8, and the
        reconstruction against ``source`` to 1e-9 relative to the spectral radius.
        """
        dim = self.dim
        stack = np.stack(self.projectors)
        ident = np.eye(dim, dtype=np.complex128)
        if float(np.abs(stack.sum(axis=0) - ident).max()) > 1e-10:
            raise ValueError("projectors do not sum to the identity")
        if float(np.abs(stack - stack.conj().transpose(0, 2, 1)).max()) > 1e-10:
            raise ValueError("projector is not Hermitian")
        prods = np.einsum("aij,bjk->abik", stack, stack)
        expected = np.zeros_like(prods)
        idx = np.arange(len(self.projectors))
        expected[idx, idx] = stack
        if float(np.abs(prods - expected).max()) > 1e-10:
            raise ValueError("projectors are not mutually orthogonal idempotents")
        traces = np.einsum("aii->a", stack).real
        if float(np.abs(traces - np.asarray(self.multiplicities)).max()) > 1e-8:
            raise ValueError("projector trace does not match multiplicity")
        if source is not None:
            radius = float(np.abs(self.distinct_eigenvalues).max()) if self.n_distinct else 0.0
            tol = 1e-9 * max(1.0, radius)
            if float(np.abs(self.matrix() - source).max()) > tol:
                raise ValueError("spectral reconstruction does not match the input matrix")


def eig_hermitian(matrix, rtol: float = HERMITIAN_RTOL) -> tuple[np.ndarray, np.ndarray]:
    """Eigendecomposition of a Hermitian matrix.

    Returns eigenvalues in ascending order and the matching orthonormal
    eigenvectors as columns.  Raises NonHermitianInput when the symmetry check
    fails and NoConvergence when the underlying iteration gives up.
    """
    a = require_hermitian(matrix, rtol)
    try:
        eigenvalues, eigenvectors = np.linalg.eigh(a)
    except np.linalg.LinAlgError as exc:
        raise NoConvergence(f"eigenvalue iteration failed: {exc}") from exc
    return eigenvalues, eigenvectors


def group_spectrum(
    eigenvalues, eigenvectors, rel_tol: float = DEGENERACY_RTOL
) -> SpectralDecomposition:
    """Cluster near-equal eigenvalues and build the distinct-eigenvalue projectors.

    Adjacent eigenvalues whose gap is at most ``rel_tol * max(1, spectral radius)``
    are merged into one cluster reported at the cluster mean; its projector is
    the sum of the member eigenvectors' rank-1 projectors.
    """
    if rel_tol <= 0:
        raise ValueError("rel_tol must be positive")
    values = np.asarray(eigenvalues, dtype=float).reshape(-1)
    vectors = np.ascontiguousarray(eigenvectors, dtype=np.complex128)
    if vectors.shape != (values.size, values.size):
        raise DimensionMismatch(
            f"eigenvector matrix shape {vectors.shape} does not match {values.size} eigenvalues"
        )
    order = np.argsort(values, kind="stable")
    values = values[order]
    vectors = vectors[:, order]

    gap = rel_tol * max(1.0, float(np.abs(values).max()))
    boundaries = [0]
    for k in range(1, values.size):
        if values[k] - values[k - 1] > gap:
            boundaries.append(k)
    boundaries.append(values.size)

    distinct = []
    projectors = []
    multiplicities = []
    for start, stop in zip(boundaries[:-1], boundaries[1:]):
        block = vectors[:, start:stop]
        distinct.append(values[start:stop].mean())
        projectors.append(block @ block.conj().T)
        multiplicities.append(stop - start)
    return SpectralDecomposition(
        distinct_eigenvalues=np.asarray(distinct, dtype=float),
        projectors=tuple(projectors),
        multiplicities=tuple(multiplicities),
    )


def spectral_decomposition(matrix, rel_tol: float = DEGENERACY_RTOL) -> SpectralDecomposition:
    """Eigendecompose a Hermitian matrix and group its spectrum."""
    return group_spectrum(*eig_hermitian(matrix), rel_tol=rel_tol)


def _state_vector(psi: PureState, dim: int) -> np.ndarray:
    if psi.dim != dim:
        raise DimensionMismatch(f"state dimension {psi.dim} does not match operator dimension {dim}")
    return psi.amplitudes


def hs_inner(x, y, psi: PureState) -> complex:
    """State-dependent inner product ``<psi| X^dag Y |psi>``.

    Computed as ``vdot(X psi, Y psi)`` so that conjugate symmetry
    ``(X, Y)* == (Y, X)`` holds exactly in floating point.
    """
    xm = as_operator(x)
    ym = as_operator(y)
    if xm.shape != ym.shape:
        raise DimensionMismatch(f"operator shapes differ: {xm.shape} vs {ym.shape}")
    vec = _state_vector(psi, xm.shape[0])
    return complex(np.vdot(xm @ vec, ym @ vec))


def op_norm_sq(x, psi: PureState) -> float:
    """Squared state-dependent norm ``(X, X)``, clamped to zero below rounding noise."""
    xm = as_operator(x)
    vec = _state_vector(psi, xm.shape[0])
    xv = xm @ vec
    value = float(np.vdot(xv, xv).real)
    if -NORM_CLAMP <= value < 0.0:
        return 0.0
    return value


def commutator(a, b) -> np.ndarray:
    """``AB - BA``."""
    am = as_operator(a)
    bm = as_operator(b)
    if am.shape != bm.shape:
        raise DimensionMismatch(f"operator shapes differ: {am.shape} vs {bm.shape}")
    return am @ bm - bm @ am


def anticommutator(a, b) -> np.ndarray:
    """``AB + BA``."""
    am = as_operator(a)
    bm = as_operator(b)
    if am.shape != bm.shape:
        raise DimensionMismatch(f"operator shapes differ: {am.shape} vs {bm.shape}")
    return am @ bm + bm @ am


def expectation(x, psi: PureState) -> complex:
    """Expectation value ``<psi| X |psi>``."""
    xm = as_operator(x)
    vec = _state_vector(psi, xm.shape[0])
    return complex(np.vdot(vec, xm @ vec))
