"""Weak-value function/operator and the three-route discord norm."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import (
    SPIN1_PROJ_MINUS,
    SPIN1_PROJ_PLUS,
    brute_force_discord,
    brute_force_weak_values,
    random_hermitian,
    random_state,
)
from wvbounds.linalg import PureState, hs_inner, op_norm_sq, spectral_decomposition
from wvbounds.models import Spin1Params, spin1_instance
from wvbounds.weakvalue import (
    FillLengthMismatch,
    discord_norm_sq,
    im_part,
    projection_identity_residual,
    re_part,
    weak_value_function,
    weak_value_operator,
)


def spin1_case(x, y, z):
    a, b, psi = spin1_instance(Spin1Params(x, y, z))
    return a, b, psi, spectral_decomposition(b)


class TestWeakValueFunction:
    def test_self_weak_values_are_eigenvalues(self, rng):
        b = random_hermitian(rng, 5)
        psi = random_state(rng, 5)
        spec = spectral_decomposition(b)
        data = weak_value_function(b, spec, psi)
        np.testing.assert_allclose(data.values, spec.distinct_eigenvalues, atol=1e-10)

    def test_spin1_reference_values(self):
        a, _, psi, spec = spin1_case(1, 0, 1)
        data = weak_value_function(a, spec, psi)
        np.testing.assert_allclose(data.values[0], 1j, atol=1e-12)
        np.testing.assert_allclose(data.values[1], (2 - 1j) / 3, atol=1e-12)
        assert not data.fill_mask.any()
        # independent route: raw ratios with the closed-form projectors
        oracle = brute_force_weak_values(a, [SPIN1_PROJ_MINUS, SPIN1_PROJ_PLUS], psi)
        np.testing.assert_allclose(data.values, oracle, atol=1e-12)

    def test_masked_index_takes_fill(self):
        # (1, i, 0) is annihilated by the projector of eigenvalue -1
        a, _, _, spec = spin1_case(1, 0, 1)
        psi = PureState([1.0, 1.0j, 0.0])
        data = weak_value_function(a, spec, psi, fill=[7 + 2j, 0.0])
        assert data.fill_mask[0] and not data.fill_mask[1]
        assert data.values[0] == 7 + 2j

    def test_nondegenerate_reduces_to_vector_ratio(self, rng):
        b = random_hermitian(rng, 4)
        a = random_hermitian(rng, 4)
        psi = random_state(rng, 4)
        values, vectors = np.linalg.eigh(b)
        spec = spectral_decomposition(b)
        data = weak_value_function(a, spec, psi)
        for k in range(4):
            column = vectors[:, k]
            expected = np.vdot(column, a @ psi.amplitudes) / np.vdot(column, psi.amplitudes)
            np.testing.assert_allclose(data.values[k], expected, atol=1e-10)

    def test_fill_length_mismatch(self, rng):
        b = random_hermitian(rng, 3)
        a = random_hermitian(rng, 3)
        with pytest.raises(FillLengthMismatch):
            weak_value_function(a, spectral_decomposition(b), random_state(rng, 3), fill=[1.0])


class TestWeakValueOperator:
    def test_action_matches_original_when_assumptions_hold(self, rng):
        # non-degenerate measured observable, no vanishing weights
        for _ in range(20):
            dim = int(rng.integers(2, 7))
            a = random_hermitian(rng, dim)
            b = random_hermitian(rng, dim)
            psi = random_state(rng, dim)
            data = weak_value_function(a, spectral_decomposition(b), psi)
            assert not data.fill_mask.any()
            diff = data.operator @ psi.amplitudes - a @ psi.amplitudes
            assert np.linalg.norm(diff) < 1e-10

    def test_operator_is_projector_combination(self, rng):
        a = random_hermitian(rng, 5)
        b = random_hermitian(rng, 5)
        psi = random_state(rng, 5)
        spec = spectral_decomposition(b)
        data = weak_value_function(a, spec, psi)
        assembled = sum(v * p for v, p in zip(data.values, spec.projectors))
        assert np.abs(weak_value_operator(data) - assembled).max() < 1e-10
        assert np.abs(data.operator @ b - b @ data.operator).max() < 1e-9

    def test_spin1_operator_norm(self):
        a, _, psi, spec = spin1_case(1, 0, 1)
        data = weak_value_function(a, spec, psi)
        assert op_norm_sq(data.operator, psi) == pytest.approx(2.0 / 3.0, abs=1e-12)

    def test_fill_does_not_move_the_action(self):
        a, _, _, spec = spin1_case(1, 0, 1)
        psi = PureState([1.0, 1.0j, 0.0])
        base = weak_value_function(a, spec, psi, fill=[0.0, 0.0])
        alt = weak_value_function(a, spec, psi, fill=[51.0 - 12.5j, 0.0])
        diff = (base.operator - alt.operator) @ psi.amplitudes
        assert np.linalg.norm(diff) < 1e-12


class TestReImParts:
    def test_hermitian_input(self, rng):
        h = random_hermitian(rng, 4)
        np.testing.assert_allclose(re_part(h), h, atol=1e-14)
        np.testing.assert_allclose(im_part(h), 0.0, atol=1e-14)

    def test_imaginary_identity(self):
        np.testing.assert_allclose(re_part(1j * np.eye(3)), 0.0, atol=1e-15)
        np.testing.assert_allclose(im_part(1j * np.eye(3)), np.eye(3), atol=1e-15)

    def test_reconstruction_and_hermiticity(self, rng):
        x = rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4))
        re, im = re_part(x), im_part(x)
        np.testing.assert_allclose(re + 1j * im, x, atol=1e-14)
        np.testing.assert_allclose(re, re.conj().T, atol=1e-14)
        np.testing.assert_allclose(im, im.conj().T, atol=1e-14)

    def test_norm_splits_for_functions_of_b(self, rng):
        # |f(B)|^2 = |Re f(B)|^2 + |Im f(B)|^2 inside the commutative algebra
        b = random_hermitian(rng, 5)
        psi = random_state(rng, 5)
        spec = spectral_decomposition(b)
        f_values = rng.standard_normal(5) + 1j * rng.standard_normal(5)
        f_op = sum(v * p for v, p in zip(f_values, spec.projectors))
        total = op_norm_sq(f_op, psi)
        split = op_norm_sq(re_part(f_op), psi) + op_norm_sq(im_part(f_op), psi)
        assert abs(total - split) < 1e-10


class TestDiscord:
    def test_vanishes_under_simple_assumptions(self, rng):
        for _ in range(20):
            dim = int(rng.integers(2, 7))
            a = random_hermitian(rng, dim)
            b = random_hermitian(rng, dim)
            psi = random_state(rng, dim)
            breakdown = discord_norm_sq(a, spectral_decomposition(b), psi)
            assert breakdown.direct < 1e-10
            assert breakdown.by_subtraction < 1e-10
            assert breakdown.by_sum_formula < 1e-10

    def test_spin1_reference_value(self):
        a, _, psi, spec = spin1_case(1, 0, 1)
        breakdown = discord_norm_sq(a, spec, psi)
        assert breakdown.direct == pytest.approx(1.0 / 3.0, abs=1e-12)
        oracle = brute_force_discord(
            a, [(-1.0, SPIN1_PROJ_MINUS), (1.0, SPIN1_PROJ_PLUS)], psi
        )
        assert breakdown.direct == pytest.approx(oracle, abs=1e-12)
        # all of it comes from the degenerate eigenspace
        assert breakdown.zero_expectation_contribution == 0.0
        assert breakdown.degenerate_contribution == pytest.approx(1.0 / 3.0, abs=1e-12)

    def test_vanishing_locus(self):
        a, _, psi, spec = spin1_case(1, 1, 1)
        assert discord_norm_sq(a, spec, psi).direct < 1e-12

    def test_routes_agree_with_masked_state(self):
        a, _, _, spec = spin1_case(1, 0, 1)
        psi = PureState([1.0, 1.0j, 0.5])
        breakdown = discord_norm_sq(a, spec, psi)
        assert abs(breakdown.direct - breakdown.by_subtraction) < 1e-10
        assert abs(breakdown.direct - breakdown.by_sum_formula) < 1e-10
        assert breakdown.zero_expectation_contribution > 0.0

    def test_fill_independence(self):
        a, _, _, spec = spin1_case(1, 0, 1)
        psi = PureState([1.0, 1.0j, 0.5])
        base = discord_norm_sq(a, spec, psi)
        alt = discord_norm_sq(a, spec, psi, fill=[7 + 2j, -3.5j])
        for name in (
            "direct",
            "by_subtraction",
            "by_sum_formula",
            "zero_expectation_contribution",
            "degenerate_contribution",
        ):
            assert abs(getattr(base, name) - getattr(alt, name)) < 1e-10, name


class TestProjectionIdentity:
    def test_identity_function(self, rng):
        a = random_hermitian(rng, 4)
        b = random_hermitian(rng, 4)
        psi = random_state(rng, 4)
        spec = spectral_decomposition(b)
        assert projection_identity_residual(a, spec, psi, spec.distinct_eigenvalues) < 1e-12

    def test_engineered_degeneracy_and_zero_weight(self, rng):
        # degenerate measured observable plus a state orthogonal to one eigenspace
        a, _, _, spec = spin1_case(1, 0, 1)
        for _ in range(25):
            psi = PureState(
                np.array([1.0, 1.0j, 0.0]) * rng.standard_normal()
                + np.array([0.0, 0.0, 1.0]) * rng.standard_normal()
            )
            f_values = rng.standard_normal(2) + 1j * rng.standard_normal(2)
            assert projection_identity_residual(a, spec, psi, f_values) < 1e-10

    def test_orthogonality_of_discord_leg(self, rng):
        # choosing f(B) = A_w(B) - <A> makes the residual the Pythagorean cross term
        a = random_hermitian(rng, 5)
        b = random_hermitian(rng, 5)
        psi = random_state(rng, 5)
        spec = spectral_decomposition(b)
        data = weak_value_function(a, spec, psi)
        mean_a = float(np.vdot(psi.amplitudes, a @ psi.amplitudes).real)
        assert projection_identity_residual(a, spec, psi, data.values - mean_a) < 1e-10


@given(dim=st.integers(2, 6), seed=st.integers(0, 2**32 - 1))
@settings(max_examples=60, deadline=None)
def test_pythagorean_identity_property(dim, seed):
    gen = np.random.default_rng(seed)
    a = random_hermitian(gen, dim)
    b = random_hermitian(gen, dim)
    psi = random_state(gen, dim)
    spec = spectral_decomposition(b)
    data = weak_value_function(a, spec, psi)
    mean_a = float(np.vdot(psi.amplitudes, a @ psi.amplitudes).real)
    da = a - mean_a * np.eye(dim)
    proxy_centered = data.operator - mean_a * np.eye(dim)
    total = op_norm_sq(da, psi)
    discord = discord_norm_sq(a, spec, psi).direct
    assert abs(total - (discord + op_norm_sq(proxy_centered, psi))) < 1e-9


@given(dim=st.integers(2, 6), seed=st.integers(0, 2**32 - 1))
@settings(max_examples=60, deadline=None)
def test_projected_inner_product_identities(dim, seed):
    # Re(A, f(B)) = (Re A_w(B), f(B)) and Im(A, f(B)) = -(Im A_w(B), f(B))
    # for self-adjoint f(B)
    gen = np.random.default_rng(seed)
    a = random_hermitian(gen, dim)
    b = random_hermitian(gen, dim)
    psi = random_state(gen, dim)
    spec = spectral_decomposition(b)
    data = weak_value_function(a, spec, psi)
    f_op = sum(v * p for v, p in zip(gen.standard_normal(spec.n_distinct), spec.projectors))
    full = hs_inner(a, f_op, psi)
    assert abs(full.real - hs_inner(re_part(data.operator), f_op, psi).real) < 1e-10
    assert abs(full.imag + hs_inner(im_part(data.operator), f_op, psi).real) < 1e-10


def test_variance_decomposition_via_re_im(rng):
    # |A_w(B) - <A>|^2 = |Re A_w(B) - <A>|^2 + |Im A_w(B)|^2
    for _ in range(30):
        dim = int(rng.integers(2, 7))
        a = random_hermitian(rng, dim)
        b = random_hermitian(rng, dim)
        psi = random_state(rng, dim)
        data = weak_value_function(a, spectral_decomposition(b), psi)
        mean_a = float(np.vdot(psi.amplitudes, a @ psi.amplitudes).real)
        shifted = data.operator - mean_a * np.eye(dim)
        lhs = op_norm_sq(shifted, psi)
        rhs = op_norm_sq(re_part(data.operator) - mean_a * np.eye(dim), psi) + op_norm_sq(
            im_part(data.operator), psi
        )
        assert abs(lhs - rhs) < 1e-9
