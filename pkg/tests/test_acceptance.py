"""Acceptance suite: one test per primary criterion, at its stated tolerance.

Run ``pytest -s tests/test_acceptance.py`` to see one PASS/FAIL line per
criterion; the suite is also part of the default ``pytest`` run.
"""

import functools
import json
import math
import time

import numpy as np
import pytest

from wvbounds.bounds import schrodinger_report
from wvbounds.cli import main
from wvbounds.continuous import (
    GaussianFamilyParams,
    discord_p_given_x,
    gaussian_mus,
    modulus_condition_residual,
    phase_condition_residual,
    schrodinger_check_continuous,
)
from wvbounds.harness import (
    RandomHarnessConfig,
    random_hermitian,
    random_state,
    random_unitary,
    run_random_harness,
)
from wvbounds.linalg import spectral_decomposition
from wvbounds.models import (
    Spin1Params,
    spin1_closed_table,
    spin1_instance,
    spin1_numeric_table,
    spin1_sphere_grid,
    sweep_spin32,
)
from wvbounds.weakvalue import weak_value_function

GRID_RESOLUTION = 200
THETA_VALUES = tuple(k * math.pi / 4.0 for k in range(8))

CLOSED_FORM_KEYS = (
    "var_A",
    "var_B",
    "covariance_term",
    "commutator_term",
    "wvop_norm_sq",
    "discord",
)


def criterion(name):
    def decorate(fn):
        @functools.wraps(fn)
        def wrapper(*args, **kwargs):
            try:
                result = fn(*args, **kwargs)
            except BaseException:
                print(f"FAIL  {name}")
                raise
            print(f"PASS  {name}")
            return result

        return wrapper

    return decorate


@pytest.fixture(scope="module")
def spin1_grid():
    """200x200 grids at the eight phase values, numeric and closed, timed."""
    start = time.monotonic()
    per_theta = []
    for theta in THETA_VALUES:
        states = spin1_sphere_grid(GRID_RESOLUTION, theta)
        per_theta.append((theta, states, spin1_numeric_table(states), spin1_closed_table(states)))
    elapsed = time.monotonic() - start
    return per_theta, elapsed


@criterion("spin-1 closed-form fidelity (200x200x8 grid, 1e-9, < 30 s)")
def test_spin1_closed_form_fidelity(spin1_grid):
    per_theta, elapsed = spin1_grid
    assert elapsed < 30.0, f"grid evaluation took {elapsed:.1f} s"
    for theta, _, numeric, closed in per_theta:
        for key in CLOSED_FORM_KEYS:
            worst = float(np.abs(numeric[key] - closed[key]).max())
            assert worst < 1e-9, f"{key} differs by {worst:.3e} at theta={theta:.3f}"
    # pin the batched engine to the scalar pipeline on a subsample
    gen = np.random.default_rng(314159)
    for theta, states, numeric, _ in per_theta[::2]:
        for k in gen.integers(0, states.shape[0], size=12):
            x, y, z = states[k]
            a, b, psi = spin1_instance(Spin1Params(x, y, z))
            report = schrodinger_report(a, b, psi)
            assert abs(numeric["lhs"][k] - report.lhs) < 1e-10
            assert abs(numeric["extra"][k] - report.extra_E_AB) < 1e-10
            assert abs(numeric["schrodinger_rhs"][k] - report.schrodinger_rhs) < 1e-10


@criterion("spin-1 balance: commutator + covariance + extra = variance product (1e-9)")
def test_appendix_balance(spin1_grid):
    per_theta, _ = spin1_grid
    for theta, _, numeric, _ in per_theta:
        gap = numeric["lhs"] - (numeric["schrodinger_rhs"] + numeric["extra"])
        worst = float(np.abs(gap).max())
        assert worst < 1e-9, f"tight gap {worst:.3e} at theta={theta:.3f}"


@criterion("extra-term landmark: max 8/27 at |z| = 1/sqrt(3) with min(|x|,|y|) < 0.01")
def test_extra_term_landmark(spin1_grid):
    per_theta, _ = spin1_grid
    theta, states, numeric, _ = per_theta[0]
    assert theta == 0.0
    peak = int(np.argmax(numeric["extra"]))
    assert abs(numeric["extra"][peak] - 8.0 / 27.0) < 1e-3
    assert abs(abs(states[peak, 2]) - 1.0 / math.sqrt(3.0)) < 0.01
    assert min(abs(states[peak, 0]), abs(states[peak, 1])) < 0.01


@criterion("spin-3/2 sweep: orderings hold, swapped extra term saturates, gaps strict at t=1")
def test_spin32_sweep():
    table = sweep_spin32(-3.0, 3.0, 601)
    rhs = table.column("schrodinger_rhs")
    lhs = table.column("lhs")
    plus_tilde = table.column("rhs_plus_tilde")
    plus_ab = table.column("rhs_plus_AB")
    plus_ba = table.column("rhs_plus_BA")
    assert float((plus_tilde - rhs).min()) >= -1e-9
    assert float((plus_ab - plus_tilde).min()) >= -1e-9
    assert float((lhs - plus_ab).min()) >= -1e-9
    assert float(np.abs(lhs - plus_ba).max()) < 1e-9
    t = table.column("t")
    at_one = int(np.argmin(np.abs(t - 1.0)))
    assert abs(t[at_one] - 1.0) < 1e-12
    assert lhs[at_one] - rhs[at_one] > 1e-3
    # the plain bound is never attained anywhere on the sweep
    assert float((lhs - rhs).min()) > 0.0


@criterion("property (a): 10^4 random dim-2 instances give extra term < 1e-10")
def test_property_a_dim2():
    from wvbounds.linalg import PureState

    gen = np.random.default_rng(2026)
    worst = 0.0
    for index in range(10_000):
        a = random_hermitian(gen, 2)
        b = random_hermitian(gen, 2)
        if index % 10 == 0:
            # the vanishing must also hold with psi an eigenstate of B
            _, vectors = np.linalg.eigh(b)
            psi = PureState(vectors[:, int(gen.integers(2))])
        else:
            psi = random_state(gen, 2)
        worst = max(worst, schrodinger_report(a, b, psi).extra_E_AB)
    assert worst < 1e-10, f"worst extra term {worst:.3e}"


@criterion("general harness: 10^4 instances per dim 3-6, all invariants, < 2 min")
def test_general_harness():
    config = RandomHarnessConfig(seed=42, dims=(3, 4, 5, 6), samples_per_dim=10_000)
    start = time.monotonic()
    summary = run_random_harness(config)
    elapsed = time.monotonic() - start
    assert summary.checked == 40_000
    assert summary.failures == 0, summary.first_failure
    for name, magnitude in summary.max_violation.items():
        assert magnitude == 0.0, f"{name} violated by {magnitude:.3e}"
    assert elapsed < 120.0, f"harness took {elapsed:.1f} s"


@criterion("two-eigenvalue equality: residuals < 1e-9 and proportionality reconstruction")
def test_two_eigenvalue_equality():
    from wvbounds.bounds import diagnose_equality

    gen = np.random.default_rng(20_12)
    for index in range(1_000):
        dim = 3 + index % 4
        b1, b2 = sorted(gen.standard_normal(2))
        if b2 - b1 < 1e-3:
            b2 = b1 + 1.0
        split = int(gen.integers(1, dim))
        diagonal = np.array([b1] * split + [b2] * (dim - split))
        u = random_unitary(gen, dim)
        b = (u * diagonal) @ u.conj().T
        b = (b + b.conj().T) / 2.0
        a = random_hermitian(gen, dim)
        psi = random_state(gen, dim)

        diag = diagnose_equality(a, b, psi)
        assert diag.residual_cov < 1e-9
        assert diag.residual_kr < 1e-9
        spec = spectral_decomposition(b)
        assert spec.n_distinct == 2
        data = weak_value_function(a, spec, psi)
        kappa = (data.values[0] - data.values[1]) / (
            spec.distinct_eigenvalues[0] - spec.distinct_eigenvalues[1]
        )
        assert diag.proportionality_constant == pytest.approx(kappa, abs=1e-12)
        vec = psi.amplitudes
        mean_a = float(np.vdot(vec, a @ vec).real)
        mean_b = float(np.vdot(vec, b @ vec).real)
        left = (data.operator - mean_a * np.eye(dim)) @ vec
        right = kappa * ((b - mean_b * np.eye(dim)) @ vec)
        assert np.linalg.norm(left - right) < 1e-9


@criterion("continuous family: residuals < 1e-4, gap/lhs < 1e-3, discord < 1e-8, convergence >= 2x")
def test_continuous_family():
    for lam in (-2.0, 0.0, 1.0, 2.0):
        for mu in (0.5, 1.0, 4.0):
            params = GaussianFamilyParams(lam=lam, mu=mu, mean_x=0.25, mean_p=-0.5)
            wave = gaussian_mus(params)
            assert (
                phase_condition_residual(wave, params.lam, params.mean_x, params.mean_p) < 1e-4
            ), (lam, mu)
            assert modulus_condition_residual(wave, params.mu, params.mean_x) < 1e-4, (lam, mu)
            lhs, _, gap = schrodinger_check_continuous(wave)
            assert abs(gap) / lhs < 1e-3, (lam, mu)
            assert discord_p_given_x(wave) < 1e-8, (lam, mu)
    # halving dx must at least halve the residuals (measured away from the
    # rounding floor)
    for lam, mu in ((1.0, 1.0), (2.0, 0.5)):
        params = GaussianFamilyParams(lam=lam, mu=mu)
        coarse = gaussian_mus(params, n_points=4096)
        fine = gaussian_mus(params, n_points=8191)
        for residual in (
            lambda wf: phase_condition_residual(wf, params.lam, params.mean_x, params.mean_p),
            lambda wf: modulus_condition_residual(wf, params.mu, params.mean_x),
        ):
            ratio = residual(coarse) / residual(fine)
            assert ratio >= 2.0, (lam, mu, ratio)


@criterion("determinism: repeated runs of every command are byte-identical")
def test_determinism(tmp_path, capsys):
    a, b, psi = spin1_instance(Spin1Params(1, 0, 1))
    from wvbounds.cli import problem_payload

    problem = tmp_path / "problem.json"
    problem.write_text(json.dumps(problem_payload(a, b, psi)), encoding="utf-8")

    def run_stdout(args):
        assert main(args) == 0
        return capsys.readouterr().out

    def run_file(args, path):
        assert main(args + ["--out", str(path)]) == 0
        return path.read_bytes()

    report_args = ["report", str(problem)]
    assert run_stdout(report_args) == run_stdout(report_args)

    spin1_args = ["sweep-spin1", "--res", "40", "--theta", "0.7853981633974483"]
    assert run_file(spin1_args, tmp_path / "s1a.csv") == run_file(spin1_args, tmp_path / "s1b.csv")

    spin32_args = ["sweep-spin32", "--tmin", "-3", "--tmax", "3", "--steps", "101"]
    assert run_file(spin32_args, tmp_path / "s2a.csv") == run_file(
        spin32_args, tmp_path / "s2b.csv"
    )

    verify_args = ["random-verify", "--seed", "42", "--dims", "3,4", "--samples", "30"]
    assert run_stdout(verify_args) == run_stdout(verify_args)

    gaussian_args = ["gaussian", "--lambda", "1", "--mu", "1", "--points", "32768"]
    assert run_stdout(gaussian_args) == run_stdout(gaussian_args)
