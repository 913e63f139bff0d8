"""Weak-value operators and tightened variance uncertainty bounds.

The package computes, for pairs of Hermitian observables in a pure state, the
full hierarchy of variance-product lower bounds: the commutator bound, the
covariance-supplemented bound, its decomposition into two Cauchy-Schwarz
halves through the weak-value operator, and the tightened bound that adds the
discord between an observable and its weak-value proxy.  Closed-form spin-1
and spin-3/2 reference models, a grid-discretized position-momentum module,
a seeded random verification harness, and a CLI for reports and sweeps are
included.
"""

from .bounds import (
    EqualityDiagnosis,
    UncertaintyReport,
    decomposed_bounds,
    diagnose_equality,
    schrodinger_report,
    variance,
)
from .continuous import (
    GaussianFamilyParams,
    GridTooNarrow,
    GridWaveFunction,
    NotConverged,
    discord_p_given_x,
    gaussian_mus,
    modulus_condition_residual,
    phase_condition_residual,
    schrodinger_check_continuous,
)
from .harness import RandomHarnessConfig, check_instance, run_random_harness
from .linalg import (
    DimensionMismatch,
    NoConvergence,
    NonHermitianInput,
    PureState,
    SpectralDecomposition,
    ZeroState,
    anticommutator,
    commutator,
    eig_hermitian,
    expectation,
    group_spectrum,
    hs_inner,
    op_norm_sq,
    spectral_decomposition,
)
from .models import (
    Spin1Params,
    Spin32Params,
    spin1_closed_forms,
    spin1_extra_closed_form,
    spin1_instance,
    spin32_instance,
    sweep_spin1,
    sweep_spin32,
)
from .weakvalue import (
    DiscordBreakdown,
    FillLengthMismatch,
    WeakValueData,
    discord_norm_sq,
    im_part,
    projection_identity_residual,
    re_part,
    weak_value_function,
    weak_value_operator,
)

__version__ = "0.1.0"
