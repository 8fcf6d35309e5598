"""Step-wise probabilistic error cancellation on single-qubit Lindblad dynamics."""

__version__ = "0.1.0"

from .channels import (
    MitigationCoeffs,
    PauliChannelParams,
    SamplingDistribution,
    TransferEigenvalues,
    channel_superop,
    coeffs_to_superop,
    exact_inverse_coeffs,
    first_order_coeffs,
    general_exact_coeffs,
    kappa_to_lambda,
    lambda_to_kappa,
    linear_inverse_coeffs,
    sampling_distribution,
)
from .generators import (
    Generator,
    Hamiltonian,
    PauliRates,
    commutator,
    commutator_norm,
    exact_propagate,
    hamiltonian,
    pauli_dissipator,
    unitary_generator,
)
from .presets import PRESETS, preset
from .sampling import (
    EnsembleStats,
    StepPlan,
    TrajectoryResult,
    exhaustive_expectation,
    run_ensemble,
    run_trajectory,
)
from .scenarios import (
    ScenarioConfig,
    TimeSeries,
    biased_predictions,
    build_scenario,
    fidelity,
    ideal_evolution,
    mitigation_coeffs,
    reference_value,
    simulate,
    trotter_error_norm,
)

__all__ = [
    "__version__",
    "MitigationCoeffs",
    "PauliChannelParams",
    "SamplingDistribution",
    "TransferEigenvalues",
    "channel_superop",
    "coeffs_to_superop",
    "exact_inverse_coeffs",
    "first_order_coeffs",
    "general_exact_coeffs",
    "kappa_to_lambda",
    "lambda_to_kappa",
    "linear_inverse_coeffs",
    "sampling_distribution",
    "Generator",
    "Hamiltonian",
    "PauliRates",
    "commutator",
    "commutator_norm",
    "exact_propagate",
    "hamiltonian",
    "pauli_dissipator",
    "unitary_generator",
    "PRESETS",
    "preset",
    "EnsembleStats",
    "StepPlan",
    "TrajectoryResult",
    "exhaustive_expectation",
    "run_ensemble",
    "run_trajectory",
    "ScenarioConfig",
    "TimeSeries",
    "biased_predictions",
    "build_scenario",
    "fidelity",
    "ideal_evolution",
    "mitigation_coeffs",
    "reference_value",
    "simulate",
    "trotter_error_norm",
]
