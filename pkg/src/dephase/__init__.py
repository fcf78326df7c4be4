"""Decoherence of two qubits crossing a one-dimensional spin array.

Exact finite-size dephasing factors, their macroscopic limit, and the
correlation measures (concurrence, quantum discord) they induce on
Bell-diagonal two-qubit states.
"""
from .correlations import (
    CorrelationSample,
    MeasurementAngles,
    UnsupportedStateError,
    chi_branch,
    classical_correlation,
    concurrence_general,
    concurrence_x,
    correlation_timeseries,
    discord_bruteforce,
    discord_closed,
    mutual_information,
    von_neumann_entropy,
)
from .limits import (
    AsymptoticCorrelations,
    ProgressFractions,
    amplification_crossover,
    asymptotic_correlations,
    discord_entanglement_crossover,
    discord_sudden_change_time,
    entry_time,
    exit_time,
    limit_f_pair,
    limit_f_pair_distinct,
    limit_f_pair_same,
    limit_f_single,
    progress_fraction,
    progress_fractions,
    second_period_change_time,
    spin_flip_probability,
    sudden_death_time,
)
from .model import (
    DecoherencePair,
    ModelParams,
    UnsupportedConfigurationError,
    exact_f_pair,
    exact_f_single,
    heaviside,
    passed_count,
    spin_position,
    tipping_angle,
)
from .states import (
    BellDiagonalState,
    InvalidStateError,
    QubitState,
    XState,
    evolve_single_qubit,
    evolve_two_qubit,
    make_bell_diagonal,
    mixture_state,
)

__version__ = "0.1.0"

__all__ = [
    "AsymptoticCorrelations",
    "BellDiagonalState",
    "CorrelationSample",
    "DecoherencePair",
    "InvalidStateError",
    "MeasurementAngles",
    "ModelParams",
    "ProgressFractions",
    "QubitState",
    "UnsupportedConfigurationError",
    "UnsupportedStateError",
    "XState",
    "__version__",
    "amplification_crossover",
    "asymptotic_correlations",
    "chi_branch",
    "classical_correlation",
    "concurrence_general",
    "concurrence_x",
    "correlation_timeseries",
    "discord_bruteforce",
    "discord_closed",
    "discord_entanglement_crossover",
    "discord_sudden_change_time",
    "entry_time",
    "evolve_single_qubit",
    "evolve_two_qubit",
    "exact_f_pair",
    "exact_f_single",
    "exit_time",
    "heaviside",
    "limit_f_pair",
    "limit_f_pair_distinct",
    "limit_f_pair_same",
    "limit_f_single",
    "make_bell_diagonal",
    "mixture_state",
    "mutual_information",
    "passed_count",
    "progress_fraction",
    "progress_fractions",
    "second_period_change_time",
    "spin_flip_probability",
    "spin_position",
    "sudden_death_time",
    "tipping_angle",
    "von_neumann_entropy",
]
