"""Grover search under Markovian-correlated noise (density-matrix simulator)."""

from ._core import (
    ConfigError,
    GroverInstance,
    InvariantViolation,
    MarkovNoiseParams,
    NoiseSpec,
    SingleQubitUnitary,
    build_chi,
    closed_form_overlaps,
    dilation_unitary,
    extract_mixer,
    grover_operator,
    history_oracle,
    ideal_success_series,
    kraus_step,
    markov_evolve,
    n_blp,
    n_cp,
    noisy_grover,
    partial_trace,
    perfect_memory_success,
    preset,
    run_experiment,
    thermal_kraus,
    trace_distance,
    uniform_superposition,
    __version__,
)

__all__ = [name for name in dir() if not name.startswith("_")] + ["__version__"]
