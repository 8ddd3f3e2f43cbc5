"""Open-system simulators for the two thermal machines."""

from .dynamics import (
    Machine,
    PositivityViolation,
    StepResult,
    TruncationOverflow,
    heat_row,
    liouvillian_dense,
    liouvillian_sparse,
    taylor4_transfer,
)
from .oscillator import OscillatorMachine, OscillatorParams, ThermalContact, bose_einstein
from .quantities import (
    entropy_production,
    gibbs_state,
    phase_fixed_eigh,
    relative_entropy_of_coherence,
    trace_distance,
    von_neumann_entropy,
)
from .qubit import QubitBath, QubitMachine, QubitParams, noise_power_spectrum

__all__ = [
    "Machine",
    "PositivityViolation",
    "StepResult",
    "TruncationOverflow",
    "heat_row",
    "liouvillian_dense",
    "liouvillian_sparse",
    "taylor4_transfer",
    "OscillatorMachine",
    "OscillatorParams",
    "ThermalContact",
    "bose_einstein",
    "entropy_production",
    "gibbs_state",
    "phase_fixed_eigh",
    "relative_entropy_of_coherence",
    "trace_distance",
    "von_neumann_entropy",
    "QubitBath",
    "QubitMachine",
    "QubitParams",
    "noise_power_spectrum",
]
