"""Relativistic partial-wave and Born scattering off concentric delta shells."""

from .born import BornInputs, born_differential, born_inputs, born_total_closed, born_total_quadrature
from .channels import (
    Channel,
    Kinematics,
    ShellPotential,
    channel_from_kappa,
    channels_for_l,
    kinematics_from_energy,
    spinor_ratio_A,
)
from .errors import DomainError, ScenarioError
from .partialwave import (
    Amplitudes,
    CrossSectionResult,
    PhaseShift,
    RadialState,
    amplitudes_for_potential,
    amplitudes_from_shifts,
    crossing_rotation,
    differential_cross_section,
    free_state,
    match_outer_coeffs,
    phase_shift_1delta_closed,
    phase_shift_matching,
    phase_shift_table,
    total_cross_section,
)

__version__ = "0.1.0"
