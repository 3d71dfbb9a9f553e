"""Closed-form decoherence rates and factors."""

from .gravity import GravityScenario, gravity_coherence_width, gravity_decoherence_factor, gravity_rate
from .presets import Table1Row, load_presets, table1_generate
from .qed import (
    QedScenario,
    critical_field,
    qed_dominance_ratio,
    qed_pair_factor,
    qed_vacuum_factor,
    qed_vacuum_limit,
)
from .scattering import (
    ScatteringEnvironment,
    apply_spatial_decoherence,
    decay_offdiagonal,
    localization_rate,
    offdiag_decay_rate,
    offdiag_phase_rate,
)

__all__ = [
    "ScatteringEnvironment",
    "localization_rate",
    "offdiag_decay_rate",
    "offdiag_phase_rate",
    "decay_offdiagonal",
    "apply_spatial_decoherence",
    "QedScenario",
    "critical_field",
    "qed_vacuum_factor",
    "qed_pair_factor",
    "qed_vacuum_limit",
    "qed_dominance_ratio",
    "GravityScenario",
    "gravity_rate",
    "gravity_coherence_width",
    "gravity_decoherence_factor",
    "Table1Row",
    "load_presets",
    "table1_generate",
]
