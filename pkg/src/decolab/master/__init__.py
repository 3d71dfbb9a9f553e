"""Master-equation integration on spatial grids."""

from .integrators import MasterPropagator, step_caldeira_leggett, step_free_decoherence
from .models import CaldeiraLeggettModel, FreeDecoherenceModel, IntegrationPlan
from .oracle import dense_master_evolution
from .relaxation import decoherence_relaxation_ratio, thermal_wavelength
from .series import MasterRun, coherence_length_series, run_master_equation

__all__ = [
    "FreeDecoherenceModel",
    "CaldeiraLeggettModel",
    "IntegrationPlan",
    "MasterPropagator",
    "step_free_decoherence",
    "step_caldeira_leggett",
    "MasterRun",
    "run_master_equation",
    "coherence_length_series",
    "dense_master_evolution",
    "decoherence_relaxation_ratio",
    "thermal_wavelength",
]
