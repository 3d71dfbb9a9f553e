"""Zeno effect: repeated measurement, continuous pointer monitoring and chiral stabilisation."""

from .analytic import (
    DecaySystem,
    classical_decay_survival,
    energy_variance,
    repeated_measurement_survival,
    survival_probability,
    zeno_table,
)
from .chiral import ChiralModel, chiral_series, chiral_states, evolve_chiral, left_population
from .pointer import PointerModel, PointerRun, branch_overlap, coupling_scan, evolve_pointer_model

__all__ = [
    "DecaySystem",
    "survival_probability",
    "energy_variance",
    "repeated_measurement_survival",
    "classical_decay_survival",
    "zeno_table",
    "PointerModel",
    "PointerRun",
    "evolve_pointer_model",
    "coupling_scan",
    "branch_overlap",
    "ChiralModel",
    "chiral_states",
    "evolve_chiral",
    "left_population",
    "chiral_series",
]
