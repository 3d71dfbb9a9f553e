"""Phase-space (Wigner) pictures of spatial density matrices."""

from .export import write_wigner_csv, write_wigner_dump
from .oscillator import decohered_oscillator_demo, hermite_functions, oscillator_eigenstate
from .transform import WignerFunction, marginal_momentum, marginal_position, wigner_transform

__all__ = [
    "WignerFunction",
    "wigner_transform",
    "marginal_position",
    "marginal_momentum",
    "hermite_functions",
    "oscillator_eigenstate",
    "decohered_oscillator_demo",
    "write_wigner_csv",
    "write_wigner_dump",
]
