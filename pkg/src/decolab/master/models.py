"""Master-equation models and integration plans."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

from ..core.errors import StabilityViolation
from ..core.models import SpatialGrid
from ..core.units import NATURAL, UNIT_SYSTEMS, boltzmann_constant


SPLIT_STEP = "split-step"
RK4 = "rk4"
SCHEMES = (SPLIT_STEP, RK4)

# RK4 is stable on the imaginary axis up to |z| = 2.83 and on the negative real axis up to 2.78.
RK4_KINETIC_BOUND = 0.5
RK4_REAL_BOUND = 2.5
FRICTION_BOUND = 2.5


@dataclass(frozen=True, slots=True)
class FreeDecoherenceModel:
    """Free particle with position-localising decoherence of strength Lambda."""

    mass: float
    strength: float
    kinetic: bool = True

    def __post_init__(self) -> None:
        if not self.mass > 0.0:
            raise ValueError(f"mass must be > 0, got {self.mass}")
        if self.strength < 0.0:
            raise ValueError(f"strength must be >= 0, got {self.strength}")

    @property
    def damping(self) -> float:
        return 0.0


@dataclass(frozen=True, slots=True)
class CaldeiraLeggettModel:
    """Quantum Brownian motion: friction gamma plus thermal decoherence Lambda = m gamma k_B T."""

    mass: float
    damping: float
    temperature: float
    unit_system: str = NATURAL

    def __post_init__(self) -> None:
        if not self.mass > 0.0:
            raise ValueError(f"mass must be > 0, got {self.mass}")
        if self.damping < 0.0:
            raise ValueError(f"damping must be >= 0, got {self.damping}")
        if self.temperature < 0.0:
            raise ValueError(f"temperature must be >= 0, got {self.temperature}")
        if self.unit_system not in UNIT_SYSTEMS:
            raise ValueError(f"Unknown unit system '{self.unit_system}'")

    @property
    def strength(self) -> float:
        return self.mass * self.damping * boltzmann_constant(self.unit_system) * self.temperature

    @property
    def kinetic(self) -> bool:
        return True

    def free_part(self) -> FreeDecoherenceModel:
        """The model without friction, sharing mass and Lambda."""

        return FreeDecoherenceModel(mass=self.mass, strength=self.strength)


MasterModel = Union[FreeDecoherenceModel, CaldeiraLeggettModel]


@dataclass(frozen=True, slots=True)
class IntegrationPlan:
    dt: float
    n_steps: int
    record_every: int = 1
    scheme: str = SPLIT_STEP

    def __post_init__(self) -> None:
        if not self.dt > 0.0:
            raise ValueError(f"dt must be > 0, got {self.dt}")
        if self.n_steps < 1:
            raise ValueError(f"n_steps must be >= 1, got {self.n_steps}")
        if self.record_every < 1:
            raise ValueError(f"record_every must be >= 1, got {self.record_every}")
        if self.scheme not in SCHEMES:
            raise ValueError(f"Unknown scheme '{self.scheme}'. Expected one of: {', '.join(SCHEMES)}")

    @property
    def duration(self) -> float:
        return self.dt * self.n_steps

    def check_stability(self, model: MasterModel, grid: SpatialGrid) -> None:
        check_stability(model, grid, self.dt, self.scheme)


def check_stability(model: MasterModel, grid: SpatialGrid, dt: float, scheme: str) -> None:
    """Raise StabilityViolation when an explicit stage would blow up."""

    spacing = grid.spacing
    if scheme == RK4:
        if model.kinetic and dt > RK4_KINETIC_BOUND * model.mass * spacing ** 2:
            raise StabilityViolation(
                f"dt = {dt:g} exceeds the rk4 kinetic bound 0.5*m*dx^2 = {RK4_KINETIC_BOUND * model.mass * spacing ** 2:.4g}"
            )
        if dt * model.strength * grid.extent ** 2 > RK4_REAL_BOUND:
            raise StabilityViolation(
                f"dt*Lambda*L^2 = {dt * model.strength * grid.extent ** 2:.4g} exceeds {RK4_REAL_BOUND}"
            )
    if model.damping > 0.0:
        # friction stages span dt/2 in split-step and dt in rk4
        stage = dt if scheme == RK4 else 0.5 * dt
        radius = 2.0 * stage * model.damping * grid.extent / spacing
        if radius > FRICTION_BOUND:
            raise StabilityViolation(
                f"Friction stage is unstable: 2*dt_stage*gamma*L/dx = {radius:.4g} exceeds {FRICTION_BOUND}"
            )
