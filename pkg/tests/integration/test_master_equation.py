"""Integration tests for the master-equation integrators, the run driver and the dense oracle."""

from __future__ import annotations

import math

import numpy as np
import pytest

from decolab.core.errors import BoundaryLeak, StabilityViolation
from decolab.core.measurement import expectation_momentum, position_distribution
from decolab.core.models import DensityMatrix, SpatialGrid
from decolab.core.states import build_gaussian_packet, cat_state, pure_density
from decolab.master import (
    CaldeiraLeggettModel,
    FreeDecoherenceModel,
    IntegrationPlan,
    MasterPropagator,
    coherence_length_series,
    dense_master_evolution,
    run_master_equation,
    step_caldeira_leggett,
    step_free_decoherence,
)
from decolab.master.models import RK4
from decolab.master.series import boundary_leaks
from decolab.rates.scattering import apply_spatial_decoherence


def _variance(rho: DensityMatrix) -> float:
    x = rho.grid.x
    density = position_distribution(rho).real * rho.grid.spacing
    mean = float(np.sum(x * density))
    return float(np.sum((x - mean) ** 2 * density))


@pytest.mark.integration
class TestFreeEvolution:
    @pytest.fixture
    def grid(self) -> SpatialGrid:
        return SpatialGrid(n_points=128, x_min=-10.0, x_max=10.0)

    def test_split_step_agrees_with_rk4(self, grid: SpatialGrid) -> None:
        rho0 = pure_density(build_gaussian_packet(grid, 0.0, 1.0))
        model = FreeDecoherenceModel(mass=1.0, strength=0.5)

        split = run_master_equation(model, rho0, IntegrationPlan(dt=0.01, n_steps=100, record_every=10))
        rk4 = run_master_equation(model, rho0, IntegrationPlan(dt=0.01, n_steps=100, record_every=10, scheme=RK4))

        peak = np.max(np.abs(split.final.elements))
        assert np.max(np.abs(split.final.elements - rk4.final.elements)) < 0.01 * peak
        assert np.allclose(split.coherence_lengths, rk4.coherence_lengths, rtol=0.01)

    def test_without_kinetic_term_matches_closed_form(self, grid: SpatialGrid) -> None:
        rho0 = pure_density(build_gaussian_packet(grid, 1.0, 1.0))
        model = FreeDecoherenceModel(mass=1.0, strength=0.3, kinetic=False)

        run = run_master_equation(model, rho0, IntegrationPlan(dt=0.1, n_steps=10))

        expected = apply_spatial_decoherence(rho0, 0.3, 1.0)
        assert np.allclose(run.final.elements, expected.elements, rtol=1e-10, atol=1e-14)

    def test_conservation_and_purity(self, grid: SpatialGrid) -> None:
        psi0 = build_gaussian_packet(grid, 0.0, 1.0)

        model = FreeDecoherenceModel(mass=1.0, strength=0.2)

        run = coherence_length_series(model, psi0, IntegrationPlan(dt=0.01, n_steps=100))

        assert not run.truncated
        assert run.max_trace_error < 1e-6
        assert run.max_hermiticity_residue < 1e-8
        assert run.purity_non_increasing()
        assert run.min_eigenvalue > -1e-8
        assert run.coherence_lengths[-1] < run.coherence_lengths[0]

    def test_pure_free_spreading_keeps_purity(self, grid: SpatialGrid) -> None:
        run = coherence_length_series(
            FreeDecoherenceModel(mass=1.0, strength=0.0),
            build_gaussian_packet(grid, 0.0, 1.0),
            IntegrationPlan(dt=0.05, n_steps=20),
        )

        assert run.purities[-1] == pytest.approx(1.0, abs=1e-10)
        assert run.coherence_lengths[-1] > run.coherence_lengths[0]

    def test_diffusion_adds_to_position_spread(self) -> None:
        grid = SpatialGrid(n_points=256, x_min=-16.0, x_max=16.0)
        rho0 = pure_density(build_gaussian_packet(grid, 0.0, 1.0))
        plan = IntegrationPlan(dt=0.01, n_steps=200, record_every=200)
        strength, t = 0.1, 2.0

        free = run_master_equation(FreeDecoherenceModel(mass=1.0, strength=0.0), rho0, plan)
        diffused = run_master_equation(FreeDecoherenceModel(mass=1.0, strength=strength), rho0, plan)

        excess = _variance(diffused.final) - _variance(free.final)
        assert excess == pytest.approx(2.0 * strength * t ** 3 / 3.0, rel=0.02)

    def test_free_packet_spreads_at_the_known_rate(self) -> None:
        grid = SpatialGrid(n_points=512, x_min=-40.0, x_max=40.0)
        rho0 = pure_density(build_gaussian_packet(grid, 0.0, 1.0))

        run = run_master_equation(
            FreeDecoherenceModel(mass=1.0, strength=0.0), rho0, IntegrationPlan(dt=0.05, n_steps=200, record_every=200)
        )

        # sigma^2(t) = sigma0^2 + (t / (2 m sigma0))^2 at t = 10
        assert not run.truncated
        assert _variance(run.final) == pytest.approx(26.0, rel=0.005)

    def test_split_step_is_second_order(self, grid: SpatialGrid) -> None:
        rho0 = pure_density(build_gaussian_packet(grid, 0.0, 1.0))
        model = FreeDecoherenceModel(mass=1.0, strength=0.5)

        finals = []
        for dt in (0.1, 0.05, 0.025, 0.0125):
            n_steps = round(1.0 / dt)
            plan = IntegrationPlan(dt=dt, n_steps=n_steps, record_every=n_steps)
            finals.append(run_master_equation(model, rho0, plan).final.elements)
        errors = [float(np.max(np.abs(coarse - fine))) for coarse, fine in zip(finals, finals[1:])]

        assert math.log2(errors[0] / errors[1]) >= 1.8
        assert math.log2(errors[1] / errors[2]) >= 1.8

    def test_cat_corner_element_decays_with_separation(self, cat_grid: SpatialGrid) -> None:
        rho0 = pure_density(cat_state(cat_grid, 8.0, 1.0))
        plan = IntegrationPlan(dt=0.1, n_steps=10, record_every=10)
        strength = math.log(2.0) / 64.0

        frozen = run_master_equation(FreeDecoherenceModel(mass=1.0, strength=strength, kinetic=False), rho0, plan)
        heavy = run_master_equation(FreeDecoherenceModel(mass=1.0e4, strength=strength), rho0, plan)

        initial = abs(rho0.elements[96, 160])
        assert abs(frozen.final.elements[96, 160]) / initial == pytest.approx(0.5, rel=1e-10)
        assert abs(heavy.final.elements[96, 160]) / initial == pytest.approx(0.5, rel=1e-3)

    def test_single_steps_match_propagator(self, grid: SpatialGrid) -> None:
        rho0 = pure_density(build_gaussian_packet(grid, 0.0, 1.0))
        model = FreeDecoherenceModel(mass=1.0, strength=0.2)

        stepped = step_free_decoherence(step_free_decoherence(rho0, model, 0.01), model, 0.01)
        propagator = MasterPropagator(model, grid, 0.01)

        assert np.allclose(stepped.elements, propagator.advance(propagator.advance(rho0.elements)))


@pytest.mark.integration
class TestRunControl:
    def test_boundary_leak_truncates(self, caplog: pytest.LogCaptureFixture) -> None:
        grid = SpatialGrid(n_points=64, x_min=-8.0, x_max=8.0)
        rho0 = pure_density(build_gaussian_packet(grid, 0.0, 0.7, momentum=3.0))
        plan = IntegrationPlan(dt=0.05, n_steps=200, record_every=5)
        model = FreeDecoherenceModel(mass=1.0, strength=0.0)

        run = run_master_equation(model, rho0, plan)

        assert run.truncated
        assert run.leak_time is not None and run.leak_time < plan.duration
        assert run.times[-1] < run.leak_time
        assert f"Boundary leak at t={run.leak_time:.6g}" in caplog.text
        with pytest.raises(BoundaryLeak):
            run_master_equation(model, rho0, plan, on_leak="raise")

    @pytest.mark.parametrize(("edge_amplitude", "leaks"), [(2.0e-6, True), (1.0e-6, True), (0.5e-6, False)])
    def test_leak_threshold_is_relative_edge_amplitude(self, edge_amplitude: float, leaks: bool) -> None:
        grid = SpatialGrid(n_points=64, x_min=-8.0, x_max=8.0)
        density = np.full(grid.n_points, 1.0e-20)
        density[32] = 4.0
        density[-1] = 4.0 * edge_amplitude ** 2

        assert boundary_leaks(DensityMatrix(elements=np.diag(density).astype(complex), grid=grid)) is leaks

    def test_rk4_stability_bounds(self) -> None:
        grid = SpatialGrid(n_points=128, x_min=-10.0, x_max=10.0)
        model = FreeDecoherenceModel(mass=1.0, strength=0.1)

        with pytest.raises(StabilityViolation, match="kinetic"):
            IntegrationPlan(dt=0.05, n_steps=1, scheme=RK4).check_stability(model, grid)
        with pytest.raises(StabilityViolation):
            IntegrationPlan(dt=0.01, n_steps=1, scheme=RK4).check_stability(
                FreeDecoherenceModel(mass=1.0, strength=5.0), grid
            )

    def test_friction_stability_bound(self) -> None:
        grid = SpatialGrid(n_points=128, x_min=-10.0, x_max=10.0)
        model = CaldeiraLeggettModel(mass=1.0, damping=10.0, temperature=0.1)

        with pytest.raises(StabilityViolation, match="Friction"):
            IntegrationPlan(dt=0.01, n_steps=1).check_stability(model, grid)

    def test_cgs_models_are_rejected(self) -> None:
        grid = SpatialGrid(n_points=64, x_min=-8.0, x_max=8.0)
        model = CaldeiraLeggettModel(mass=1.0, damping=0.1, temperature=1.0, unit_system="cgs")

        with pytest.raises(ValueError, match="natural units"):
            MasterPropagator(model, grid, 0.01)


@pytest.mark.integration
class TestCaldeiraLeggett:
    def test_momentum_relaxes_at_twice_the_damping(self) -> None:
        grid = SpatialGrid(n_points=256, x_min=-16.0, x_max=16.0)
        rho0 = pure_density(build_gaussian_packet(grid, 0.0, 1.0, momentum=1.0))
        model = CaldeiraLeggettModel(mass=1.0, damping=0.5, temperature=0.25)

        run = run_master_equation(model, rho0, IntegrationPlan(dt=0.01, n_steps=100, record_every=10))

        assert run.mean_momenta[0] == pytest.approx(1.0, rel=1e-6)
        assert expectation_momentum(run.final) == pytest.approx(math.exp(-1.0), rel=0.02)
        assert run.max_trace_error < 1e-6

    def test_centred_packet_keeps_zero_mean_position(self) -> None:
        grid = SpatialGrid(n_points=256, x_min=-16.0, x_max=16.0)
        rho0 = pure_density(build_gaussian_packet(grid, 0.0, 1.0))
        model = CaldeiraLeggettModel(mass=1.0, damping=0.5, temperature=0.25)

        run = run_master_equation(model, rho0, IntegrationPlan(dt=0.01, n_steps=100, record_every=10))

        assert len(run.mean_positions) == 11
        assert max(abs(x) for x in run.mean_positions) < 1e-8

    def test_without_friction_reduces_to_free_step(self) -> None:
        grid = SpatialGrid(n_points=64, x_min=-8.0, x_max=8.0)
        rho0 = pure_density(build_gaussian_packet(grid, 0.0, 1.0))
        model = CaldeiraLeggettModel(mass=1.0, damping=0.0, temperature=1.0)

        stepped = step_caldeira_leggett(rho0, model, 0.01)

        assert np.allclose(stepped.elements, step_free_decoherence(rho0, model.free_part(), 0.01).elements)

    def test_split_step_agrees_with_dense_oracle(self) -> None:
        spacing = 0.45
        fine = SpatialGrid(n_points=128, x_min=-63.5 * spacing, x_max=63.5 * spacing)
        window = slice(48, 80)
        coarse = SpatialGrid(n_points=32, x_min=float(fine.x[48]), x_max=float(fine.x[79]))
        model = CaldeiraLeggettModel(mass=1.0, damping=1.0, temperature=0.25)

        rho_fine = pure_density(build_gaussian_packet(fine, 0.0, 1.0, momentum=1.0))
        restricted = rho_fine.elements[window, window]
        rho_coarse = DensityMatrix(elements=restricted / (np.trace(restricted).real * spacing), grid=coarse)

        run = run_master_equation(model, rho_fine, IntegrationPlan(dt=0.01, n_steps=100, record_every=100))
        oracle = dense_master_evolution(model, rho_coarse, 1.0)

        evolved = run.final.elements[window, window]
        evolved = evolved / (np.trace(evolved).real * spacing)
        scale = np.max(np.abs(oracle.elements))
        assert np.max(np.abs(evolved - oracle.elements)) <= 0.01 * scale
        assert oracle.trace() == pytest.approx(1.0, abs=1e-6)

    def test_oracle_refuses_large_grids(self) -> None:
        grid = SpatialGrid(n_points=128, x_min=-10.0, x_max=10.0)
        rho0 = pure_density(build_gaussian_packet(grid, 0.0, 1.0))

        with pytest.raises(ValueError, match="limited"):
            dense_master_evolution(FreeDecoherenceModel(mass=1.0, strength=0.1), rho0, 1.0)
