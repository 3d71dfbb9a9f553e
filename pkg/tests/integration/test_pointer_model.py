"""Integration tests for the continuously monitored two-level system."""

from __future__ import annotations

import math

import numpy as np
import pytest
from scipy import stats

from decolab.core.errors import BoundaryLeak
from decolab.core.models import SpatialGrid
from decolab.master.models import IntegrationPlan
from decolab.zeno import PointerModel, coupling_scan, evolve_pointer_model


def _model(meter_coupling: float, grid: SpatialGrid, transition: float = 1.0) -> PointerModel:
    return PointerModel(transition=transition, offset=0.0, meter_coupling=meter_coupling, grid=grid)


@pytest.mark.integration
class TestPointerEvolution:
    def test_unmonitored_transition_is_rabi(self) -> None:
        grid = SpatialGrid(n_points=256, x_min=-16.0, x_max=16.0)

        run = evolve_pointer_model(_model(0.0, grid), IntegrationPlan(dt=0.01, n_steps=300, record_every=10))

        expected = np.sin(np.asarray(run.times)) ** 2
        assert np.max(np.abs(np.asarray(run.upper_populations) - expected)) < 1e-4
        assert run.max_norm_error < 1e-10
        assert run.resolution_time is None

    def test_short_time_growth_is_quadratic(self) -> None:
        grid = SpatialGrid(n_points=256, x_min=-16.0, x_max=16.0)
        transition = 0.8

        run = evolve_pointer_model(
            _model(10.0, grid, transition), IntegrationPlan(dt=1.0e-3, n_steps=10, record_every=1)
        )

        assert run.times[-1] == pytest.approx(0.01)
        assert run.upper_populations[-1] / run.times[-1] ** 2 == pytest.approx(transition ** 2, rel=0.01)

    def test_strong_monitoring_gives_linear_growth(self) -> None:
        grid = SpatialGrid(n_points=1024, x_min=-32.0, x_max=32.0)

        run = evolve_pointer_model(_model(20.0, grid), IntegrationPlan(dt=1.0e-3, n_steps=1000, record_every=10))

        times = np.asarray(run.times)
        populations = np.asarray(run.upper_populations)
        window = times >= 0.25
        fit = stats.linregress(times[window], populations[window])

        assert not run.truncated
        assert fit.slope > 0.0
        assert fit.rvalue ** 2 > 0.99
        assert populations[-1] < math.sin(1.0) ** 2

    def test_branch_separation_resolves_before_end(self) -> None:
        grid = SpatialGrid(n_points=1024, x_min=-32.0, x_max=32.0)

        run = evolve_pointer_model(_model(10.0, grid), IntegrationPlan(dt=1.0e-3, n_steps=500, record_every=10))

        assert run.resolution_time == pytest.approx(0.1, abs=0.011)
        assert all(later <= earlier + 1e-12 for earlier, later in zip(run.branch_overlaps, run.branch_overlaps[1:]))

    def test_branch_reaching_the_edge_is_flagged(self) -> None:
        grid = SpatialGrid(n_points=256, x_min=-16.0, x_max=16.0)

        run = evolve_pointer_model(_model(20.0, grid), IntegrationPlan(dt=1.0e-3, n_steps=1000, record_every=50))

        assert run.truncated
        assert run.leak_time is not None and run.leak_time < 1.0
        assert run.times[-1] < run.leak_time


@pytest.mark.integration
class TestCouplingScan:
    def test_scan_keeps_order_and_decreases(self) -> None:
        grid = SpatialGrid(n_points=1024, x_min=-40.0, x_max=40.0)
        gammas = [0.0, 1.0, 4.0, 16.0]

        scan = coupling_scan(_model(0.0, grid), math.pi / 2.0, gammas, dt=2.0e-3, workers=2)

        assert [gamma for gamma, _ in scan] == gammas
        populations = [p for _, p in scan]
        assert populations[0] == pytest.approx(1.0, abs=1e-4)
        assert all(later < earlier for earlier, later in zip(populations, populations[1:]))

    def test_scan_rejects_unsorted_gammas(self) -> None:
        grid = SpatialGrid(n_points=256, x_min=-16.0, x_max=16.0)

        with pytest.raises(ValueError, match="sorted"):
            coupling_scan(_model(0.0, grid), 1.0, [2.0, 1.0])

    def test_scan_reports_leaks(self) -> None:
        grid = SpatialGrid(n_points=256, x_min=-16.0, x_max=16.0)

        with pytest.raises(BoundaryLeak):
            coupling_scan(_model(0.0, grid), math.pi / 2.0, [0.0, 10.0], dt=1.0e-2)
