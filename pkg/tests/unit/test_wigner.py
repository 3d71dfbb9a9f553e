"""Unit tests for the Wigner transform and the oscillator demo."""

from __future__ import annotations

import math
from pathlib import Path

import numpy as np
import pytest
from scipy.special import eval_laguerre

from decolab.core.errors import DimensionMismatch, GridTooNarrow, NonHermitianInput
from decolab.core.models import DensityMatrix, SpatialGrid
from decolab.core.states import build_gaussian_packet, cat_state, mixture, pure_density
from decolab.lib.matrix_dump import read_matrix_dump
from decolab.lib.tables import read_csv
from decolab.rates.scattering import apply_spatial_decoherence
from decolab.wigner import (
    decohered_oscillator_demo,
    hermite_functions,
    marginal_momentum,
    marginal_position,
    oscillator_eigenstate,
    wigner_transform,
    write_wigner_csv,
    write_wigner_dump,
)


DEMO_GRID = SpatialGrid(n_points=256, x_min=-16.0, x_max=16.0)


def _oscillator_wigner(n: int, x: np.ndarray, p: np.ndarray) -> np.ndarray:
    radius = x[:, None] ** 2 + p[None, :] ** 2
    return (-1) ** n / math.pi * np.exp(-radius) * eval_laguerre(n, 2.0 * radius)


@pytest.mark.unit
class TestWignerTransform:
    def test_ground_state_gaussian(self) -> None:
        rho = pure_density(build_gaussian_packet(DEMO_GRID, 0.0, 1.0 / math.sqrt(2.0)))

        w = wigner_transform(rho)

        expected = np.exp(-w.x[:, None] ** 2 - w.momenta[None, :] ** 2) / math.pi
        assert np.max(np.abs(w.values - expected)) < 1e-6
        assert w.norm() == pytest.approx(1.0, abs=1e-8)

    def test_level_nine_matches_laguerre_form(self) -> None:
        rho = pure_density(oscillator_eigenstate(DEMO_GRID, 9))

        w = wigner_transform(rho)

        expected = _oscillator_wigner(9, w.x, w.momenta)
        assert np.max(np.abs(w.values - expected)) < 1e-5
        assert w.min() < 0.0

    def test_momentum_axis(self) -> None:
        w = wigner_transform(pure_density(build_gaussian_packet(DEMO_GRID, 0.0, 1.0)))

        assert np.all(np.diff(w.momenta) > 0.0)
        assert w.dp == pytest.approx(math.pi / (DEMO_GRID.n_points * DEMO_GRID.spacing))
        assert 0.0 in w.momenta

    def test_moving_packet_is_centred_on_its_momentum(self) -> None:
        rho = pure_density(build_gaussian_packet(DEMO_GRID, 0.0, 1.0, momentum=2.0))

        w = wigner_transform(rho)

        mean_p = np.sum(w.momenta * marginal_momentum(w)) * w.dp
        assert mean_p == pytest.approx(2.0, rel=1e-6)

    def test_marginals(self, cat_rho: DensityMatrix) -> None:
        w = wigner_transform(cat_rho)

        assert np.allclose(marginal_position(w), cat_rho.diagonal().real, atol=1e-12)
        momentum = marginal_momentum(w)
        assert np.all(momentum > -1e-10)
        assert np.sum(momentum) * w.dp == pytest.approx(1.0, abs=1e-8)

    def test_cat_fringes_fade_with_decoherence(self, cat_rho: DensityMatrix) -> None:
        before = wigner_transform(cat_rho)
        after = wigner_transform(apply_spatial_decoherence(cat_rho, 0.0625, 1.0))

        assert before.min() < -0.1
        assert after.min() > 0.1 * before.min()
        assert np.allclose(marginal_position(after), marginal_position(before), atol=1e-12)

    def test_cat_midpoint_fringe_period(self) -> None:
        separation = 8.0
        grid = SpatialGrid(n_points=1024, x_min=-64.0, x_max=63.875)
        w = wigner_transform(pure_density(cat_state(grid, separation, 1.0)))

        window = np.abs(w.momenta) < 2.0
        p = w.momenta[window]
        fringe = w.at_position(0.0)[window]
        crossings = [
            p[i] - fringe[i] * (p[i + 1] - p[i]) / (fringe[i + 1] - fringe[i])
            for i in range(p.size - 1)
            if fringe[i] * fringe[i + 1] < 0.0
        ]

        assert len(crossings) >= 8
        period = 2.0 * float(np.mean(np.diff(crossings)))
        assert period == pytest.approx(2.0 * math.pi / separation, rel=0.01)

    def test_transform_is_linear_over_mixtures(self) -> None:
        left = pure_density(build_gaussian_packet(DEMO_GRID, -2.0, 1.0, momentum=1.0))
        right = pure_density(cat_state(DEMO_GRID, 6.0, 0.8))

        mixed = wigner_transform(mixture([left, right], [0.3, 0.7]))

        expected = 0.3 * wigner_transform(left).values + 0.7 * wigner_transform(right).values
        assert np.max(np.abs(mixed.values - expected)) < 1e-12

    def test_reflection_maps_x_and_p_to_minus(self) -> None:
        rho = pure_density(build_gaussian_packet(DEMO_GRID, 2.0, 1.0, momentum=1.5))
        reflected = DensityMatrix(elements=rho.elements[::-1, ::-1].copy(), grid=DEMO_GRID)

        w = wigner_transform(rho)
        mirrored = wigner_transform(reflected)

        # column 0 holds p = -p_max, whose mirror image is off the momentum grid
        assert np.max(np.abs(mirrored.values[:, 1:] - w.values[::-1, :0:-1])) < 1e-12
        assert np.allclose(mirrored.x, -w.x[::-1])

    def test_non_hermitian_input(self, gaussian_rho: DensityMatrix) -> None:
        elements = gaussian_rho.elements.copy()
        elements[0, 5] += 0.1

        with pytest.raises(NonHermitianInput):
            wigner_transform(DensityMatrix(elements=elements, grid=gaussian_rho.grid))

    def test_requires_spatial_matrix(self) -> None:
        with pytest.raises(DimensionMismatch):
            wigner_transform(DensityMatrix(elements=np.eye(4) / 4.0))


@pytest.mark.unit
class TestOscillator:
    def test_hermite_functions_are_orthonormal(self) -> None:
        table = hermite_functions(DEMO_GRID.x, 12)

        gram = table @ table.T * DEMO_GRID.spacing

        assert np.allclose(gram, np.eye(13), atol=1e-10)

    def test_narrow_grid_rejected(self) -> None:
        with pytest.raises(GridTooNarrow):
            oscillator_eigenstate(SpatialGrid(n_points=32, x_min=-2.0, x_max=2.0), 9)

    def test_negative_level_rejected(self) -> None:
        with pytest.raises(ValueError):
            hermite_functions(DEMO_GRID.x, -1)

    def test_decoherence_spreads_momentum_only(self) -> None:
        _, pure = decohered_oscillator_demo(0, 0.0)
        damped_rho, damped = decohered_oscillator_demo(0, 0.5)

        assert pure.variance_p() == pytest.approx(0.5, rel=1e-6)
        assert damped.variance_p() == pytest.approx(0.5 + 2.0 * 0.5, rel=1e-3)
        assert damped.variance_x() == pytest.approx(pure.variance_x(), rel=1e-9)
        assert damped_rho.purity() < 1.0
        assert damped.min() > pure.min() - 1e-12

    def test_level_nine_is_symmetric_in_phase_space(self) -> None:
        _, w = decohered_oscillator_demo(9, 0.0)

        assert w.variance_x() == pytest.approx(9.5, rel=1e-6)
        assert w.variance_p() == pytest.approx(w.variance_x(), abs=1e-6)

    def test_level_nine_negativity_fades_with_decoherence(self) -> None:
        minima = [decohered_oscillator_demo(9, lambda_t)[1].min() for lambda_t in (0.0, 0.05, 0.1, 0.25, 0.5)]

        assert minima[0] < -0.2
        assert all(later > earlier for earlier, later in zip(minima, minima[1:]))


@pytest.mark.unit
class TestWignerExport:
    def test_csv_rows_vary_momentum_fastest(self, gaussian_rho: DensityMatrix, tmp_path: Path) -> None:
        w = wigner_transform(gaussian_rho)

        _, header, rows = read_csv(write_wigner_csv(w, tmp_path / "w.csv", [("experiment", "wigner")]))

        assert header == ["x", "p", "W"]
        assert len(rows) == w.x.size * w.momenta.size
        assert float(rows[0][0]) == float(rows[1][0])
        assert float(rows[1][1]) > float(rows[0][1])

    def test_dump_holds_the_values(self, gaussian_rho: DensityMatrix, tmp_path: Path) -> None:
        w = wigner_transform(gaussian_rho)

        header, values = read_matrix_dump(write_wigner_dump(w, tmp_path / "w.wig"))

        assert header["axes"] == ["x", "p"]
        assert header["origins"][1] == pytest.approx(float(w.momenta[0]))
        assert np.array_equal(values, w.values)
