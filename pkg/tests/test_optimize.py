import math
from dataclasses import replace

import pytest

from aqrm import closed_form as cf
from aqrm import exact, optimize
from aqrm.optimize import OptimizerConfig, SolveStatus, SQRT_HALF
from aqrm.params import ModelParams, VariationalParams


class TestMinimizeEnergy:
    def test_zero_coupling_limit(self):
        m = ModelParams(1.0, 1.0, 0.0, 1.0)
        res = optimize.minimize_energy(m)
        assert res.e_var == pytest.approx(-math.sqrt(2.0) / 2.0, abs=1e-8)
        assert res.v_opt.alpha <= 1e-4
        assert res.status is SolveStatus.CONVERGED

    def test_zero_delta_limit(self):
        m = ModelParams(0.0, 1.0, 0.7, 0.4)
        res = optimize.minimize_energy(m)
        assert res.e_var == pytest.approx(-0.69, abs=1e-8)

    def test_symmetric_strong_coupling(self):
        m = ModelParams(1.0, 1.0, 2.0, 0.0)
        res = optimize.minimize_energy(m)
        assert abs(res.v_opt.p - SQRT_HALF) <= 1e-3
        assert res.v_opt.alpha == pytest.approx(2.0, abs=0.1)
        assert res.v_opt.theta == pytest.approx(math.pi / 2, abs=0.1)

    def test_deviation_at_resonance(self):
        m = ModelParams(1.0, 1.0, 1.0, 0.5)
        res = optimize.minimize_energy(m)
        s = exact.converged_ground_state(m)
        dev = res.e_var - s.energy
        assert 0.0 <= dev <= 0.02

    def test_requires_canonical_model(self):
        with pytest.raises(ValueError):
            optimize.minimize_energy(ModelParams(1.0, 1.0, -0.5, 0.0))
        with pytest.raises(ValueError):
            optimize.minimize_energy(ModelParams(1.0, 1.0, 0.5, -0.1))

    def test_determinism(self):
        m = ModelParams(1.3, 0.9, 1.1, 0.7)
        r1 = optimize.minimize_energy(m)
        r2 = optimize.minimize_energy(m)
        assert r1.e_var == r2.e_var
        assert r1.v_opt == r2.v_opt
        assert r1.stationarity == r2.stationarity

    def test_upper_bound_property(self):
        for g in (0.3, 0.9, 1.7):
            m = ModelParams(0.8, 1.0, g, 1.2)
            res = optimize.minimize_energy(m)
            s = exact.converged_ground_state(m)
            assert res.e_var >= s.energy - 1e-9

    def test_gamma_never_raises_optimum(self):
        for delta in (0.5, 1.0, 5.0):
            m = ModelParams(delta, 1.0, 0.8, 0.5)
            e0 = optimize.minimize_energy(m).e_var
            e1 = optimize.minimize_energy(m, OptimizerConfig(include_gamma=True)).e_var
            assert e1 <= e0 + 1e-10

    def test_gamma_improves_large_delta(self):
        m = ModelParams(5.0, 1.0, math.sqrt(5.0) / 2.0, 0.5)
        e0 = optimize.minimize_energy(m).e_var
        r1 = optimize.minimize_energy(m, OptimizerConfig(include_gamma=True))
        assert r1.e_var < e0
        assert abs(r1.v_opt.gamma) > 0.02

    def test_custom_start_set(self):
        m = ModelParams(1.0, 1.0, 0.5, 0.0)
        starts = (VariationalParams(0.4, 1.8, 0.7),)
        res = optimize.minimize_energy(m, OptimizerConfig(start_set=starts))
        full = optimize.minimize_energy(m)
        assert res.e_var == pytest.approx(full.e_var, abs=1e-9)

    def test_stationarity_at_interior_optimum(self):
        m = ModelParams(1.0, 1.0, 0.8, 1.0)
        res = optimize.minimize_energy(m)
        assert res.stationarity <= 1e-5


class TestStationarityResidual:
    def test_small_at_optimum(self):
        m = ModelParams(1.0, 1.0, 0.8, 1.0)
        res = optimize.minimize_energy(m)
        assert optimize.stationarity_residual(m, res.v_opt) <= 1e-5

    def test_large_off_optimum(self):
        m = ModelParams(1.0, 1.0, 0.8, 1.0)
        res = optimize.minimize_energy(m)
        v = replace(res.v_opt, theta=res.v_opt.theta - 0.3)
        assert optimize.stationarity_residual(m, v) > 1e-2

    def test_boundary_components_skipped(self):
        m = ModelParams(1.0, 1.0, 0.0, 1.0)
        v = VariationalParams(0.0, 2.0, 0.5)  # alpha pinned at the lower bound
        res = optimize.stationarity_residual(m, v)
        assert math.isfinite(res)


class TestFixedWeightSolve:
    def test_matches_free_solve_without_bias(self):
        m = ModelParams(1.0, 1.0, 0.5, 0.0)
        free = optimize.minimize_energy(m)
        fixed = optimize.fixed_weight_solve(m)
        assert fixed.e_var == pytest.approx(free.e_var, abs=1e-8)
        assert fixed.v_opt.p == SQRT_HALF

    def test_penalized_with_bias(self):
        m = ModelParams(1.0, 1.0, 0.5, 1.0)
        free = optimize.minimize_energy(m)
        fixed = optimize.fixed_weight_solve(m)
        assert fixed.e_var - free.e_var > 0.05

    def test_never_below_free(self):
        for g, eps in ((0.3, 0.0), (1.0, 0.5), (1.8, 2.0)):
            m = ModelParams(1.0, 1.0, g, eps)
            assert (
                optimize.fixed_weight_solve(m).e_var
                >= optimize.minimize_energy(m).e_var - 1e-10
            )


class TestContinuationSweep:
    def test_single_point_matches_minimize(self):
        m = ModelParams(1.0, 1.0, 0.9, 0.4)
        seq = optimize.continuation_sweep([m])
        solo = optimize.minimize_energy(m)
        assert seq[0].e_var == pytest.approx(solo.e_var, abs=1e-12)

    def test_symmetric_sweep_keeps_weight(self):
        points = [ModelParams(1.0, 1.0, 0.1 + 0.2 * k, 0.0) for k in range(10)]
        results = optimize.continuation_sweep(points)
        for res in results:
            assert abs(res.v_opt.p - SQRT_HALF) <= 1e-3

    def test_energy_decreases_with_coupling(self):
        points = [ModelParams(1.0, 1.0, 0.25 * k, 2.0) for k in range(9)]
        results = optimize.continuation_sweep(points)
        energies = [r.e_var for r in results]
        assert all(b <= a + 1e-10 for a, b in zip(energies, energies[1:]))

    def test_matches_independent_solves(self):
        points = [ModelParams(1.0, 1.0, 0.4 * k, 0.7) for k in range(5)]
        swept = optimize.continuation_sweep(points)
        for m, res in zip(points, swept):
            solo = optimize.minimize_energy(m)
            assert res.e_var == pytest.approx(solo.e_var, abs=1e-9)


class TestConfigValidation:
    def test_bad_tolerances(self):
        with pytest.raises(ValueError):
            OptimizerConfig(energy_tol=0.0)
        with pytest.raises(ValueError):
            OptimizerConfig(param_tol=-1.0)

    def test_empty_start_set(self):
        with pytest.raises(ValueError):
            OptimizerConfig(start_set=())

    def test_default_grid_dedupes_at_zero_coupling(self):
        grid = optimize.default_start_grid(ModelParams(1.0, 1.0, 0.0, 0.0))
        assert len(grid) == 12  # one alpha value survives
        assert all(v.alpha == 0.0 for v in grid)
