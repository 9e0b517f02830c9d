"""Coupling-optimizer tests.

The refined optimizer is validated against the exhaustive coupling
lattice (its oracle), determinism is checked bitwise, and the sweep
machinery is checked for ordering and worker-count invariance.
"""

from __future__ import annotations

from dataclasses import replace

import numpy as np
import pytest

from levarray.errors import AllUnstableError
from levarray.optimize import (
    OptimizationProblem,
    SweepGrid,
    brute_force_verify,
    cyclic_align,
    evaluate,
    mechanical_steady_state,
    objective_id,
    optimize_couplings,
    parse_objective,
    sweep_lambda,
    sweep_point,
    two_particle_bogoliubov_scenario,
)
from levarray.system import SystemParams


SYMMETRIC_PROBLEM = OptimizationProblem(
    lambda1=0.38, lambda2=0.8, arity=2, count=3, symmetric=True
)
FREE_PROBLEM = OptimizationProblem(lambda1=0.61, lambda2=0.23, arity=2, count=2)


class TestObjectives:
    def test_round_trip(self):
        for name in ("dyadic", "triadic"):
            for count in (1, 2, 3):
                arity = 2 if name == "dyadic" else 3
                assert parse_objective(objective_id(arity, count)) == (arity, count)

    def test_rejects_unknown(self):
        for bad in ("dyadic-4", "triadic-0", "pairs-2", "dyadic", "dyadic-x"):
            with pytest.raises(ValueError):
                parse_objective(bad)


class TestProblem:
    def test_validation(self):
        with pytest.raises(ValueError):
            OptimizationProblem(lambda1=0.0, arity=4)
        with pytest.raises(ValueError):
            OptimizationProblem(lambda1=0.0, count=0)
        with pytest.raises(ValueError):
            OptimizationProblem(lambda1=0.0, g_max=0.0)

    def test_feasibility(self):
        assert OptimizationProblem(lambda1=1.0, lambda2=1.4).feasible
        assert not OptimizationProblem(lambda1=0.0, lambda2=1.5).feasible
        # Two-particle mode derives lambda2, so it is always feasible.
        assert OptimizationProblem(lambda1=0.0, lambda2=9.0, two_particle=True).feasible

    def test_spec_construction(self):
        spec = OptimizationProblem(lambda1=0.5, lambda2=1.0).spec((0.1, 0.2, 0.3))
        assert spec.lambda3 == pytest.approx(0.5, abs=1e-15)
        spec = OptimizationProblem(lambda1=0.8, two_particle=True).spec((0.1, 0.1, 0.1))
        assert spec.lambda3 == 0.0
        assert spec.lambda2 == pytest.approx(np.sqrt(1.64), rel=1e-15)


class TestEvaluate:
    def test_zero_coupling_scores_zero(self):
        value, stable = evaluate(SYMMETRIC_PROBLEM, (0.0, 0.0, 0.0))
        assert value == 0.0 and stable

    def test_infeasible_scores_zero(self):
        problem = OptimizationProblem(lambda1=0.0, lambda2=1.5)
        assert evaluate(problem, (0.1, 0.1, 0.1)) == (0.0, False)
        assert mechanical_steady_state(problem, (0.1, 0.1, 0.1)) is None

    def test_stable_point_scores_positive(self):
        value, stable = evaluate(SYMMETRIC_PROBLEM, (0.4, 0.4, 0.4))
        assert stable and value > 0.1


class TestOptimizer:
    def test_symmetric_returns_equal_triple(self):
        result = optimize_couplings(SYMMETRIC_PROBLEM)
        assert result.g[0] == result.g[1] == result.g[2]
        assert 0.0 <= result.g[0] <= SYMMETRIC_PROBLEM.g_max
        assert result.value >= result.seed_value
        assert result.evaluations >= 9
        assert not result.polished

    def test_symmetric_deterministic(self):
        first = optimize_couplings(SYMMETRIC_PROBLEM)
        second = optimize_couplings(SYMMETRIC_PROBLEM)
        assert first == second

    def test_free_deterministic(self):
        first = optimize_couplings(FREE_PROBLEM)
        second = optimize_couplings(FREE_PROBLEM)
        assert first == second

    def test_free_dominates_lattice_oracle(self):
        result = optimize_couplings(FREE_PROBLEM)
        lattice_value, lattice_g = brute_force_verify(FREE_PROBLEM, 0.05)
        assert result.value >= lattice_value - 1e-6
        assert max(lattice_g) <= FREE_PROBLEM.g_max

    def test_symmetric_dominates_lattice_oracle(self):
        result = optimize_couplings(SYMMETRIC_PROBLEM)
        lattice_value, _ = brute_force_verify(SYMMETRIC_PROBLEM, 0.01)
        assert result.value >= lattice_value - 1e-6

    def test_bound_monotonicity(self):
        loose = optimize_couplings(SYMMETRIC_PROBLEM)
        tight = optimize_couplings(replace(SYMMETRIC_PROBLEM, g_max=0.2))
        assert tight.value <= loose.value + 1e-6
        assert max(tight.g) <= 0.2

    def test_negligible_bound_scores_zero(self):
        result = optimize_couplings(replace(SYMMETRIC_PROBLEM, g_max=1e-4))
        assert result.value == 0.0

    def test_infeasible_raises(self):
        with pytest.raises(AllUnstableError):
            optimize_couplings(OptimizationProblem(lambda1=0.0, lambda2=1.5))

    def test_brute_force_resolution_check(self):
        with pytest.raises(ValueError):
            brute_force_verify(SYMMETRIC_PROBLEM, 0.03)

    def test_brute_force_symmetric_path(self):
        value, point = brute_force_verify(SYMMETRIC_PROBLEM, 0.1)
        direct = max(
            evaluate(SYMMETRIC_PROBLEM, (g, g, g))[0] for g in (0.0, 0.1, 0.2, 0.3, 0.4)
        )
        assert value == pytest.approx(direct, abs=1e-12)
        assert point[0] == point[1] == point[2]


class TestCyclicAlign:
    def test_rotation(self):
        assert cyclic_align((0.1, 0.4, 0.2)) == ((0.4, 0.2, 0.1), 1)
        assert cyclic_align((0.4, 0.2, 0.1)) == ((0.4, 0.2, 0.1), 0)
        assert cyclic_align((0.2, 0.1, 0.4)) == ((0.4, 0.2, 0.1), 2)


class TestSweep:
    def test_single_point_matches_sweep(self):
        grid = SweepGrid(template=SYMMETRIC_PROBLEM, lambda1_values=(0.38,), lambda2_values=(0.8,))
        points = sweep_lambda(grid, workers=1, polish_argmax=False)
        assert len(points) == 1
        direct = sweep_point(replace(SYMMETRIC_PROBLEM, lambda1=0.38, lambda2=0.8))
        assert points[0] == direct

    def test_grid_order_is_lambda1_major(self):
        grid = SweepGrid(
            template=SYMMETRIC_PROBLEM,
            lambda1_values=(0.3, 0.4),
            lambda2_values=(0.7, 0.8),
        )
        coords = [(p.lambda1, p.lambda2) for p in grid.problems()]
        assert coords == [(0.3, 0.7), (0.3, 0.8), (0.4, 0.7), (0.4, 0.8)]

    def test_worker_count_invariance(self):
        grid = SweepGrid(
            template=SYMMETRIC_PROBLEM,
            lambda1_values=(0.3, 0.4),
            lambda2_values=(0.7, 0.8),
        )
        serial = sweep_lambda(grid, workers=1, polish_argmax=False)
        parallel = sweep_lambda(grid, workers=2, polish_argmax=False)
        assert serial == parallel

    def test_infeasible_point_becomes_zero_row(self):
        point = sweep_point(OptimizationProblem(lambda1=0.0, lambda2=1.5))
        assert not point.feasible and not point.stable
        assert point.value == 0.0
        assert point.g == (0.0, 0.0, 0.0)
        assert set(point.dyadic.values()) == {0.0}
        assert point.dyadic_fom is None

    def test_stable_row_is_classified(self):
        point = sweep_point(replace(SYMMETRIC_PROBLEM, lambda1=0.38, lambda2=0.8))
        assert point.feasible and point.stable
        assert point.value > 0.1
        assert point.lambda3 == pytest.approx(np.sqrt(1 + 0.38**2 - 0.64), rel=1e-12)
        assert point.value == pytest.approx(point.dyadic_fom.e3, abs=1e-12)
        assert all(n >= 0.0 for n in point.n_eff)

    def test_two_particle_grid_collapses_lambda2(self):
        template = replace(SYMMETRIC_PROBLEM, two_particle=True, arity=3)
        grid = SweepGrid(
            template=template, lambda1_values=(0.1, 0.2), lambda2_values=(0.5, 0.9)
        )
        problems = grid.problems()
        assert len(problems) == 2
        point = sweep_point(problems[1])
        assert point.lambda2 == pytest.approx(np.sqrt(1.04), rel=1e-12)
        assert point.lambda3 == 0.0


class TestTwoParticleScenario:
    def test_symmetric_report(self):
        report = two_particle_bogoliubov_scenario(0.2, symmetric=True)
        assert set(report.triadic) == {"1|23", "2|31", "3|12"}
        assert min(report.triadic.values()) >= 0.0
        assert report.triadic_fom.e3 >= 0.0

    def test_cold_bath_does_better(self):
        cold = two_particle_bogoliubov_scenario(
            0.2, symmetric=True, params=SystemParams(nbar=0.0)
        )
        hot = two_particle_bogoliubov_scenario(0.2, symmetric=True)
        assert cold.triadic_fom.e3 > hot.triadic_fom.e3
