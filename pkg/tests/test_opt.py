"""Location/power/joint optimizers: closed forms, golden section, stationary
root enumeration, and convexity of the surrogate objective."""

import math

import numpy as np
import pytest

from fdrelay import (
    Allocation,
    DomainError,
    SystemConfig,
    closed_form_result,
    f_gradient,
    f_objective,
    joint_foc_roots,
    joint_v3_closed,
    link_stats,
    minimize_1d,
    optimal_location_closed,
    optimal_power_closed,
    select_joint_optimum,
    sequential_v2,
    ser_series,
)

from conftest import cfg_at, ser_series_grid_oracle


def prop2_rho_lambda(cfg):
    s = math.sqrt(1.0 + cfg.rsi_level * cfg.total_power)
    return s / (s + 1.0)


class TestClosedForms:
    def test_location_symmetric_no_rsi(self):
        assert optimal_location_closed(cfg_at(20.0, 0.0), 0.5) == pytest.approx(0.5, abs=1e-15)

    def test_location_moves_toward_source_with_rsi(self):
        vals = [optimal_location_closed(cfg_at(20.0, eps), 0.5)
                for eps in (0.0, 0.05, 0.1, 0.3)]
        assert all(a > b for a, b in zip(vals, vals[1:]))

    def test_power_symmetric_no_rsi(self):
        assert optimal_power_closed(cfg_at(20.0, 0.0), 0.5) == pytest.approx(0.5, abs=1e-15)

    def test_power_midpoint_matches_particular_solution(self):
        # at rho_d = 1/2 the closed form reduces to
        # sqrt(1 + eps P) / (sqrt(1 + eps P) + 1)
        for p_db, eps in ((10.0, 0.3), (20.0, 0.1), (40.0, 0.02)):
            cfg = cfg_at(p_db, eps)
            got = optimal_power_closed(cfg, 0.5)
            assert got == pytest.approx(prop2_rho_lambda(cfg), abs=1e-12)

    def test_power_grows_with_relay_distance(self):
        cfg = cfg_at(20.0, 0.1)
        vals = [optimal_power_closed(cfg, rd) for rd in (0.2, 0.4, 0.6, 0.8)]
        assert all(a < b for a, b in zip(vals, vals[1:]))

    def test_domains(self):
        cfg = cfg_at(20.0, 0.1)
        with pytest.raises(DomainError):
            optimal_location_closed(cfg, 0.0)
        with pytest.raises(DomainError):
            optimal_power_closed(cfg, 1.0)

    def test_closed_form_result_diagnostics(self):
        cfg = cfg_at(20.0, 0.1)
        res = closed_form_result("location", cfg, 0.5)
        assert res.method == "closed_form"
        assert res.allocation.rho_d == optimal_location_closed(cfg, 0.5)
        # a high-power approximation carries residual at finite power, and
        # the residual fades as power grows
        assert res.foc_residual > 0.0
        hi = closed_form_result("location", cfg_at(50.0, 0.1), 0.5)
        assert hi.foc_residual < res.foc_residual
        with pytest.raises(DomainError):
            closed_form_result("sideways", cfg, 0.5)


class TestMinimize1d:
    def test_symmetric_scenario_centers(self):
        cfg = cfg_at(20.0, 0.0)
        loc = minimize_1d("location", cfg, 0.5, tol=1e-6)
        pwr = minimize_1d("power", cfg, 0.5, tol=1e-6)
        assert loc.allocation.rho_d == pytest.approx(0.5, abs=1e-5)
        assert pwr.allocation.rho_lambda == pytest.approx(0.5, abs=1e-5)
        assert loc.bracket_width <= 1e-6
        assert pwr.bracket_width <= 1e-6

    def test_minimality_spot_check(self):
        cfg = cfg_at(25.0, 0.15)
        res = minimize_1d("location", cfg, 0.5, tol=1e-8)
        for probe in (0.25, 0.5, 0.75):
            probe_ser = ser_series(link_stats(cfg, Allocation(0.5, probe)), cfg)
            assert res.ser <= probe_ser + 1e-15

    def test_matches_closed_form_at_high_power(self):
        cfg = cfg_at(40.0, 0.1)
        loc = minimize_1d("location", cfg, 0.5, tol=1e-8)
        assert abs(loc.allocation.rho_d - optimal_location_closed(cfg, 0.5)) < 0.02
        pwr = minimize_1d("power", cfg, 0.5, tol=1e-8)
        assert abs(pwr.allocation.rho_lambda - optimal_power_closed(cfg, 0.5)) < 0.02

    def test_closed_form_gap_shrinks_with_power(self):
        gaps_loc, gaps_pwr = [], []
        for p_db in (20.0, 30.0, 40.0):
            cfg = cfg_at(p_db, 0.1)
            loc = minimize_1d("location", cfg, 0.5, tol=1e-9)
            pwr = minimize_1d("power", cfg, 0.5, tol=1e-9)
            gaps_loc.append(abs(loc.allocation.rho_d - optimal_location_closed(cfg, 0.5)))
            gaps_pwr.append(abs(pwr.allocation.rho_lambda - optimal_power_closed(cfg, 0.5)))
        assert gaps_loc[0] > gaps_loc[1] > gaps_loc[2]
        assert gaps_pwr[0] > gaps_pwr[1] > gaps_pwr[2]

    def test_result_metadata(self):
        cfg = cfg_at(20.0, 0.1)
        res = minimize_1d("power", cfg, 0.5, tol=1e-6)
        assert res.method == "golden_section"
        assert res.iterations > 10
        assert res.foc_residual >= 0.0

    def test_validation(self):
        cfg = cfg_at(20.0, 0.1)
        with pytest.raises(DomainError):
            minimize_1d("location", cfg, 0.5, tol=1.0)
        with pytest.raises(DomainError):
            minimize_1d("direction", cfg, 0.5)


class TestJointRoots:
    def test_particular_solution_always_present(self):
        rng = np.random.default_rng(7)
        for _ in range(20):
            cfg = cfg_at(rng.uniform(5.0, 45.0), rng.uniform(0.0, 0.4),
                         v=rng.uniform(1.6, 4.0))
            roots = joint_foc_roots(cfg)
            want = prop2_rho_lambda(cfg)
            assert any(
                abs(a.rho_lambda - want) < 1e-7 and abs(a.rho_d - 0.5) < 1e-7
                for a in roots
            )

    def test_v2_unique_root(self):
        cfg = cfg_at(20.0, 0.1, v=2.0)
        roots = joint_foc_roots(cfg)
        assert len(roots) == 1
        assert roots[0].rho_lambda == pytest.approx(prop2_rho_lambda(cfg), abs=1e-10)
        assert roots[0].rho_d == pytest.approx(0.5, abs=1e-10)

    def test_v2_no_rsi_degenerate_line_handled(self):
        # the stationarity equation vanishes identically; only the particular
        # solution is reported through selection
        cfg = cfg_at(20.0, 0.0, v=2.0)
        res = select_joint_optimum(cfg)
        assert res.allocation.rho_lambda == pytest.approx(0.5, abs=1e-9)
        assert res.allocation.rho_d == pytest.approx(0.5, abs=1e-9)

    def test_triple_coincidence_at_critical_rsi_power(self):
        # v=3, eps P = 3: the conjugate pair merges into the particular root,
        # leaving a triple zero; sign-based refinement can only localize it to
        # the cube root of the evaluation noise (~3e-6), hence the tolerance
        cfg = SystemConfig.bpsk(100.0, 0.03, 3.0)
        roots = joint_foc_roots(cfg)
        assert roots
        for alloc in roots:
            assert alloc.rho_lambda == pytest.approx(2.0 / 3.0, abs=1e-5)

    def test_roots_match_closed_v3(self):
        cfg = SystemConfig.bpsk(100.0, 0.08, 3.0)  # eps P = 8
        closed = sorted(joint_v3_closed(cfg))
        scanned = sorted(a.rho_lambda for a in joint_foc_roots(cfg))
        assert len(closed) == 3
        assert len(scanned) == 3
        for c, s in zip(closed, scanned):
            assert abs(c - s) < 1e-9

    def test_paired_location_consistent_with_location_closed_form(self):
        # the induced location of every root equals the fixed-split optimum
        # evaluated at that root's power ratio
        for eps_p, v in ((8.0, 3.0), (20.0, 3.0), (5.0, 2.5), (40.0, 3.7)):
            cfg = SystemConfig.bpsk(100.0, eps_p / 100.0, v)
            for alloc in joint_foc_roots(cfg):
                want = optimal_location_closed(cfg, alloc.rho_lambda)
                assert alloc.rho_d == pytest.approx(want, abs=1e-12)


class TestJointV3Closed:
    def test_critical_point(self):
        cfg = SystemConfig.bpsk(100.0, 0.03, 3.0)
        vals = joint_v3_closed(cfg)
        assert all(v == pytest.approx(2.0 / 3.0, abs=1e-12) for v in vals)

    def test_below_critical_single(self):
        cfg = SystemConfig.bpsk(100.0, 0.01, 3.0)  # eps P = 1 < 3
        vals = joint_v3_closed(cfg)
        assert len(vals) == 1
        assert vals[0] == pytest.approx(prop2_rho_lambda(cfg), abs=1e-12)

    def test_above_critical_three(self):
        cfg = SystemConfig.bpsk(100.0, 0.08, 3.0)
        assert len(joint_v3_closed(cfg)) == 3

    def test_requires_v3(self):
        with pytest.raises(DomainError):
            joint_v3_closed(cfg_at(20.0, 0.1, v=2.0))


class TestSelectJointOptimum:
    def test_no_rsi_symmetric(self):
        res = select_joint_optimum(cfg_at(20.0, 0.0))
        assert res.allocation.rho_lambda == pytest.approx(0.5, abs=1e-7)
        assert res.allocation.rho_d == pytest.approx(0.5, abs=1e-7)

    def test_v2_returns_unique_candidate(self):
        cfg = cfg_at(20.0, 0.1, v=2.0)
        res = select_joint_optimum(cfg)
        assert res.allocation.rho_lambda == pytest.approx(prop2_rho_lambda(cfg), abs=1e-9)
        assert res.allocation.rho_d == pytest.approx(0.5, abs=1e-9)

    def test_matches_grid_search_oracle(self):
        # exhaustive scipy-vectorized search over a 500 x 500 lattice
        cfg = cfg_at(20.0, 0.2)
        res = select_joint_optimum(cfg)
        grid = np.linspace(1e-3, 1.0 - 1e-3, 500)
        surface = ser_series_grid_oracle(cfg, grid, grid)
        i, j = np.unravel_index(np.argmin(surface), surface.shape)
        cell = grid[1] - grid[0]
        assert abs(res.allocation.rho_lambda - grid[i]) <= cell
        assert abs(res.allocation.rho_d - grid[j]) <= cell
        assert res.ser <= surface[i, j] + 1e-12

    def test_ser_not_worse_than_particular(self):
        for p_db, eps in ((10.0, 0.3), (20.0, 0.2), (40.0, 0.05)):
            cfg = cfg_at(p_db, eps)
            res = select_joint_optimum(cfg)
            part = Allocation(prop2_rho_lambda(cfg), 0.5)
            part_ser = ser_series(link_stats(cfg, part), cfg)
            assert res.ser <= part_ser + 1e-15


class TestSequentialV2:
    def test_matches_joint_at_v2(self):
        cfg = cfg_at(20.0, 0.1, v=2.0)
        seq = sequential_v2(cfg)
        joint = select_joint_optimum(cfg)
        assert seq.rho_lambda == pytest.approx(joint.allocation.rho_lambda, abs=1e-9)
        assert seq.rho_d == pytest.approx(joint.allocation.rho_d, abs=1e-9)

    def test_no_rsi(self):
        got = sequential_v2(cfg_at(20.0, 0.0, v=2.0))
        assert got.rho_lambda == pytest.approx(0.5, abs=1e-15)
        assert got.rho_d == 0.5

    def test_critical_value(self):
        got = sequential_v2(SystemConfig.bpsk(100.0, 0.03, 2.0))  # eps P = 3
        assert got.rho_lambda == pytest.approx(2.0 / 3.0, abs=1e-15)

    def test_requires_v2(self):
        with pytest.raises(DomainError):
            sequential_v2(cfg_at(20.0, 0.1, v=3.0))


class TestConvexityAndStationarity:
    def test_positive_curvature_each_variable(self):
        rng = np.random.default_rng(11)
        h = 1e-4
        grid = np.linspace(0.02, 0.98, 100)
        for _ in range(20):
            cfg = cfg_at(rng.uniform(0.0, 50.0), rng.uniform(0.0, 0.5),
                         v=rng.uniform(1.5, 4.5))
            other = rng.uniform(0.1, 0.9)
            for x in grid:
                d2_rd = (
                    f_objective(Allocation(other, x + h), cfg)
                    - 2.0 * f_objective(Allocation(other, x), cfg)
                    + f_objective(Allocation(other, x - h), cfg)
                )
                d2_rl = (
                    f_objective(Allocation(x + h, other), cfg)
                    - 2.0 * f_objective(Allocation(x, other), cfg)
                    + f_objective(Allocation(x - h, other), cfg)
                )
                assert d2_rd > 0.0
                assert d2_rl > 0.0

    def test_particular_solution_is_stationary(self):
        rng = np.random.default_rng(13)
        for _ in range(50):
            cfg = SystemConfig.bpsk(
                total_power=10.0 ** rng.uniform(1.0, 6.0),
                rsi_level=rng.uniform(0.0, 0.5),
                pathloss_exp=rng.uniform(1.5, 4.0),
                sum_distance=rng.uniform(0.5, 2.0),
            )
            alloc = Allocation(prop2_rho_lambda(cfg), 0.5)
            g = f_gradient(alloc, cfg)
            assert max(abs(g[0]), abs(g[1])) < 1e-9


class TestFloorRemoval:
    def test_fixed_allocation_plateaus_but_joint_keeps_dropping(self):
        fixed, joint = {}, {}
        for p_db in (40.0, 50.0, 60.0):
            cfg = cfg_at(p_db, 0.2)
            fixed[p_db] = ser_series(link_stats(cfg, Allocation(0.5, 0.5)), cfg)
            joint[p_db] = select_joint_optimum(cfg).ser
        assert fixed[60.0] / fixed[40.0] > 0.9
        assert joint[40.0] > joint[50.0] > joint[60.0]
        assert joint[60.0] / joint[40.0] < 0.5
