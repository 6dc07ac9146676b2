import math

import numpy as np
import pytest
import sure
from mock import Mock, patch
from numpy.testing import assert_allclose, assert_array_equal

from pextragrad import extragradient
from pextragrad.errors import (InfeasiblePointError, InvariantViolation, LineSearchError, ProjectionError, UsageError,
                               VanishingOperatorError)
from pextragrad.extragradient import (CUSTOM, LOG, EInexPM, EInexPMConfig, EInexPMLS, InvariantMonitor, LSConfig, Status,
                                      armijo_search, derived_constants, einexpm_solve, einexpm_step, einexpmls_solve,
                                      gamma_schedule, halfspace_stepsize, schedule_term, solve)
from pextragrad.fw_projection import FWConfig
from pextragrad.problems import linear_saddle_operator, shifted_identity, zero_operator


def fast_saddle_config(**changes):
    return EInexPMConfig(alpha=0.21, gamma_bar=0.106, b_bar=100.0, max_outer=200).replace(**changes)


def test_harmonic_schedule():
    cfg = EInexPMConfig()

    schedule_term(1, cfg).should.eql(1.0)
    abs(schedule_term(3, cfg) - 1.0 / 6.0).should.be.lower_than(1e-15)
    abs(gamma_schedule(3, 10.0, cfg) - 1.0 / 60.0).should.be.lower_than(1e-15)


def test_gamma_is_capped():
    cfg = EInexPMConfig(gamma_bar=0.106)

    abs(gamma_schedule(1, 0.0, cfg) - 0.999 * 0.106).should.be.lower_than(1e-15)
    abs(gamma_schedule(1, 0.5, cfg) - 0.999 * 0.106).should.be.lower_than(1e-15)


def test_log_schedule():
    cfg = EInexPMConfig(a_schedule=LOG, b_bar=2.0)

    abs(schedule_term(1, cfg) - (4.0 - 2.0 / math.log(2.0))).should.be.lower_than(1e-12)
    abs(schedule_term(2, cfg) - (2.0 / math.log(2.0) - 2.0 / math.log(3.0))).should.be.lower_than(1e-12)


def test_custom_schedule():
    cfg = EInexPMConfig(a_schedule=CUSTOM, schedule_terms=[0.5, 0.25])

    schedule_term(2, cfg).should.eql(0.25)
    schedule_term(3, cfg).should.eql(0.0)
    gamma_schedule(3, 1.0, cfg).should.eql(0.0)


def test_schedule_rejects_bad_input():
    cfg = EInexPMConfig()

    schedule_term.when.called_with(0, cfg).should.throw(UsageError)
    gamma_schedule.when.called_with(1, -1.0, cfg).should.throw(UsageError)


def test_schedule_terms_sum_to_b0():
    cfg = EInexPMConfig(b_bar=3.0)

    total = sum(schedule_term(k, cfg) for k in range(1, 10001))

    abs(total - (6.0 - 3.0 / 10000)).should.be.lower_than(1e-9)


def test_einexpm_config_validation():
    EInexPMConfig.when.called_with(alpha=0.0).should.throw(UsageError)
    EInexPMConfig.when.called_with(gamma_bar=0.5).should.throw(UsageError)
    EInexPMConfig.when.called_with(gamma_bar=0.0).should.throw(UsageError)
    EInexPMConfig.when.called_with(a_schedule="geometric").should.throw(UsageError)
    EInexPMConfig.when.called_with(a_schedule=CUSTOM).should.throw(UsageError)
    EInexPMConfig.when.called_with(a_schedule=CUSTOM, schedule_terms=[-1.0]).should.throw(UsageError)
    EInexPMConfig.when.called_with(b_bar=0.0).should.throw(UsageError)
    EInexPMConfig.when.called_with(outer_tol=0.0).should.throw(UsageError)
    EInexPMConfig.when.called_with(max_outer=0).should.throw(UsageError)
    EInexPMConfig.when.called_with(ref_tol=-1.0).should.throw(UsageError)


def test_einexpm_config_replace():
    cfg = EInexPMConfig(alpha=0.11)

    changed = cfg.replace(gamma_bar=0.01)

    changed.alpha.should.eql(0.11)
    changed.gamma_bar.should.eql(0.01)
    cfg.gamma_bar.should.eql(0.106)


def test_step_bound_and_derived_constants():
    cfg = EInexPMConfig(alpha=0.21, gamma_bar=0.106)
    L = math.sqrt(2.0)

    eta_bar, nu_bar = derived_constants(cfg, L)

    abs(cfg.step_bound(L) - math.sqrt(0.788 / 2.0)).should.be.lower_than(1e-12)
    abs(eta_bar - 0.6998).should.be.lower_than(1e-12)
    expected_nu = 0.21 ** 2 * (0.894 + 0.21 * L) ** 2 / 0.894 ** 4
    abs(nu_bar - expected_nu).should.be.lower_than(1e-12)


def test_ls_config_validation():
    LSConfig.when.called_with(beta_lo=2.0, beta_hi=1.0).should.throw(UsageError)
    LSConfig.when.called_with(sigma=1.0).should.throw(UsageError)
    LSConfig.when.called_with(rho=0.0).should.throw(UsageError)
    LSConfig.when.called_with(backtrack=1.5).should.throw(UsageError)
    # 2 - sqrt(3) is about 0.268
    LSConfig.when.called_with(gamma_bar=0.3).should.throw(UsageError)
    LSConfig.when.called_with(rho=0.9, gamma_bar=0.15).should.throw(UsageError)
    LSConfig.when.called_with(max_backtracks=0).should.throw(UsageError)


def test_ls_config_derived_values():
    cfg = LSConfig(gamma_bar=0.2)

    abs(cfg.gamma - 0.1998).should.be.lower_than(1e-15)
    abs(cfg.fejer_constant() - 0.375).should.be.lower_than(1e-12)
    cfg.beta(7).should.eql(1.0)


def test_ls_beta_rule():
    cfg = LSConfig(beta_lo=0.5, beta_hi=2.0, beta_rule=lambda k: 0.5 + 1.0 / k)

    cfg.beta(1).should.eql(1.5)
    LSConfig(beta_lo=0.5, beta_hi=1.0, beta_rule=lambda k: 3.0).beta.when.called_with(1).should.throw(UsageError)


def test_armijo_accepts_the_first_trial():
    cfg = LSConfig(sigma=0.9)
    F = Mock(return_value=np.array([1.0, 0.0]))
    x = np.array([0.5, 0.0])
    y = np.array([0.0, 0.0])

    i, z = armijo_search(x, y, F, cfg)

    i.should.eql(0)
    assert_allclose(z, [0.05, 0.0])


def test_armijo_backtracks():
    cfg = LSConfig(sigma=0.99, rho=0.5, backtrack=0.5)
    problem = shifted_identity([0.0, 0.0])
    x = np.array([0.0, 1.0])
    y = np.array([0.0, 0.0])

    i, z = armijo_search(x, y, problem.F, cfg)

    # <z, y - x> <= -0.5 needs a step of at most 1/2
    i.should.eql(1)
    assert_allclose(z, [0.0, 0.505])


def test_armijo_gives_up():
    cfg = LSConfig(max_backtracks=5)
    F = Mock(return_value=np.array([1.0, 0.0]))
    x = np.array([0.0, 0.0])
    y = np.array([0.5, 0.0])

    with pytest.raises(LineSearchError) as info:
        armijo_search(x, y, F, cfg, Fx=np.array([1.0, 0.0]))

    info.value.backtracks.should.eql(5)
    F.call_count.should.eql(6)


def test_armijo_needs_a_direction():
    x = np.array([0.5, 0.0])

    armijo_search.when.called_with(x, x.copy(), Mock(), LSConfig()).should.throw(UsageError)


def test_halfspace_stepsize():
    halfspace_stepsize(np.array([1.0, 0.0]), np.array([0.5, 0.0]), np.array([1.0, 0.0])).should.eql(0.5)
    halfspace_stepsize(np.array([1.0, 0.0]), np.array([1.0, 0.0]), np.array([1.0, 0.0])).should.eql(0.0)


def test_halfspace_stepsize_vanishing():
    z = np.array([0.5, 0.0])

    with pytest.raises(VanishingOperatorError) as info:
        halfspace_stepsize(np.array([1.0, 0.0]), z, np.zeros(2))

    assert_array_equal(info.value.point, z)


def test_einexpm_step_records():
    problem = linear_saddle_operator()
    cfg = fast_saddle_config()

    x_next, record = einexpm_step(problem.x_start, 1, problem, cfg)

    record.k.should.eql(1)
    abs(record.F_norm_sq - 0.5).should.be.lower_than(1e-15)
    abs(record.gamma_k - 0.999 * 0.106).should.be.lower_than(1e-15)
    record.fw_iters.should.eql(record.fw_iters_y + record.fw_iters_x)
    record.fw_iters_y.should.be.greater_than_or_equal_to(1)
    abs(record.step_norm - np.linalg.norm(x_next - problem.x_start)).should.be.lower_than(1e-15)
    problem.feasible_set.contains(x_next).should.be.true
    record.terminal.should.be.false


def test_zero_operator_stops_at_once():
    problem = zero_operator(2)

    for method in ("einexpm", "einexpmls"):
        x, trace = solve(problem, method)

        trace.status.should.eql(Status.CONVERGED)
        trace.outer_steps.should.eql(1)
        assert_allclose(x, problem.x_start)
        trace.residual.should.eql(0.0)


def test_einexpm_on_the_shifted_identity():
    problem = shifted_identity([0.1, 0.1])
    cfg = EInexPMConfig(alpha=0.5, gamma_bar=0.25, max_outer=1000)
    monitor = InvariantMonitor.for_problem(problem)

    x, trace = einexpm_solve(problem, cfg, monitor=monitor)

    trace.status.should.eql(Status.CONVERGED)
    np.linalg.norm(x - problem.x_ref).should.be.lower_than(1e-4)
    monitor.checks.should.be.greater_than(0)
    monitor.ok.should.be.true


def test_einexpmls_on_the_shifted_identity():
    problem = shifted_identity([0.1, 0.1])
    monitor = InvariantMonitor.for_problem(problem)

    x, trace = einexpmls_solve(problem, LSConfig(max_outer=1000), monitor=monitor)

    trace.status.should.eql(Status.CONVERGED)
    np.linalg.norm(x - problem.x_ref).should.be.lower_than(1e-4)
    monitor.ok.should.be.true
    distances = trace.distances()
    for before, after in zip(distances, distances[1:]):
        after.should.be.lower_than_or_equal_to(before + 1e-8)


def test_einexpm_on_the_linear_saddle():
    problem = linear_saddle_operator()
    monitor = InvariantMonitor.for_problem(problem)

    x, trace = einexpm_solve(problem, fast_saddle_config(), monitor=monitor)

    trace.status.should.eql(Status.CONVERGED)
    monitor.ok.should.be.true
    trace.residual.should.be.lower_than(1e-4)
    problem.feasible_set.contains(x).should.be.true


def test_runs_are_deterministic():
    problem = linear_saddle_operator()
    cfg = fast_saddle_config(max_outer=5)

    first_x, first = einexpm_solve(problem, cfg)
    second_x, second = einexpm_solve(problem, cfg)

    assert_array_equal(first_x, second_x)
    [r.fw_iters for r in first.records].should.eql([r.fw_iters for r in second.records])


def test_max_outer_is_a_status():
    problem = linear_saddle_operator()

    x, trace = einexpm_solve(problem, fast_saddle_config(max_outer=2))

    trace.status.should.eql(Status.MAX_OUTER)
    trace.outer_steps.should.eql(2)
    len(trace.records).should.eql(2)


def test_infeasible_start():
    problem = linear_saddle_operator()

    einexpm_solve.when.called_with(problem, None, [2.0, 0.0]).should.throw(InfeasiblePointError)
    einexpmls_solve.when.called_with(problem, None, [2.0, 0.0]).should.throw(InfeasiblePointError)


def test_exhausted_projection_is_an_error():
    problem = linear_saddle_operator()
    cfg = fast_saddle_config(fw=FWConfig(max_iter=1))

    with pytest.raises(ProjectionError) as info:
        einexpm_solve(problem, cfg)

    info.value.record.k.should.eql(1)
    info.value.result.exhausted.should.be.true


def test_warns_outside_the_guaranteed_step_range():
    problem = linear_saddle_operator()

    with patch("pextragrad.extragradient.logging") as logging:
        EInexPM(problem, EInexPMConfig(alpha=0.7))

    logging.warning.called.should.be.true


def test_no_warning_inside_the_step_range():
    problem = linear_saddle_operator()

    with patch("pextragrad.extragradient.logging") as logging:
        EInexPM(problem, EInexPMConfig(alpha=0.21))

    logging.warning.called.should.be.false


def test_monitor_collects_violations():
    monitor = InvariantMonitor()

    monitor.expect(3, "made up", 1.0, 0.5)
    monitor.expect(4, "made up", 0.5, 0.5)

    monitor.ok.should.be.false
    monitor.checks.should.eql(2)
    monitor.violations.should.eql([(3, "made up", 0.5)])


def test_strict_monitor_raises():
    monitor = InvariantMonitor(strict=True)

    monitor.expect.when.called_with(1, "made up", 1.0, 0.0).should.throw(InvariantViolation)


def test_strict_config_builds_a_monitor():
    problem = shifted_identity([0.1, 0.1])

    solver = EInexPMLS(problem, LSConfig(strict=True))

    solver.monitor.strict.should.be.true
    EInexPMLS(problem, LSConfig()).monitor.should.be.none


def test_unknown_method():
    solve.when.called_with(zero_operator(2), "newton").should.throw(UsageError)


def test_stop_on_successor():
    problem = shifted_identity([0.1, 0.1])
    cfg = EInexPMConfig(alpha=0.5, gamma_bar=0.25, max_outer=1000, stop_on_successor=True)

    x, trace = einexpm_solve(problem, cfg)

    trace.status.should.eql(Status.CONVERGED)
    trace.records[-1].terminal.should.be.true
    np.linalg.norm(x - problem.x_ref).should.be.lower_than(1e-4)


def test_reference_tolerance_stops_early():
    problem = shifted_identity([0.1, 0.1])
    cfg = EInexPMConfig(alpha=0.5, gamma_bar=0.25, max_outer=1000, ref_tol=1e-2)

    x, trace = einexpm_solve(problem, cfg)

    trace.status.should.eql(Status.CONVERGED)
    last = trace.records[-1]
    last.dist_to_ref.should.be.lower_than_or_equal_to(1e-2)
    assert_array_equal(x, last.x_k)
    for record in trace.records[:-1]:
        record.dist_to_ref.should.be.greater_than(1e-2)


def test_residual_tracking():
    problem = shifted_identity([0.1, 0.1])
    cfg = EInexPMConfig(alpha=0.5, gamma_bar=0.25, max_outer=3, track_residual=True)

    x, trace = einexpm_solve(problem, cfg)

    for record in trace.records:
        record.residual.should.be.greater_than(0.0)
    einexpm_solve(problem, cfg.replace(track_residual=False))[1].records[0].residual.should.be.none


def test_vanishing_operator_at_a_solution_converges():
    problem = shifted_identity([0.1, 0.1])
    center = np.array([0.1, 0.1])

    with patch("pextragrad.extragradient.einexpmls_step",
               Mock(side_effect=VanishingOperatorError("vanishing", point=center))):
        x, trace = einexpmls_solve(problem)

    trace.status.should.eql(Status.CONVERGED)
    trace.outer_steps.should.eql(0)
    assert_allclose(x, center)


def test_vanishing_operator_elsewhere_is_an_error():
    problem = shifted_identity([0.1, 0.1])

    with patch("pextragrad.extragradient.einexpmls_step",
               Mock(side_effect=VanishingOperatorError("vanishing", point=np.array([0.0, 1.0])))):
        einexpmls_solve.when.called_with(problem).should.throw(VanishingOperatorError)


def test_trace_summary():
    problem = zero_operator(2)

    x, trace = einexpm_solve(problem)

    trace.fw_total.should.eql(2)
    trace.tolerance_sum().should.eql(0.0)
    repr(trace).should.eql("<SolveTrace einexpm status=converged outer=1 fw_total=2>")


def test_debug_mode_logs_each_step():
    problem = zero_operator(2)
    solver = EInexPM(problem)
    solver.DEBUG_MODE = True

    with patch("pextragrad.extragradient.logging") as logging:
        solver.solve()

    logging.info.call_count.should.be.greater_than_or_equal_to(2)


def test_methods_table():
    sorted(extragradient.METHODS).should.eql(["einexpm", "einexpmls"])
