"""
Extragradient methods with feasible inexact projections.

EInexPM takes a constant step alpha and projects twice per iteration with a
tolerance gamma_k driven by a summable sequence (a_k). EInexPMLS picks the
trial point with an Armijo search along [x^k, y^k] and steps to the inexact
projection of the halfspace projection of x^k. All projections go through
fw_project, so the feasible set is only touched via its LO oracle.
"""
import enum
import logging
import math

import numpy as np

from pextragrad.core import as_point, check_certificate, check_feasible, dot, natural_residual, norm, sq_dist
from pextragrad.errors import (InvariantViolation, LineSearchError, ProjectionError, UsageError,
                               VanishingOperatorError)
from pextragrad.fw_projection import FWConfig, fw_project

EPS_DIV = 1e-30
GAMMA_CAP = 0.999
CHECK_SLACK = 1e-8
ITERATE_SLACK = 1e-10
VANISHING_NORM = 1e-300

HARMONIC = "harmonic"
LOG = "log"
CUSTOM = "custom"
SCHEDULES = (HARMONIC, LOG, CUSTOM)


class Status(enum.Enum):
    CONVERGED = "converged"
    MAX_OUTER = "max_outer"
    STALLED = "stalled"


def _validate_outer(cfg):
    if not cfg.outer_tol > 0:
        raise UsageError("outer_tol must be positive, got %s" % cfg.outer_tol)
    if int(cfg.max_outer) != cfg.max_outer or cfg.max_outer < 1:
        raise UsageError("max_outer must be a positive integer, got %r" % (cfg.max_outer,))
    if cfg.ref_tol is not None and not cfg.ref_tol > 0:
        raise UsageError("ref_tol must be positive, got %s" % cfg.ref_tol)


class EInexPMConfig:
    OUTER_TOL = 1e-6
    MAX_OUTER = 10000

    def __init__(self, alpha=0.21, gamma_bar=0.106, a_schedule=HARMONIC, b_bar=1.0, schedule_terms=None,
                 outer_tol=OUTER_TOL, max_outer=MAX_OUTER, fw=None, ref_tol=None, stop_on_successor=False,
                 track_residual=False, strict=False):
        self.alpha = alpha
        self.gamma_bar = gamma_bar
        self.a_schedule = a_schedule
        self.b_bar = b_bar
        self.schedule_terms = None if schedule_terms is None else tuple(float(a) for a in schedule_terms)
        self.outer_tol = outer_tol
        self.max_outer = max_outer
        self.fw = fw or FWConfig()
        self.ref_tol = ref_tol
        self.stop_on_successor = stop_on_successor
        self.track_residual = track_residual
        self.strict = strict
        self.validate()

    def validate(self):
        if not self.alpha > 0:
            raise UsageError("alpha must be positive, got %s" % self.alpha)
        if not 0 < self.gamma_bar < 0.5:
            raise UsageError("gamma_bar must lie in (0, 1/2), got %s" % self.gamma_bar)
        if self.a_schedule not in SCHEDULES:
            raise UsageError("unknown tolerance schedule %r" % (self.a_schedule,))
        if self.a_schedule == CUSTOM:
            if not self.schedule_terms or any(a < 0 for a in self.schedule_terms):
                raise UsageError("a custom schedule needs a nonempty sequence of nonnegative terms")
        elif not self.b_bar > 0:
            raise UsageError("b_bar must be positive, got %s" % self.b_bar)
        _validate_outer(self)

    def replace(self, **changes):
        values = dict(alpha=self.alpha, gamma_bar=self.gamma_bar, a_schedule=self.a_schedule, b_bar=self.b_bar,
                      schedule_terms=self.schedule_terms, outer_tol=self.outer_tol, max_outer=self.max_outer,
                      fw=self.fw, ref_tol=self.ref_tol, stop_on_successor=self.stop_on_successor,
                      track_residual=self.track_residual, strict=self.strict)
        values.update(changes)
        return EInexPMConfig(**values)

    def step_bound(self, lipschitz):
        """Largest alpha with a convergence guarantee, sqrt(1 - 2 gamma_bar) / L."""
        return math.sqrt(1.0 - 2.0 * self.gamma_bar) / lipschitz

    def __repr__(self):
        return "<EInexPMConfig alpha=%s gamma_bar=%s schedule=%s>" % (self.alpha, self.gamma_bar, self.a_schedule)


def derived_constants(cfg, lipschitz):
    """eta_bar and nu_bar of the quasi-Fejer inequality of EInexPM."""
    a, g, L = cfg.alpha, cfg.gamma_bar, lipschitz
    eta_bar = 1.0 - a * a * L * L - 2.0 * g
    nu_bar = a * a * (1.0 - g + a * L) ** 2 / (1.0 - g) ** 4
    return eta_bar, nu_bar


class LSConfig:
    OUTER_TOL = 1e-6
    MAX_OUTER = 10000
    MAX_BACKTRACKS = 60

    def __init__(self, beta_lo=1.0, beta_hi=1.0, beta_rule=None, sigma=0.99, rho=0.5, backtrack=0.5,
                 gamma_bar=0.2, outer_tol=OUTER_TOL, max_outer=MAX_OUTER, max_backtracks=MAX_BACKTRACKS,
                 fw=None, ref_tol=None, track_residual=False, strict=False):
        self.beta_lo = beta_lo
        self.beta_hi = beta_hi
        self.beta_rule = beta_rule
        self.sigma = sigma
        self.rho = rho
        self.backtrack = backtrack
        self.gamma_bar = gamma_bar
        self.outer_tol = outer_tol
        self.max_outer = max_outer
        self.max_backtracks = max_backtracks
        self.fw = fw or FWConfig()
        self.ref_tol = ref_tol
        self.track_residual = track_residual
        self.strict = strict
        self.validate()

    def validate(self):
        if not 0 < self.beta_lo <= self.beta_hi:
            raise UsageError("need 0 < beta_lo <= beta_hi, got %s and %s" % (self.beta_lo, self.beta_hi))
        for name in ("sigma", "rho", "backtrack"):
            value = getattr(self, name)
            if not 0 < value < 1:
                raise UsageError("%s must lie in (0, 1), got %s" % (name, value))
        bound = min(1.0 - self.rho, 2.0 - math.sqrt(3.0))
        if not 0 < self.gamma_bar < bound:
            raise UsageError("gamma_bar must lie in (0, %.6f), got %s" % (bound, self.gamma_bar))
        if int(self.max_backtracks) != self.max_backtracks or self.max_backtracks < 1:
            raise UsageError("max_backtracks must be a positive integer, got %r" % (self.max_backtracks,))
        _validate_outer(self)

    def replace(self, **changes):
        values = dict(beta_lo=self.beta_lo, beta_hi=self.beta_hi, beta_rule=self.beta_rule, sigma=self.sigma,
                      rho=self.rho, backtrack=self.backtrack, gamma_bar=self.gamma_bar, outer_tol=self.outer_tol,
                      max_outer=self.max_outer, max_backtracks=self.max_backtracks, fw=self.fw,
                      ref_tol=self.ref_tol, track_residual=self.track_residual, strict=self.strict)
        values.update(changes)
        return LSConfig(**values)

    def beta(self, k):
        beta = self.beta_hi if self.beta_rule is None else self.beta_rule(k)
        if not self.beta_lo <= beta <= self.beta_hi:
            raise UsageError("beta_%d = %s is outside [%s, %s]" % (k, beta, self.beta_lo, self.beta_hi))
        return beta

    @property
    def gamma(self):
        return GAMMA_CAP * self.gamma_bar

    def fejer_constant(self):
        g = self.gamma_bar
        return (g * g - 4.0 * g + 1.0) / (1.0 - g) ** 2

    def __repr__(self):
        return "<LSConfig beta=[%s, %s] sigma=%s rho=%s gamma_bar=%s>" % (
            self.beta_lo, self.beta_hi, self.sigma, self.rho, self.gamma_bar)


class IterationRecord:
    __slots__ = ("k", "x_k", "y_k", "z_k", "gamma_k", "lambda_k", "i_k", "beta_k", "fw_iters_y", "fw_iters_x",
                 "dist_to_ref", "residual", "displacement", "step_norm", "F_norm_sq", "terminal")

    def __init__(self, k, x_k, gamma_k=0.0, beta_k=None, dist_to_ref=None, F_norm_sq=None):
        self.k = k
        self.x_k = x_k
        self.y_k = None
        self.z_k = None
        self.gamma_k = gamma_k
        self.lambda_k = None
        self.i_k = None
        self.beta_k = beta_k
        self.fw_iters_y = 0
        self.fw_iters_x = 0
        self.dist_to_ref = dist_to_ref
        # natural residual at x_k, only filled with track_residual
        self.residual = None
        # ||x_k - y_k||
        self.displacement = None
        # ||x_{k+1} - x_k||
        self.step_norm = None
        self.F_norm_sq = F_norm_sq
        self.terminal = False

    @property
    def fw_iters(self):
        return self.fw_iters_y + self.fw_iters_x

    def __repr__(self):
        return "<IterationRecord k=%d displacement=%s gamma_k=%.3e fw=%d>" % (
            self.k, self.displacement, self.gamma_k, self.fw_iters)


class SolveTrace:

    def __init__(self, method):
        self.method = method
        self.records = []
        self.status = None
        self.x = None
        self.residual = None

    def append(self, record):
        self.records.append(record)

    @property
    def outer_steps(self):
        return self.records[-1].k if self.records else 0

    @property
    def fw_total(self):
        return sum(record.fw_iters for record in self.records)

    def distances(self):
        return [record.dist_to_ref for record in self.records]

    def tolerance_sum(self):
        return sum(record.gamma_k * record.F_norm_sq for record in self.records)

    def print_state(self):
        logging.debug("$$$$$$$$$$$$$$$$$ Solve State $$$$$$$$$$$$$$$$$$$$")
        logging.debug("method=%s, status=%s, outer=%s, fw_total=%s", self.method,
                      self.status.value if self.status else None, self.outer_steps, self.fw_total)
        if self.records:
            last = self.records[-1]
            logging.debug("x=%s, displacement=%s, dist_to_ref=%s", last.x_k, last.displacement, last.dist_to_ref)
        logging.debug("$$$$$$$$$$$$$$$$$ Solve State $$$$$$$$$$$$$$$$$$$$")

    def __repr__(self):
        return "<SolveTrace %s status=%s outer=%d fw_total=%d>" % (
            self.method, self.status.value if self.status else None, self.outer_steps, self.fw_total)


class InvariantMonitor:
    """
    Checks the per-iteration inequalities of both methods.

    Failed checks are collected in violations as (k, name, excess) tuples; in
    strict mode the first one raises InvariantViolation.
    """

    def __init__(self, x_ref=None, lipschitz=None, strict=False, slack=CHECK_SLACK):
        self.x_ref = None if x_ref is None else as_point(x_ref)
        self.lipschitz = lipschitz
        self.strict = strict
        self.slack = slack
        self.violations = []
        self.checks = 0

    @classmethod
    def for_problem(cls, problem, strict=False):
        return cls(problem.x_ref, problem.lipschitz, strict)

    @property
    def ok(self):
        return not self.violations

    def _fail(self, k, name, excess):
        self.violations.append((k, name, excess))
        logging.warning("iteration %d: %s violated by %.3e", k, name, excess)
        if self.strict:
            raise InvariantViolation("iteration %d: %s violated by %.3e" % (k, name, excess))

    def expect(self, k, name, lhs, rhs):
        """lhs <= rhs up to the slack."""
        self.checks += 1
        if lhs - rhs > self.slack:
            self._fail(k, name, lhs - rhs)

    def expect_feasible(self, k, name, point, feasible_set):
        self.checks += 1
        if not feasible_set.contains(point, ITERATE_SLACK):
            self._fail(k, name + " feasibility", feasible_set.violation(np.asarray(point)))

    def expect_certificate(self, k, name, w, u, v, gamma, feasible_set):
        self.checks += 1
        certificate = check_certificate(w, u, v, gamma, feasible_set)
        if not certificate.valid:
            self._fail(k, "%s certificate (%s)" % (name, certificate.reason),
                       certificate.worst_violation - certificate.tolerance)

    def einexpm(self, record, x_next, Fx, Fy, cfg, feasible_set):
        k, x, y, g = record.k, record.x_k, record.y_k, record.gamma_k
        a = cfg.alpha
        self.expect_feasible(k, "y", y, feasible_set)
        self.expect_feasible(k, "x_next", x_next, feasible_set)
        self.expect_certificate(k, "y", y, x, x - a * Fx, g, feasible_set)
        self.expect_certificate(k, "x_next", x_next, x, x - a * Fy, g, feasible_set)
        self.expect(k, "step bound y", norm(y - x), a * norm(Fx) / (1.0 - g))
        self.expect(k, "step bound x_next", norm(x_next - x), a * norm(Fy) / (1.0 - g))
        if self.lipschitz is None:
            return
        L = self.lipschitz
        self.expect(k, "Lipschitz step bound", norm(x_next - x), a * (1.0 - g + a * L) / (1.0 - g) ** 2 * norm(Fx))
        eta_bar, nu_bar = derived_constants(cfg, L)
        if self.x_ref is None or eta_bar <= 0:
            return
        self.expect(k, "quasi-Fejer", sq_dist(x_next, self.x_ref),
                    sq_dist(x, self.x_ref) - eta_bar * sq_dist(x, y) + nu_bar * g * record.F_norm_sq)

    def einexpmls_entry(self, record, Fx, cfg, feasible_set):
        k, x, y, g, beta = record.k, record.x_k, record.y_k, record.gamma_k, record.beta_k
        self.expect_feasible(k, "y", y, feasible_set)
        self.expect_certificate(k, "y", y, x, x - beta * Fx, g, feasible_set)
        self.expect(k, "step bound y", norm(y - x), beta * norm(Fx) / (1.0 - g))
        self.expect(k, "descent lower bound", max(cfg.rho, math.sqrt(3.0) - 1.0) / cfg.beta_hi * sq_dist(x, y),
                    dot(Fx, x - y))

    def einexpmls_exit(self, record, x_next, Fz, cfg, feasible_set):
        k, x, z, g, lam = record.k, record.x_k, record.z_k, record.gamma_k, record.lambda_k
        self.expect_feasible(k, "z", z, feasible_set)
        self.expect_feasible(k, "x_next", x_next, feasible_set)
        self.expect(k, "separation", 0.0, dot(Fz, x - z))
        self.expect_certificate(k, "x_next", x_next, x, x - lam * Fz, g, feasible_set)
        self.expect(k, "step bound x_next", norm(x_next - x), lam * norm(Fz) / (1.0 - g))
        if self.x_ref is None:
            return
        self.expect(k, "Fejer", norm(x_next - self.x_ref), norm(x - self.x_ref))
        self.expect(k, "Fejer decrease", sq_dist(x_next, self.x_ref),
                    sq_dist(x, self.x_ref) - cfg.fejer_constant() * lam * lam * dot(Fz, Fz))

    def tolerance_sum(self, trace, cfg):
        bound = sum(schedule_term(k, cfg) for k in range(1, trace.outer_steps + 1))
        self.expect(trace.outer_steps, "tolerance summability", trace.tolerance_sum(), bound)


def schedule_term(k, cfg):
    """a_k = b_{k-1} - b_k with b_0 = 2 b_bar."""
    if k < 1:
        raise UsageError("schedule index starts at 1, got %d" % k)
    if cfg.a_schedule == CUSTOM:
        terms = cfg.schedule_terms
        return terms[k - 1] if k <= len(terms) else 0.0

    def b(j):
        if j == 0:
            return 2.0 * cfg.b_bar
        if cfg.a_schedule == HARMONIC:
            return cfg.b_bar / j
        return cfg.b_bar / math.log(j + 1.0)

    return b(k - 1) - b(k)


def gamma_schedule(k, F_norm_sq, cfg):
    if F_norm_sq < 0:
        raise UsageError("F_norm_sq must be nonnegative, got %s" % F_norm_sq)
    return min(GAMMA_CAP * cfg.gamma_bar, schedule_term(k, cfg) / max(F_norm_sq, EPS_DIV))


def _project(u, v, feasible_set, fw_cfg, record, what):
    result = fw_project(u, v, feasible_set, fw_cfg)
    if result.exhausted:
        raise ProjectionError("projection of %s hit the Frank-Wolfe cap at iteration %d" % (what, record.k),
                              record=record, result=result)
    return result


def _distance(x, problem):
    return None if problem.x_ref is None else norm(x - problem.x_ref)


def einexpm_step(x, k, problem, cfg, monitor=None):
    F, feasible_set = problem.F, problem.feasible_set
    Fx = F(x)
    F_norm_sq = dot(Fx, Fx)
    gamma_k = gamma_schedule(k, F_norm_sq, cfg)
    fw_cfg = cfg.fw.replace(gamma=gamma_k, start=None)
    record = IterationRecord(k, x, gamma_k=gamma_k, F_norm_sq=F_norm_sq, dist_to_ref=_distance(x, problem))
    if cfg.track_residual:
        record.residual = natural_residual(x, F, feasible_set)

    result_y = _project(x, x - cfg.alpha * Fx, feasible_set, fw_cfg, record, "y")
    y = result_y.w
    record.y_k = y
    record.fw_iters_y = result_y.iterations
    record.displacement = norm(x - y)

    Fy = F(y)
    result_x = _project(x, x - cfg.alpha * Fy, feasible_set, fw_cfg, record, "x_next")
    x_next = result_x.w
    record.fw_iters_x = result_x.iterations
    record.step_norm = norm(x_next - x)
    record.terminal = record.displacement <= cfg.outer_tol

    if monitor is not None:
        monitor.einexpm(record, x_next, Fx, Fy, cfg, feasible_set)
    return x_next, record


def armijo_search(x, y, F, cfg, Fx=None):
    """Smallest i with <F(x + sigma backtrack^i (y - x)), y - x> <= rho <F(x), y - x>."""
    direction = np.asarray(y) - np.asarray(x)
    if not norm(direction) > 0:
        raise UsageError("line search needs y != x")
    Fx = F(x) if Fx is None else Fx
    target = cfg.rho * dot(Fx, direction)
    step = cfg.sigma
    for i in range(cfg.max_backtracks + 1):
        z = x + step * direction
        if dot(F(z), direction) <= target:
            return i, z
        step *= cfg.backtrack
    raise LineSearchError("line search failed after %d backtracks" % cfg.max_backtracks, cfg.max_backtracks)


def halfspace_stepsize(x, z, Fz):
    """lambda with x - lambda F(z) the projection of x onto {w : <F(z), w - z> <= 0}."""
    length_sq = dot(Fz, Fz)
    if math.sqrt(length_sq) <= VANISHING_NORM:
        raise VanishingOperatorError("vanishing operator at z", point=z)
    return -dot(Fz, np.asarray(z) - np.asarray(x)) / length_sq


def einexpmls_step(x, k, problem, cfg, monitor=None):
    F, feasible_set = problem.F, problem.feasible_set
    beta_k = cfg.beta(k)
    gamma_k = cfg.gamma
    fw_cfg = cfg.fw.replace(gamma=gamma_k, start=None)
    Fx = F(x)
    record = IterationRecord(k, x, gamma_k=gamma_k, beta_k=beta_k, F_norm_sq=dot(Fx, Fx),
                             dist_to_ref=_distance(x, problem))
    if cfg.track_residual:
        record.residual = natural_residual(x, F, feasible_set)

    result_y = _project(x, x - beta_k * Fx, feasible_set, fw_cfg, record, "y")
    y = result_y.w
    record.y_k = y
    record.fw_iters_y = result_y.iterations
    record.displacement = norm(x - y)
    if monitor is not None:
        monitor.einexpmls_entry(record, Fx, cfg, feasible_set)
    if record.displacement <= cfg.outer_tol:
        record.terminal = True
        record.step_norm = 0.0
        return x, record

    i_k, z = armijo_search(x, y, F, cfg, Fx)
    record.i_k = i_k
    record.z_k = z
    Fz = F(z)
    lambda_k = halfspace_stepsize(x, z, Fz)
    if lambda_k <= 0:
        # x is already in the separating halfspace, which only happens at solutions
        logging.info("einexpmls k=%d: x lies in the separating halfspace, stopping", k)
        record.terminal = True
        record.step_norm = 0.0
        return x, record
    record.lambda_k = lambda_k

    result_x = _project(x, x - lambda_k * Fz, feasible_set, fw_cfg, record, "x_next")
    x_next = result_x.w
    record.fw_iters_x = result_x.iterations
    record.step_norm = norm(x_next - x)
    if monitor is not None:
        monitor.einexpmls_exit(record, x_next, Fz, cfg, feasible_set)
    return x_next, record


class _Solver:
    DEBUG_MODE = False
    name = None

    def __init__(self, problem, cfg, monitor=None):
        self.problem = problem
        self.cfg = cfg
        if monitor is None and cfg.strict:
            monitor = InvariantMonitor.for_problem(problem, strict=True)
        self.monitor = monitor
        self.trace = None

    def step(self, x, k):
        raise NotImplementedError

    def finish(self):
        pass

    def _after_step(self, x, x_next, record):
        """(status, x) when the run ends after record, None to keep going."""
        if record.terminal:
            return Status.CONVERGED, x
        ref_tol = self.cfg.ref_tol
        if ref_tol is not None and record.dist_to_ref is not None and record.dist_to_ref <= ref_tol:
            record.terminal = True
            return Status.CONVERGED, x
        if np.array_equal(x_next, x):
            return Status.STALLED, x
        return None

    def solve(self, x1=None):
        problem = self.problem
        x = problem.x_start if x1 is None else as_point(x1, problem.dim)
        check_feasible(x, problem.feasible_set, what="start point")
        self.trace = SolveTrace(self.name)
        status = Status.MAX_OUTER
        for k in range(1, self.cfg.max_outer + 1):
            outcome = self.step(x, k)
            if isinstance(outcome, Status):
                status, x = outcome, self.trace.x
                break
            x_next, record = outcome
            self.trace.append(record)
            if self.DEBUG_MODE:
                logging.info("%s k=%d displacement=%.3e gamma_k=%.3e i_k=%s lambda_k=%s fw=%d", self.name, k,
                             record.displacement, record.gamma_k, record.i_k, record.lambda_k, record.fw_iters)
            ending = self._after_step(x, x_next, record)
            if ending is not None:
                status, x = ending
                break
            x = x_next
        self.finish()

        trace = self.trace
        trace.x = x
        trace.status = status
        trace.residual = natural_residual(x, problem.F, problem.feasible_set)
        logging.info("%s finished: status=%s outer=%d fw_total=%d residual=%.3e", self.name, status.value,
                     trace.outer_steps, trace.fw_total, trace.residual)
        self.print_state()
        return x, trace

    def print_state(self):
        if self.trace is not None:
            self.trace.print_state()


class EInexPM(_Solver):
    name = "einexpm"

    def __init__(self, problem, cfg=None, monitor=None):
        _Solver.__init__(self, problem, cfg or EInexPMConfig(), monitor)
        L = problem.lipschitz
        if L is not None and self.cfg.alpha >= self.cfg.step_bound(L):
            logging.warning("alpha=%s is outside the guaranteed range alpha < %.6f for L=%s",
                            self.cfg.alpha, self.cfg.step_bound(L), L)

    def step(self, x, k):
        return einexpm_step(x, k, self.problem, self.cfg, self.monitor)

    def _after_step(self, x, x_next, record):
        ending = _Solver._after_step(self, x, x_next, record)
        if ending is None and self.cfg.stop_on_successor and norm(record.y_k - x_next) <= self.cfg.outer_tol:
            record.terminal = True
            return Status.CONVERGED, x_next
        return ending

    def finish(self):
        if self.monitor is not None:
            self.monitor.tolerance_sum(self.trace, self.cfg)


class EInexPMLS(_Solver):
    name = "einexpmls"

    def __init__(self, problem, cfg=None, monitor=None):
        _Solver.__init__(self, problem, cfg or LSConfig(), monitor)

    def step(self, x, k):
        try:
            return einexpmls_step(x, k, self.problem, self.cfg, self.monitor)
        except VanishingOperatorError as exc:
            residual = natural_residual(exc.point, self.problem.F, self.problem.feasible_set)
            if residual > self.cfg.outer_tol:
                raise
            logging.info("einexpmls k=%d: operator vanishes at z with residual %.3e", k, residual)
            self.trace.x = as_point(exc.point)
            return Status.CONVERGED


def einexpm_solve(problem, cfg=None, x1=None, monitor=None):
    return EInexPM(problem, cfg, monitor).solve(x1)


def einexpmls_solve(problem, cfg=None, x1=None, monitor=None):
    return EInexPMLS(problem, cfg, monitor).solve(x1)


METHODS = {
    "einexpm": (EInexPMConfig, einexpm_solve),
    "einexpmls": (LSConfig, einexpmls_solve),
}


def solve(problem, method, cfg=None, x1=None, monitor=None):
    if method not in METHODS:
        raise UsageError("unknown method %r (known: %s)" % (method, ", ".join(sorted(METHODS))))
    config_class, solver = METHODS[method]
    return solver(problem, cfg or config_class(), x1, monitor)
