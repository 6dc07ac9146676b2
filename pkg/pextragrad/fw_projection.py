"""
Frank-Wolfe computation of feasible inexact projections.

fw_project minimizes psi_v(w) = ||w - v||^2 / 2 over the set with exact line
search and stops as soon as the Frank-Wolfe gap drops below
gamma * ||w - u||^2. Every iterate is a convex combination of oracle answers,
so the returned point is feasible up to rounding.
"""
import enum
import logging

import numpy as np

from pextragrad.core import as_point, dot, sq_dist
from pextragrad.errors import ProjectionError, UsageError


class StoppedBy(enum.Enum):
    RELATIVE = "relative"
    ABSOLUTE = "absolute"
    MAX_ITER = "max_iter"


class FWConfig:
    ABS_GAP_FLOOR = 1e-12
    MAX_ITER = 10000000

    def __init__(self, gamma=0.0, abs_gap_floor=ABS_GAP_FLOOR, max_iter=MAX_ITER, start=None, keep_history=False):
        self.gamma = gamma
        self.abs_gap_floor = abs_gap_floor
        self.max_iter = max_iter
        self.start = start
        self.keep_history = keep_history
        self.validate()

    def validate(self):
        if self.gamma < 0:
            raise UsageError("gamma must be nonnegative, got %s" % self.gamma)
        if self.abs_gap_floor < 0:
            raise UsageError("abs_gap_floor must be nonnegative, got %s" % self.abs_gap_floor)
        if self.max_iter is None:
            if self.gamma == 0 and self.abs_gap_floor == 0:
                raise UsageError("gamma and abs_gap_floor are both zero without an iteration cap")
        elif int(self.max_iter) != self.max_iter or self.max_iter < 1:
            raise UsageError("max_iter must be a positive integer, got %r" % (self.max_iter,))

    def replace(self, **changes):
        values = dict(gamma=self.gamma, abs_gap_floor=self.abs_gap_floor, max_iter=self.max_iter,
                      start=self.start, keep_history=self.keep_history)
        values.update(changes)
        return FWConfig(**values)

    def __repr__(self):
        return "<FWConfig gamma=%s floor=%s max_iter=%s>" % (self.gamma, self.abs_gap_floor, self.max_iter)


class FWResult:
    def __init__(self, w, iterations, final_gap, stopped_by, tolerance, gaps=None, objective=None, initial_gap=None):
        self.w = w
        self.iterations = iterations
        self.final_gap = final_gap
        self.stopped_by = stopped_by
        # the threshold -s* was compared against when the loop ended
        self.tolerance = tolerance
        self.gaps = gaps
        self.objective = objective
        self.initial_gap = initial_gap

    @property
    def exhausted(self):
        return self.stopped_by is StoppedBy.MAX_ITER

    def __repr__(self):
        return "<FWResult %s iterations=%d gap=%.3e>" % (self.stopped_by.value, self.iterations, self.final_gap)


def lo_gap(w, v, feasible_set):
    """Returns the oracle answer z for cost w - v and s* = <w - v, z - w>."""
    cost = np.asarray(w) - np.asarray(v)
    z = feasible_set.lo_oracle(cost)
    s_star = dot(cost, z - w)
    # w itself is feasible, so a positive s* is rounding noise
    return z, min(s_star, 0.0)


def fw_step(w, z, s_star):
    direction = np.asarray(z) - np.asarray(w)
    length_sq = float(np.dot(direction, direction))
    if length_sq == 0.0:
        if s_star < 0:
            raise ProjectionError("oracle answered the current iterate with a negative gap %.3e" % s_star)
        return np.array(w, dtype=np.float64)
    # exact line search on psi_v along [w, z]
    step = min(1.0, -s_star / length_sq)
    return w + step * direction


def fw_project(u, v, feasible_set, cfg=None):
    cfg = cfg or FWConfig()
    u = as_point(u, feasible_set.dim)
    v = as_point(v, feasible_set.dim)
    w = np.array(u if cfg.start is None else as_point(cfg.start, feasible_set.dim))
    gaps = [] if cfg.keep_history else None
    objective = [] if cfg.keep_history else None

    iterations = 0
    gap = float("inf")
    initial_gap = None
    tolerance = 0.0
    stopped_by = StoppedBy.MAX_ITER
    while cfg.max_iter is None or iterations < cfg.max_iter:
        z, s_star = lo_gap(w, v, feasible_set)
        iterations += 1
        gap = -s_star
        if initial_gap is None:
            initial_gap = gap
        if gaps is not None:
            gaps.append(gap)
            objective.append(0.5 * sq_dist(w, v))

        relative = cfg.gamma * sq_dist(w, u)
        if gap <= relative:
            stopped_by, tolerance = StoppedBy.RELATIVE, relative
            break
        if gap <= cfg.abs_gap_floor:
            stopped_by, tolerance = StoppedBy.ABSOLUTE, cfg.abs_gap_floor
            break
        w = fw_step(w, z, s_star)

    if stopped_by is StoppedBy.MAX_ITER:
        logging.warning("Frank-Wolfe stopped after %d iterations with gap %.3e", iterations, gap)
    w = as_point(w)
    return FWResult(w, iterations, gap, stopped_by, tolerance, gaps, objective, initial_gap)
