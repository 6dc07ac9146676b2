import logging
import math

import numpy as np

from pextragrad.errors import UsageError, InfeasiblePointError

# absolute, on ProjectionCertificate.worst_violation
CERTIFICATE_TOL = 1e-9
# scaled by (1 + ||x||) inside FeasibleSet.contains
FEASIBILITY_SLACK = 1e-12


def as_point(values, dim=None):
    """
    Converts values to a read-only float64 vector.

    Checks the Point invariants: one dimension, finite entries and, when dim
    is given, the expected length.
    """
    try:
        point = np.array(values, dtype=np.float64)
    except (TypeError, ValueError) as exc:
        raise UsageError("not a vector of reals: %r" % (values,)) from exc
    if point.ndim != 1:
        raise UsageError("a point must be one-dimensional, got shape %s" % (point.shape,))
    if dim is not None and point.shape[0] != dim:
        raise UsageError("dimension mismatch: expected %d, got %d" % (dim, point.shape[0]))
    if not np.all(np.isfinite(point)):
        raise UsageError("point has non-finite entries: %s" % point)
    point.flags.writeable = False
    return point


def _same_dim(a, b):
    if np.shape(a) != np.shape(b):
        raise UsageError("dimension mismatch: %s vs %s" % (np.shape(a), np.shape(b)))


def dot(a, b):
    _same_dim(a, b)
    return float(np.dot(a, b))


def pnorm(a, p=2.0):
    if p < 1:
        raise UsageError("p-norm needs p >= 1, got %s" % p)
    a = np.asarray(a, dtype=np.float64)
    if a.size == 0:
        return 0.0
    # scale first so that large p does not overflow |a_i|**p
    scale = float(np.max(np.abs(a)))
    if scale == 0.0:
        return 0.0
    return scale * float(np.sum(np.abs(a / scale) ** p) ** (1.0 / p))


def norm(a):
    return pnorm(a, 2.0)


def sq_dist(a, b):
    _same_dim(a, b)
    diff = np.asarray(a) - np.asarray(b)
    return float(np.dot(diff, diff))


class VectorField:
    """An operator F: R^d -> R^d defining VIP(F, C)."""

    def __init__(self, dim, func, name=None):
        if int(dim) != dim or dim < 1:
            raise UsageError("dimension must be a positive integer, got %r" % (dim,))
        self.dim = int(dim)
        self.func = func
        self.name = name or getattr(func, "__name__", "F")

    def eval(self, x):
        value = np.asarray(self.func(x), dtype=np.float64)
        if value.shape != (self.dim,):
            raise UsageError("%s returned shape %s, expected (%d,)" % (self.name, value.shape, self.dim))
        return value

    def __call__(self, x):
        return self.eval(x)

    def __repr__(self):
        return "<VectorField %s dim=%d>" % (self.name, self.dim)


class FeasibleSet:
    """
    A nonempty compact convex set seen through its linear-minimization oracle.

    Subclasses implement lo_oracle, violation and bounding_box. For a cost
    vector with several minimizers the oracle must answer deterministically;
    a zero cost always answers interior_point.
    """

    def __init__(self, dim, interior_point):
        self.dim = dim
        self.interior_point = as_point(interior_point, dim)

    def lo_oracle(self, cost):
        raise NotImplementedError

    def violation(self, x):
        """How far x is outside the set, 0 for members."""
        raise NotImplementedError

    def bounding_box(self):
        raise NotImplementedError

    def contains(self, x, tol=FEASIBILITY_SLACK):
        x = np.asarray(x, dtype=np.float64)
        if x.shape != (self.dim,) or not np.all(np.isfinite(x)):
            return False
        return self.violation(x) <= tol * (1.0 + norm(x))

    def support(self, c):
        """max over the set of <c, y>."""
        return dot(c, self.lo_oracle(-np.asarray(c, dtype=np.float64)))


def check_feasible(x, feasible_set, tol=FEASIBILITY_SLACK, what="point"):
    if not feasible_set.contains(x, tol):
        raise InfeasiblePointError("%s %s is not in the feasible set (violation %.3g)"
                                   % (what, np.asarray(x), feasible_set.violation(np.asarray(x, dtype=np.float64))))


class ProjectionCertificate:
    """
    Evidence that w is a gamma-feasible inexact projection of v relative to u,
    i.e. <v - w, y - w> <= gamma ||w - u||^2 for every y in the set.
    """

    def __init__(self, w, u, v, gamma, worst_violation, tolerance=CERTIFICATE_TOL, feasible=True):
        self.w = w
        self.u = u
        self.v = v
        self.gamma = gamma
        self.worst_violation = worst_violation
        self.tolerance = tolerance
        self.feasible = feasible

    @property
    def valid(self):
        return self.feasible and self.worst_violation <= self.tolerance

    @property
    def reason(self):
        if not self.feasible:
            return "infeasible"
        if self.worst_violation > self.tolerance:
            return "violation"
        return "ok"

    def __repr__(self):
        return "<ProjectionCertificate %s gamma=%s worst_violation=%.3e>" % (self.reason, self.gamma, self.worst_violation)


def check_certificate(w, u, v, gamma, feasible_set, tol=CERTIFICATE_TOL):
    if gamma < 0:
        raise UsageError("gamma must be nonnegative, got %s" % gamma)
    w = np.asarray(w, dtype=np.float64)
    u = np.asarray(u, dtype=np.float64)
    v = np.asarray(v, dtype=np.float64)
    _same_dim(w, u)
    _same_dim(w, v)
    # the max of a linear functional over the set sits at an oracle answer
    z = feasible_set.lo_oracle(w - v)
    worst = dot(v - w, z - w) - gamma * sq_dist(w, u)
    feasible = feasible_set.contains(w)
    if not feasible:
        logging.debug("certificate: w=%s is infeasible", w)
    return ProjectionCertificate(w, u, v, gamma, worst, tolerance=tol, feasible=feasible)


def natural_residual(x, F, feasible_set, proj_tol=1e-12, max_iter=None):
    """
    Upper bound on ||x - P(x - F(x))||. P is approximated by a near-exact
    Frank-Wolfe projection w and the bound ||w - P|| <= sqrt(2 gap) on its
    error is added.
    """
    from pextragrad.fw_projection import FWConfig, fw_project

    x = as_point(x, feasible_set.dim)
    cfg = FWConfig(gamma=0.0, abs_gap_floor=proj_tol)
    if max_iter is not None:
        cfg = cfg.replace(max_iter=max_iter)
    result = fw_project(x, x - F(x), feasible_set, cfg)
    return norm(x - result.w) + math.sqrt(2.0 * max(result.final_gap, 0.0))
