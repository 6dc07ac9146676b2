"""
Benchmark instances: p-norm balls with their closed-form oracles, a few other
oracle-friendly sets, and the test operators with their metadata.
"""
import functools
import logging
import math
import re

import numpy as np

from pextragrad.core import FeasibleSet, VectorField, as_point, natural_residual, pnorm
from pextragrad.errors import OperatorDomainError, ReferenceSolutionError, UsageError

MONOTONE = "monotone"
PSEUDO_MONOTONE = "pseudo-monotone-wrt-solutions"
QUASIMONOTONE = "quasimonotone"

REFERENCE_RESIDUAL_TOL = 1e-4


def pnorm_ball_lo(c, p, interior_point=None):
    """Minimizer of <c, y> over the unit p-norm ball."""
    if p < 1:
        raise UsageError("p-norm ball needs p >= 1, got %s" % p)
    c = np.asarray(c, dtype=np.float64)
    scale = float(np.max(np.abs(c))) if c.size else 0.0
    if scale == 0.0:
        return np.zeros_like(c) if interior_point is None else np.array(interior_point)
    if p == 1:
        j = int(np.argmax(np.abs(c)))
        vertex = np.zeros_like(c)
        vertex[j] = -np.sign(c[j])
        return vertex
    # Hoelder: y_i = -sign(c_i)|c_i|^(q-1) / ||c||_q^(q-1), 1/p + 1/q = 1
    c = c / scale
    q = p / (p - 1.0)
    magnitude = np.abs(c) ** (q - 1.0)
    return -np.sign(c) * magnitude / pnorm(c, q) ** (q - 1.0)


class PNormBall(FeasibleSet):

    def __init__(self, dim, p):
        if int(dim) != dim or dim < 1:
            raise UsageError("dimension must be a positive integer, got %r" % (dim,))
        if p < 1:
            raise UsageError("p-norm ball needs p >= 1, got %s" % p)
        FeasibleSet.__init__(self, int(dim), np.zeros(int(dim)))
        self.p = float(p)

    def lo_oracle(self, cost):
        return pnorm_ball_lo(cost, self.p, self.interior_point)

    def violation(self, x):
        return max(0.0, pnorm(x, self.p) - 1.0)

    def bounding_box(self):
        return -np.ones(self.dim), np.ones(self.dim)

    def __repr__(self):
        return "<PNormBall d=%d p=%s>" % (self.dim, self.p)


class Box(FeasibleSet):

    def __init__(self, lo, hi):
        lo = as_point(lo)
        hi = as_point(hi, lo.shape[0])
        if np.any(lo > hi):
            raise UsageError("box bounds cross: lo=%s hi=%s" % (lo, hi))
        FeasibleSet.__init__(self, lo.shape[0], 0.5 * (lo + hi))
        self.lo = lo
        self.hi = hi

    def lo_oracle(self, cost):
        cost = np.asarray(cost, dtype=np.float64)
        # zero cost coordinates sit at the midpoint
        return np.where(cost > 0, self.lo, np.where(cost < 0, self.hi, self.interior_point))

    def violation(self, x):
        return float(max(np.max(self.lo - x), np.max(x - self.hi), 0.0))

    def bounding_box(self):
        return np.array(self.lo), np.array(self.hi)

    def __repr__(self):
        return "<Box lo=%s hi=%s>" % (self.lo, self.hi)


class Simplex(FeasibleSet):
    """The probability simplex {x >= 0, sum(x) = 1}."""

    def __init__(self, dim):
        FeasibleSet.__init__(self, dim, np.full(dim, 1.0 / dim))

    def lo_oracle(self, cost):
        cost = np.asarray(cost, dtype=np.float64)
        if not np.any(cost):
            return np.array(self.interior_point)
        vertex = np.zeros(self.dim)
        vertex[int(np.argmin(cost))] = 1.0
        return vertex

    def violation(self, x):
        return float(max(-np.min(x), abs(np.sum(x) - 1.0)))

    def bounding_box(self):
        return np.zeros(self.dim), np.ones(self.dim)

    def __repr__(self):
        return "<Simplex d=%d>" % self.dim


class BenchmarkProblem:

    def __init__(self, name, F, feasible_set, x_start, x_ref=None, lipschitz=None,
                 monotonicity=MONOTONE, defaults=None):
        if F.dim != feasible_set.dim:
            raise UsageError("operator dimension %d does not match set dimension %d" % (F.dim, feasible_set.dim))
        if lipschitz is not None and lipschitz <= 0:
            raise UsageError("Lipschitz constant must be positive, got %s" % lipschitz)
        self.name = name
        self.F = F
        self.feasible_set = feasible_set
        self.x_start = as_point(x_start, F.dim)
        self.x_ref = None if x_ref is None else as_point(x_ref, F.dim)
        self.lipschitz = lipschitz
        # informational only, solvers never branch on it
        self.monotonicity = monotonicity
        self.defaults = dict(defaults or {})

    @property
    def dim(self):
        return self.F.dim

    def __repr__(self):
        return "<BenchmarkProblem %s d=%d set=%r>" % (self.name, self.dim, self.feasible_set)


SADDLE_MATRIX = np.array([[-1.0, -1.0], [1.0, -1.0]])
SADDLE_OFFSET = np.array([1.5, 0.5])


def linear_saddle_operator():
    def t_hat(x):
        return SADDLE_MATRIX.dot(x) + SADDLE_OFFSET

    return BenchmarkProblem(
        "linear-saddle",
        VectorField(2, t_hat, "T_hat"),
        PNormBall(2, 10),
        (0.0, 1.0),
        lipschitz=math.sqrt(2.0),
        monotonicity=MONOTONE,
        defaults=dict(method="einexpm", alpha=0.21, gamma_bar=0.106, outer_tol=1e-4),
    )


def nonlipschitz_t(x):
    x1, x2 = x[0], x[1]
    # clamped radicand keeps the field total on the whole ball
    t = 0.5 * (x1 + math.sqrt(max(x1 * x1 + 4.0 * x2, 0.0)))
    return -(t / (1.0 + t)) * np.ones(2)


def nonlipschitz_operator():
    return BenchmarkProblem(
        "non-lipschitz",
        VectorField(2, nonlipschitz_t, "T_tilde"),
        PNormBall(2, 10),
        (0.0, 1.0),
        x_ref=np.ones(2) / 2.0 ** 0.1,
        monotonicity=QUASIMONOTONE,
        defaults=dict(method="einexpmls", ref_tol=1e-2),
    )


def th_field(d, h, denominator=True):
    def t_h(x):
        x = np.asarray(x, dtype=np.float64)
        s = float(np.sum(x))
        if abs(s) < 1e-12:
            raise OperatorDomainError("T_h is undefined where sum(x) vanishes, got sum %.3e at %s" % (s, x))
        numerator = h * x * s - 0.5 * h * float(np.dot(x, x)) - 1.0
        return numerator / (s * s) if denominator else numerator

    return VectorField(d, t_h, "T_h")


def th_operator(d, p, h, denominator=True):
    """
    The T_h family on B^d_p. Setting denominator=False drops the positive
    factor 1/(sum x)^2, which rescales the field without moving its solutions.
    """
    if int(d) != d or d < 2:
        raise UsageError("T_h needs an integer d >= 2, got %r" % (d,))
    if not 0.1 <= h <= 1.6:
        raise UsageError("T_h needs 0.1 <= h <= 1.6, got %s" % h)
    if p < 1:
        raise UsageError("p-norm ball needs p >= 1, got %s" % p)
    d = int(d)
    start = np.zeros(d)
    start[-1] = 1.0
    name = "th:d=%d,p=%s,h=%s" % (d, _fmt(p), _fmt(h))
    if not denominator:
        name += ",denominator=0"
    return BenchmarkProblem(
        name,
        th_field(d, h, denominator),
        PNormBall(d, p),
        start,
        x_ref=th_reference(d, float(p), float(h), denominator),
        monotonicity=PSEUDO_MONOTONE,
        defaults=dict(method="einexpm", alpha=0.12 if denominator else 0.1, gamma_bar=0.4),
    )


@functools.lru_cache(maxsize=None)
def th_reference(d, p, h, denominator=True):
    alpha = math.sqrt(2.0 / (d * h))
    zero = alpha * np.ones(d)
    if pnorm(zero, p) <= 1.0:
        return zero
    # F is a negative multiple of e at the symmetric boundary point whenever alpha*e lies outside,
    # so -F is in the normal cone there and the point solves the VIP
    ball = PNormBall(d, p)
    field = th_field(d, h, denominator)
    candidate = d ** (-1.0 / p) * np.ones(d)
    residual = natural_residual(candidate, field, ball)
    if residual <= REFERENCE_RESIDUAL_TOL:
        return candidate
    logging.info("symmetric reference rejected for th d=%d p=%s h=%s (residual %.3e)", d, p, h, residual)
    return _high_accuracy_reference(field, ball, start=candidate)


def _high_accuracy_reference(field, ball, start):
    from pextragrad import extragradient
    from pextragrad.fw_projection import FWConfig

    cfg = extragradient.LSConfig(gamma_bar=1e-6, outer_tol=1e-8, max_outer=100000,
                                 fw=FWConfig(abs_gap_floor=1e-14))
    problem = BenchmarkProblem("reference", field, ball, start, monotonicity=PSEUDO_MONOTONE)
    x, trace = extragradient.einexpmls_solve(problem, cfg, start)
    if trace.status is not extragradient.Status.CONVERGED:
        raise ReferenceSolutionError("reference run ended with status %s" % trace.status.value)
    residual = natural_residual(x, field, ball)
    if residual > REFERENCE_RESIDUAL_TOL:
        raise ReferenceSolutionError("reference run residual %.3e is above %.1e" % (residual, REFERENCE_RESIDUAL_TOL))
    return x


def zero_operator(d=2, feasible_set=None):
    feasible_set = feasible_set or PNormBall(d, 2)
    start = np.zeros(feasible_set.dim)
    start[-1] = 1.0
    if not feasible_set.contains(start):
        start = feasible_set.interior_point
    return BenchmarkProblem(
        "zero:d=%d" % feasible_set.dim,
        VectorField(feasible_set.dim, lambda x: np.zeros(feasible_set.dim), "zero"),
        feasible_set,
        start,
        lipschitz=None,
        monotonicity=MONOTONE,
        defaults=dict(method="einexpm", alpha=0.5, gamma_bar=0.25),
    )


def shifted_identity(center, p=2.0):
    """F(x) = x - c on B^d_p; c is the unique solution when it lies in the ball."""
    center = as_point(center)
    ball = PNormBall(center.shape[0], p)
    if not ball.contains(center):
        raise UsageError("center %s must lie in the ball" % center)
    start = np.zeros(center.shape[0])
    start[-1] = 1.0
    return BenchmarkProblem(
        "shifted-identity:d=%d" % center.shape[0],
        VectorField(center.shape[0], lambda x: np.asarray(x) - center, "shifted_identity"),
        ball,
        start,
        x_ref=center,
        lipschitz=1.0,
        monotonicity=MONOTONE,
        defaults=dict(method="einexpm", alpha=0.5, gamma_bar=0.25),
    )


def _fmt(value):
    return ("%d" % value) if float(value).is_integer() else repr(float(value))


def _parse_params(text, name):
    params = {}
    for item in filter(None, text.split(",")):
        if "=" not in item:
            raise UsageError("malformed parameter %r in problem name %r" % (item, name))
        key, value = item.split("=", 1)
        try:
            params[key.strip()] = float(value)
        except ValueError:
            raise UsageError("parameter %s of %r is not a number" % (key, name))
    return params


def _build_th(params):
    for key in ("d", "p", "h"):
        if key not in params:
            raise UsageError("th problem needs d, p and h, missing %s" % key)
    return th_operator(params["d"], params["p"], params["h"], bool(params.get("denominator", 1.0)))


def _build_zero(params):
    return zero_operator(int(params.get("d", 2)))


def _build_shifted(params):
    d = int(params.get("d", 2))
    return shifted_identity(np.full(d, params.get("c", 0.1)), params.get("p", 2.0))


REGISTRY = {
    "linear-saddle": lambda params: linear_saddle_operator(),
    "non-lipschitz": lambda params: nonlipschitz_operator(),
    "th": _build_th,
    "zero": _build_zero,
    "shifted-identity": _build_shifted,
}

NAME_PATTERN = re.compile(r"^(?P<base>[a-z-]+)(:(?P<params>.*))?$")


def problem_names():
    return sorted(REGISTRY)


def get_problem(name):
    """Looks up names like "linear-saddle" or "th:d=5,p=10,h=0.6"."""
    match = NAME_PATTERN.match(name.strip())
    if match is None or match.group("base") not in REGISTRY:
        raise UsageError("unknown problem %r (known: %s)" % (name, ", ".join(problem_names())))
    params = _parse_params(match.group("params") or "", name)
    return REGISTRY[match.group("base")](params)
