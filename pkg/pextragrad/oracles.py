"""
Independent reference implementations used to validate the solvers: closed
form projections, the halfspace projection formula and a sampling check of
the variational inequality itself. Nothing here is fast.
"""
import numpy as np
from scipy.optimize import brentq
from scipy.stats import qmc

from pextragrad.core import as_point, dot, norm, pnorm
from pextragrad.errors import ProjectionError, UsageError

PNORM_TOL = 1e-10


def euclidean_ball_project(v):
    v = as_point(v)
    length = norm(v)
    if length <= 1.0:
        return v
    return v / length


def box_project(v, lo, hi):
    return np.clip(np.asarray(v, dtype=np.float64), lo, hi)


def simplex_project(v):
    """Projection onto the probability simplex by sorting."""
    v = as_point(v)
    v_decr = np.sort(v)[::-1]
    cumsum = np.cumsum(v_decr)
    theta = (cumsum - 1.0) / np.arange(1, v.size + 1)
    idx = np.max(np.argwhere(v_decr - theta > 0).ravel())
    return np.maximum(v - theta[idx], 0.0)


def halfspace_project(x, normal, anchor):
    """Projection of x onto {w : <normal, w - anchor> <= 0}."""
    x = as_point(x)
    normal = as_point(normal, x.shape[0])
    anchor = as_point(anchor, x.shape[0])
    length_sq = dot(normal, normal)
    if length_sq == 0.0:
        raise UsageError("halfspace normal must be nonzero")
    excess = dot(normal, x - anchor)
    if excess <= 0:
        return x
    return x - (excess / length_sq) * normal


def brute_force_vi_check(x, F, feasible_set, samples=10000, seed=0):
    """
    Smallest <F(x), y - x> over quasi-random feasible y plus the oracle answers
    for the costs +e_i and -e_i. Solutions give values >= -tol.
    """
    x = as_point(x, feasible_set.dim)
    Fx = F(x)
    lo, hi = feasible_set.bounding_box()
    sampler = qmc.Halton(d=feasible_set.dim, scramble=True, seed=seed)
    candidates = qmc.scale(sampler.random(samples), lo, hi) if samples > 0 else np.empty((0, feasible_set.dim))
    inside = [y for y in candidates if feasible_set.contains(y)]
    for i in range(feasible_set.dim):
        unit = np.zeros(feasible_set.dim)
        unit[i] = 1.0
        inside.append(feasible_set.lo_oracle(unit))
        inside.append(feasible_set.lo_oracle(-unit))
    values = [dot(Fx, y - x) for y in inside]
    # adding 0.0 turns a -0.0 minimum into 0.0
    return min(values) + 0.0 if values else 0.0


def reference_pnorm_project(v, p):
    """
    Projection onto the unit p-norm ball through its scalar multiplier mu.

    For fixed mu each |y_i| solves t + mu p t^(p-1) = |v_i| on [0, |v_i|];
    mu is then chosen so that ||y(mu)||_p = 1.
    """
    if p <= 1:
        raise UsageError("reference projector needs p > 1, got %s" % p)
    v = as_point(v)
    if pnorm(v, p) <= 1.0:
        return v
    magnitude = np.abs(v)

    def coordinate(target, mu):
        if target == 0.0:
            return 0.0
        return brentq(lambda t: t + mu * p * t ** (p - 1.0) - target, 0.0, target, xtol=1e-16)

    def shape(mu):
        return np.array([coordinate(target, mu) for target in magnitude])

    def excess(mu):
        return pnorm(shape(mu), p) - 1.0

    upper = 1.0
    while excess(upper) > 0:
        upper *= 2.0
        if upper > 1e300:
            raise ProjectionError("multiplier bracket not found for v=%s p=%s" % (v, p))
    if excess(0.0) <= 0:
        raise ProjectionError("multiplier bracket broken at mu=0 for v=%s p=%s" % (v, p))
    mu = brentq(excess, 0.0, upper, xtol=1e-15, maxiter=500)
    y = np.sign(v) * shape(mu)
    if abs(pnorm(y, p) - 1.0) > PNORM_TOL:
        raise ProjectionError("multiplier search missed the sphere: ||y||_p - 1 = %.3e" % (pnorm(y, p) - 1.0))
    return y
