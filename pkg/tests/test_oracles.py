import math

import numpy as np
import pytest
import sure
from numpy.testing import assert_allclose

from pextragrad.core import norm, pnorm
from pextragrad.errors import UsageError
from pextragrad.extragradient import halfspace_stepsize
from pextragrad.fw_projection import FWConfig, fw_project
from pextragrad.oracles import (box_project, brute_force_vi_check, euclidean_ball_project, halfspace_project,
                                reference_pnorm_project, simplex_project)
from pextragrad.problems import PNormBall, linear_saddle_operator, nonlipschitz_operator, zero_operator


def test_euclidean_ball_project():
    assert_allclose(euclidean_ball_project([3.0, 4.0]), [0.6, 0.8])
    assert_allclose(euclidean_ball_project([0.3, 0.4]), [0.3, 0.4])


def test_box_project():
    assert_allclose(box_project([2.0, -3.0, 0.5], 0.0, 1.0), [1.0, 0.0, 0.5])


def test_simplex_project():
    y = simplex_project([0.6, 0.8, -0.5])

    abs(float(np.sum(y)) - 1.0).should.be.lower_than(1e-12)
    bool(np.all(y >= 0)).should.be.true
    assert_allclose(y, [0.4, 0.6, 0.0], atol=1e-12)
    assert_allclose(simplex_project([0.2, 0.3, 0.5]), [0.2, 0.3, 0.5], atol=1e-12)


def test_halfspace_project():
    normal = np.array([1.0, 0.0])
    anchor = np.array([0.5, 0.0])

    assert_allclose(halfspace_project([2.0, 1.0], normal, anchor), [0.5, 1.0])
    assert_allclose(halfspace_project([0.0, 1.0], normal, anchor), [0.0, 1.0])
    halfspace_project.when.called_with([0.0, 1.0], [0.0, 0.0], anchor).should.throw(UsageError)


def test_halfspace_stepsize_matches_the_projection():
    rng = np.random.default_rng(11)
    for _ in range(100):
        x, z, Fz = rng.normal(size=(3, 4))
        if np.dot(Fz, x - z) < 0:
            Fz = -Fz

        lam = halfspace_stepsize(x, z, Fz)

        lam.should.be.greater_than_or_equal_to(0.0)
        assert_allclose(x - lam * Fz, halfspace_project(x, Fz, z), atol=1e-12)


def test_reference_projection_inside():
    assert_allclose(reference_pnorm_project([0.2, 0.3], 10), [0.2, 0.3])


def test_reference_projection_is_symmetric():
    y = reference_pnorm_project([2.0, 2.0], 10)

    assert_allclose(y, [2.0 ** -0.1] * 2, rtol=1e-9)


def test_reference_projection_matches_the_euclidean_case():
    v = np.array([1.5, -2.0, 0.5])

    assert_allclose(reference_pnorm_project(v, 2), euclidean_ball_project(v), atol=1e-9)


def test_reference_projection_needs_p_above_one():
    reference_pnorm_project.when.called_with([2.0, 0.0], 1).should.throw(UsageError)


def agreement(rng, p, dim, draws):
    ball = PNormBall(dim, p)
    for _ in range(draws):
        v = rng.normal(size=dim)
        v *= rng.uniform(1.1, 3.0) / pnorm(v, p)
        expected = reference_pnorm_project(v, p)
        result = fw_project(np.zeros(dim), v, ball, FWConfig(gamma=0.0, abs_gap_floor=1e-12, max_iter=20000))
        # 1-strong convexity of ||w - v||^2 / 2 bounds the distance by the gap
        bound = math.sqrt(2.0 * max(result.final_gap, 0.0)) + 1e-9
        norm(result.w - expected).should.be.lower_than_or_equal_to(bound)
        if not result.exhausted:
            norm(result.w - expected).should.be.lower_than(1e-4)


@pytest.mark.parametrize("p,dim", [(2.0, 2), (10.0, 2), (15.0, 2), (10.0, 5)])
def test_fw_agrees_with_the_reference_projection(p, dim):
    agreement(np.random.default_rng(int(p) + dim), p, dim, 5)


@pytest.mark.slow
@pytest.mark.parametrize("p", [2.0, 10.0, 15.0])
@pytest.mark.parametrize("dim", [2, 5, 20])
def test_fw_agrees_with_the_reference_projection_at_scale(p, dim):
    agreement(np.random.default_rng(100 * int(p) + dim), p, dim, 100)


def test_vi_check_passes_at_the_solution():
    problem = nonlipschitz_operator()

    witness = brute_force_vi_check(problem.x_ref, problem.F, problem.feasible_set, samples=2000)

    witness.should.be.greater_than_or_equal_to(-1e-9)


def test_vi_check_finds_a_witness():
    problem = linear_saddle_operator()

    witness = brute_force_vi_check(problem.x_start, problem.F, problem.feasible_set, samples=2000)

    witness.should.be.lower_than(-0.1)


def test_vi_check_on_the_zero_operator():
    problem = zero_operator(2)

    brute_force_vi_check(problem.x_start, problem.F, problem.feasible_set, samples=100).should.eql(0.0)


def test_vi_check_is_deterministic():
    problem = linear_saddle_operator()
    x = np.array([0.2, 0.1])

    first = brute_force_vi_check(x, problem.F, problem.feasible_set, samples=500, seed=3)
    second = brute_force_vi_check(x, problem.F, problem.feasible_set, samples=500, seed=3)

    first.should.eql(second)
