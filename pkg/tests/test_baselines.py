"""Reference methods: transcriptions, fixed points, convergence to a
known optimum, and the optimum estimator."""

import numpy as np
import pytest

from pdsplit.baselines import (BaselineState, PDHGState, approximate_optimum,
                               ladmm_run, pdhg_run, step_ladmm, step_pdhg)
from pdsplit.linops import DenseOperator, negated_identity
from pdsplit.oracles import SeparableProblem, feasibility_residual
from pdsplit.prox import L1Norm, QuadraticProx, ZeroFun

from helpers import quadratic_instance


def test_ladmm_matches_scalar_transcription():
    pf, qf, pg, qg = 0.7, 0.2, 1.2, -0.5
    a, c, b = 1.5, -0.8, 0.4
    prob = SeparableProblem(
        QuadraticProx(np.array([[pf]]), np.array([qf])),
        QuadraticProx(np.array([[pg]]), np.array([qg])),
        DenseOperator(np.array([[a]])), DenseOperator(np.array([[c]])),
        np.array([b]))
    x, y, lam = 0.6, -0.3, 0.9
    sigma, tx, ty = 1.3, 0.21, 0.33
    st = BaselineState(x=np.array([x]), y=np.array([y]), lam=np.array([lam]))

    res = a * x + c * y - b + lam / sigma
    zx = x - tx * sigma * a * res
    x_new = (zx - tx * qf) / (1.0 + tx * pf)
    res = a * x_new + c * y - b + lam / sigma
    zy = y - ty * sigma * c * res
    y_new = (zy - ty * qg) / (1.0 + ty * pg)
    lam_new = lam + sigma * (a * x_new + c * y_new - b)

    out = step_ladmm(prob, st, sigma, tx, ty)
    assert abs(out.x[0] - x_new) <= 1e-12
    assert abs(out.y[0] - y_new) <= 1e-12
    assert abs(out.lam[0] - lam_new) <= 1e-12


def test_ladmm_saddle_is_fixed_point():
    prob, _ = quadratic_instance(31)
    sd = prob.saddle
    st = BaselineState(x=sd.x.copy(), y=sd.y.copy(), lam=sd.lam.copy())
    tx = 1.0 / prob.A.norm_bound() ** 2
    ty = 1.0 / prob.B.norm_bound() ** 2
    out = step_ladmm(prob, st, 1.0, tx, ty)
    assert np.allclose(out.x, sd.x, atol=1e-10)
    assert np.allclose(out.y, sd.y, atol=1e-10)
    assert np.allclose(out.lam, sd.lam, atol=1e-10)


def test_ladmm_converges_to_kkt_solution():
    prob, _ = quadratic_instance(32)
    _, state = ladmm_run(prob, 5000)
    assert np.linalg.norm(state.x - prob.saddle.x) <= 1e-6
    assert np.linalg.norm(state.y - prob.saddle.y) <= 1e-6
    assert feasibility_residual(prob, state.x, state.y) <= 1e-6


def test_pdhg_requires_composite_shape():
    prob, _ = quadratic_instance(33)
    with pytest.raises(ValueError):
        pdhg_run(prob, 10)


def composite_problem(seed, n=6, m=4):
    rng = np.random.default_rng(seed)
    A = rng.standard_normal((m, n))
    prob = SeparableProblem(
        L1Norm(0.5), QuadraticProx(np.eye(m), rng.standard_normal(m)),
        DenseOperator(A), negated_identity(m), np.zeros(m))
    return prob


def test_pdhg_matches_scalar_transcription():
    pg, qg = 1.1, 0.3
    a = 1.6
    prob = SeparableProblem(
        QuadraticProx(np.array([[0.9]]), np.array([-0.2])),
        QuadraticProx(np.array([[pg]]), np.array([qg])),
        DenseOperator(np.array([[a]])), negated_identity(1), np.zeros(1))
    x, xb, lam = 0.4, 0.5, -0.7
    tau = sigma = 0.45
    st = PDHGState(x=np.array([x]), x_bar=np.array([xb]), y=np.zeros(1),
                   lam=np.array([lam]), x_sum=np.zeros(1), y_sum=np.zeros(1),
                   count=0)
    z = lam + sigma * a * xb
    y_new = (z / sigma - (1 / sigma) * qg) / (1.0 + (1 / sigma) * pg)
    lam_new = z - sigma * y_new
    zx = x - tau * a * lam_new
    x_new = (zx - tau * (-0.2)) / (1.0 + tau * 0.9)

    out = step_pdhg(prob, st, tau, sigma)
    assert abs(out.y[0] - y_new) <= 1e-12
    assert abs(out.lam[0] - lam_new) <= 1e-12
    assert abs(out.x[0] - x_new) <= 1e-12
    assert abs(out.x_bar[0] - (2 * x_new - x)) <= 1e-12


def test_pdhg_reduces_objective_and_residual():
    prob = composite_problem(34)
    trace, state = pdhg_run(prob, 3000)
    assert trace.rows[-1].feas <= 1e-6
    assert trace.rows[-1].obj <= trace.rows[0].obj


def test_pdhg_ergodic_average_satisfies_jensen():
    prob = composite_problem(35)
    _, state = pdhg_run(prob, 200)
    x_bar, y_bar = state.ergodic()
    assert state.count == 200
    # objective at the average is at most the running average of objectives
    _, replay = pdhg_run(prob, 0)
    total = 0.0
    st = replay
    tau = sigma = 1.0 / prob.A.norm_bound()
    for _ in range(200):
        st = step_pdhg(prob, st, tau, sigma)
        total += prob.objective(st.x, st.y)
    assert prob.objective(x_bar, y_bar) <= total / 200 + 1e-10


def test_approximate_optimum_matches_kkt_oracle():
    prob, _ = quadratic_instance(36)
    est = approximate_optimum(prob, iters=4000)
    f_star = prob.objective(prob.saddle.x, prob.saddle.y)
    assert abs(est.value - f_star) <= max(est.uncertainty, 1e-6)
    assert est.uncertainty <= 1e-4


def test_approximate_optimum_zero_budget():
    prob, _ = quadratic_instance(37)
    est = approximate_optimum(prob, iters=0)
    assert est.uncertainty == np.inf
    assert est.value == pytest.approx(prob.objective(np.zeros(prob.dim_x),
                                                     np.zeros(prob.dim_y)))


def test_baselines_reject_split_f_block():
    _, split = quadratic_instance(38)
    with pytest.raises(ValueError):
        ladmm_run(split, 3)


def test_trace_theta_column_is_one():
    prob, _ = quadratic_instance(39)
    trace, _ = ladmm_run(prob, 5)
    assert all(r.theta == 1.0 for r in trace.rows)
