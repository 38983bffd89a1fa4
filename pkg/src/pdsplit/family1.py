"""First scheme family: implicit x/y discretizations, three multiplier
predictions.

All three steps share the extrapolation variables ``v, w`` and the scaled
prox weights

    eta_f = (1 + a) gamma + mu_f a        eta_g = (1 + a) beta + mu_g a
    x_tilde = x + (a gamma / eta_f)(v - x)   (y analog)

and differ only in where the multiplier prediction sits:

* ``semi_b``: augmented x-step, then a prox y-step against the prediction
  built from the fresh ``v``.
* ``semi_a``: the mirror image (augmented y-step, prox x-step).
* ``explicit``: both blocks are prox steps against the same prediction;
  they are order independent.
"""

from dataclasses import dataclass

import numpy as np

from .subprob import solve_augmented_subproblem

__all__ = ["IterateStateF1", "step_f1_semi_b", "step_f1_semi_a", "step_f1_explicit"]


@dataclass
class IterateStateF1:
    x: np.ndarray
    v: np.ndarray
    y: np.ndarray
    w: np.ndarray
    lam: np.ndarray

    @staticmethod
    def cold_start(problem, x0=None, y0=None, lam0=None):
        """Defaults: zero primals and multiplier, v0 = x0, w0 = y0."""
        x0 = np.zeros(problem.dim_x) if x0 is None else np.asarray(x0, dtype=float)
        y0 = np.zeros(problem.dim_y) if y0 is None else np.asarray(y0, dtype=float)
        lam0 = np.zeros(problem.dim_lam) if lam0 is None else np.asarray(lam0, dtype=float)
        return IterateStateF1(x=x0, v=x0.copy(), y=y0, w=y0.copy(), lam=lam0)


def _weights(ps, alpha):
    eta_f = (1.0 + alpha) * ps.gamma + ps.mu_f * alpha
    eta_g = (1.0 + alpha) * ps.beta + ps.mu_g * alpha
    return eta_f, eta_g


def _tilde(point, velocity, coeff, eta, alpha):
    return point + (alpha * coeff / eta) * (velocity - point)


def step_f1_semi_b(problem, state, ps, ps_next, alpha, options):
    """Augmented x-step with penalty ``1/theta_{k+1}``, prox y-step."""
    A, B, b = problem.A, problem.B, problem.b
    th = ps.theta
    eta_f, eta_g = _weights(ps, alpha)
    x_tilde = _tilde(state.x, state.v, ps.gamma, eta_f, alpha)
    y_tilde = _tilde(state.y, state.w, ps.beta, eta_g, alpha)

    residual = A.apply(state.x) + B.apply(state.y) - b
    lam_hat = state.lam - residual / th + (alpha / th) * B.apply(state.w - state.y)

    offset = B.apply(state.y) - b
    x_new = solve_augmented_subproblem(
        problem.f_prox, A.adjoint(lam_hat), A, offset,
        sigma=1.0 / ps_next.theta, weight=eta_f / alpha ** 2, center=x_tilde,
        options=options, oracle=options.x_augmented_oracle,
    )
    v_new = x_new + (x_new - state.x) / alpha

    lam_bar = state.lam + (alpha / th) * (A.apply(v_new) + B.apply(state.w) - b)
    tau = alpha ** 2 / eta_g
    y_new = problem.g.prox(y_tilde - tau * B.adjoint(lam_bar), tau)
    w_new = y_new + (y_new - state.y) / alpha

    lam_new = state.lam + (alpha / th) * (A.apply(v_new) + B.apply(w_new) - b)
    return IterateStateF1(x=x_new, v=v_new, y=y_new, w=w_new, lam=lam_new)


def step_f1_semi_a(problem, state, ps, ps_next, alpha, options):
    """Augmented y-step, prox x-step; mirror of :func:`step_f1_semi_b`."""
    A, B, b = problem.A, problem.B, problem.b
    th = ps.theta
    eta_f, eta_g = _weights(ps, alpha)
    x_tilde = _tilde(state.x, state.v, ps.gamma, eta_f, alpha)
    y_tilde = _tilde(state.y, state.w, ps.beta, eta_g, alpha)

    residual = A.apply(state.x) + B.apply(state.y) - b
    lam_hat = state.lam - residual / th + (alpha / th) * A.apply(state.v - state.x)

    offset = A.apply(state.x) - b
    y_new = solve_augmented_subproblem(
        problem.g, B.adjoint(lam_hat), B, offset,
        sigma=1.0 / ps_next.theta, weight=eta_g / alpha ** 2, center=y_tilde,
        options=options, oracle=options.y_augmented_oracle,
    )
    w_new = y_new + (y_new - state.y) / alpha

    lam_bar = state.lam + (alpha / th) * (A.apply(state.v) + B.apply(w_new) - b)
    s = alpha ** 2 / eta_f
    x_new = problem.f_prox.prox(x_tilde - s * A.adjoint(lam_bar), s)
    v_new = x_new + (x_new - state.x) / alpha

    lam_new = state.lam + (alpha / th) * (A.apply(v_new) + B.apply(w_new) - b)
    return IterateStateF1(x=x_new, v=v_new, y=y_new, w=w_new, lam=lam_new)


def step_f1_explicit(problem, state, ps, ps_next, alpha, options):
    """Parallel linearized step: both blocks prox against the same
    multiplier prediction, no data dependence between them."""
    A, B, b = problem.A, problem.B, problem.b
    th = ps.theta
    eta_f, eta_g = _weights(ps, alpha)
    x_tilde = _tilde(state.x, state.v, ps.gamma, eta_f, alpha)
    y_tilde = _tilde(state.y, state.w, ps.beta, eta_g, alpha)

    lam_bar = state.lam + (alpha / th) * (A.apply(state.v) + B.apply(state.w) - b)

    s = alpha ** 2 / eta_f
    x_new = problem.f_prox.prox(x_tilde - s * A.adjoint(lam_bar), s)
    tau = alpha ** 2 / eta_g
    y_new = problem.g.prox(y_tilde - tau * B.adjoint(lam_bar), tau)

    v_new = x_new + (x_new - state.x) / alpha
    w_new = y_new + (y_new - state.y) / alpha
    lam_new = state.lam + (alpha / th) * (A.apply(v_new) + B.apply(w_new) - b)
    return IterateStateF1(x=x_new, v=v_new, y=y_new, w=w_new, lam=lam_new)
