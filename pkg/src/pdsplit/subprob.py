"""Augmented block subproblems shared by the Gauss-Seidel schemes.

Each non-linearized block update minimizes

    h(u) + <linear, u> + sigma/2 ||C u + offset||^2 + weight/2 ||u - center||^2

over the block's set (folded into ``h``'s prox).  The solve is closed form
when ``C`` is a scaled identity (the augmented term merges into the prox)
or when the block oracle solves augmented quadratics itself; otherwise an
optional inner proximal-gradient loop is used.
"""

from dataclasses import dataclass

import numpy as np

from .linops import ScaledIdentity

__all__ = ["SolverOptions", "AugmentedSubproblemError", "solve_augmented_subproblem"]


class AugmentedSubproblemError(RuntimeError):
    pass


@dataclass
class SolverOptions:
    """Solver policy knobs; all schemes share them."""

    inner_enabled: bool = False
    inner_tol: float = 1e-10
    inner_max_iters: int = 500
    x_augmented_oracle: object = None   # callable override for the x/v block
    y_augmented_oracle: object = None   # callable override for the y block


def solve_augmented_subproblem(block, linear, C, offset, sigma, weight, center,
                               options, oracle=None):
    if oracle is not None:
        return oracle(linear, C, offset, sigma, weight, center)

    if isinstance(C, ScaledIdentity):
        c = C.scale
        rho = sigma * c * c + weight
        z = (weight * center - linear - sigma * c * offset) / rho
        return block.prox(z, 1.0 / rho)

    closed = block.solve_augmented(linear, C, offset, sigma, weight, center)
    if closed is not None:
        return closed

    if options.inner_enabled:
        return _inner_prox_gradient(block, linear, C, offset, sigma, weight, center, options)

    raise AugmentedSubproblemError(
        "no closed form for this block with a general coupling operator; "
        "supply an augmented-subproblem oracle or enable the inner loop"
    )


def _inner_prox_gradient(block, linear, C, offset, sigma, weight, center, options):
    """Proximal gradient on the smooth quadratic part, prox on the block."""
    lip = sigma * C.norm_bound() ** 2 + weight
    u = np.array(center, dtype=float)
    for _ in range(options.inner_max_iters):
        grad = linear + sigma * C.adjoint(C.apply(u) + offset) + weight * (u - center)
        u_next = block.prox(u - grad / lip, 1.0 / lip)
        if np.linalg.norm(u_next - u) <= options.inner_tol * (1.0 + np.linalg.norm(u_next)):
            return u_next
        u = u_next
    return u
