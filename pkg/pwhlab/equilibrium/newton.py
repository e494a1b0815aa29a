"""
Damped Newton Solver
====================
Finds roots of the vector field from a start point in Ω⁺. Each step is halved
until the iterate stays in Ω⁺ and the residual norm decreases.
"""

import logging

import numpy as np

from pwhlab.equilibrium.classify import make_equilibrium
from pwhlab.equilibrium.schema import Equilibrium
from pwhlab.errors import DomainError, DomainExitError, NoConvergenceError, SingularMatrixError
from pwhlab.model.system import (
    PwhSystem,
    check_state,
    equilibrium_tolerance,
    in_domain,
    jacobian,
    vector_field,
)
from pwhlab.numkernel import solve_linear

logger = logging.getLogger(__name__)

MAX_ITERATIONS = 100
MAX_HALVINGS = 60
CONVERGENCE_FACTOR = 1e-10
POLISH_STEPS = 3


def _damped_step(sys: PwhSystem, x: np.ndarray, f: np.ndarray, r: float):
    """Return (x_new, f_new, r_new) or None when no halving improves the residual."""
    try:
        step = solve_linear(jacobian(sys, x), -f)
    except SingularMatrixError as e:
        raise NoConvergenceError(f"Singular Jacobian at {x.tolist()}") from e

    t = 1.0
    stayed_inside = False
    for _ in range(MAX_HALVINGS + 1):
        candidate = x + t * step
        if in_domain(sys, candidate):
            stayed_inside = True
            f_c = vector_field(sys, candidate)
            r_c = float(np.linalg.norm(f_c))
            if r_c < r:
                return candidate, f_c, r_c
        t *= 0.5

    if not stayed_inside:
        raise DomainExitError(f"Newton iterate left Ω⁺ from {x.tolist()} after {MAX_HALVINGS} halvings")
    return None


def solve_newton(sys: PwhSystem, x0, max_iterations: int = MAX_ITERATIONS) -> Equilibrium:
    x = check_state(sys, x0)
    if not in_domain(sys, x):
        raise DomainError(f"Start point {x.tolist()} is outside Ω⁺")

    tol = equilibrium_tolerance(sys, CONVERGENCE_FACTOR)
    f = vector_field(sys, x)
    r = float(np.linalg.norm(f))

    for iteration in range(max_iterations):
        if r <= tol:
            # A few extra steps take the residual down to rounding level
            for _ in range(POLISH_STEPS):
                try:
                    polished = _damped_step(sys, x, f, r) if r > 0.0 else None
                except (DomainExitError, NoConvergenceError):
                    polished = None
                if polished is None:
                    break
                x, f, r = polished
            logger.debug(f"Newton converged in {iteration} iterations, residual {r:.3e}")
            return make_equilibrium(sys, x)

        result = _damped_step(sys, x, f, r)
        if result is None:
            raise NoConvergenceError(
                f"Line search stalled at residual {r:.3e} after {iteration} iterations", iteration
            )
        x, f, r = result
        logger.debug(f"Newton iteration {iteration + 1}: residual {r:.3e}")

    raise NoConvergenceError(
        f"Newton did not converge in {max_iterations} iterations (residual {r:.3e})", max_iterations
    )


def initial_guess(sys: PwhSystem) -> np.ndarray:
    """
    Equilibrium of the network with the power inputs removed, when it lies in
    Ω⁺; otherwise the state with ∇H = 1.
    """
    try:
        x_lin = solve_linear((sys.J - sys.R) @ sys.M, -sys.u_c)
        if in_domain(sys, x_lin):
            return x_lin
    except SingularMatrixError:
        logger.debug("Linear network is singular; falling back to the unit-gradient start")
    return solve_linear(sys.M, np.ones(sys.n))
