"""
Trajectory Integration
======================
Adaptive explicit Runge–Kutta (scipy's embedded pairs) driven one accepted
step at a time so that every step is recorded and the domain boundary can be
watched between steps. A crossing of the floor (Mx)_i ≤ 1e-9·(Mx̄)_i on a
power channel is localized on the step's dense output and ends the run with
LeftDomain.
"""

import logging
from typing import Callable, Optional, Sequence

import numpy as np
from scipy.integrate import DOP853, RK45
from scipy.optimize import brentq

from pwhlab import config
from pwhlab.errors import DomainError, InputError
from pwhlab.model.system import PwhSystem, check_state, in_domain, raw_vector_field
from pwhlab.numkernel import as_vector
from pwhlab.sim.schema import StopReason, Trajectory

logger = logging.getLogger(__name__)

METHODS = {"RK45": RK45, "DOP853": DOP853}

MIN_TOL = 1e-12
MAX_TOL = 1e-3
DOMAIN_FLOOR = 1e-9        # Relative to (Mx̄)_i
NEAR_BOUNDARY = 1e-3       # Collapse this close to the floor counts as an exit
UNDERFLOW_FACTOR = 1e-15   # Relative to t_end
LOCALIZE_FACTOR = 1e-9     # Exit-time accuracy relative to t_end
SLIVER_FACTOR = 1e-12      # Steps shorter than this times t_end replace the previous sample

InputSignal = Callable[[float], Sequence[float]]
StopCallback = Callable[[float, np.ndarray], Optional[StopReason]]


def _check_tolerance(name: str, value: float) -> None:
    if not MIN_TOL <= value <= MAX_TOL:
        raise InputError(f"{name} = {value} must lie in [{MIN_TOL}, {MAX_TOL}]")


def _solver_class(method: str):
    try:
        return METHODS[method]
    except KeyError:
        raise InputError(f"Unknown Runge-Kutta method {method!r}; choose from {sorted(METHODS)}")


def _rhs(sys: PwhSystem, u_signal: Optional[InputSignal]):
    if u_signal is None:
        return lambda t, x: raw_vector_field(sys, x)

    def fun(t, x):
        return raw_vector_field(sys, x, as_vector(u_signal(t), sys.n, "u"))

    return fun


def s_values(sys: PwhSystem, x_bar: np.ndarray, states: np.ndarray) -> np.ndarray:
    """Row-wise S(x) = ½ (x − x̄)ᵀ M (x − x̄)."""
    d = states - x_bar
    return 0.5 * np.einsum("ij,jk,ik->i", d, sys.M, d)


def integrate(
    sys: PwhSystem,
    x0,
    t_end: float,
    rel_tol: float = 1e-8,
    abs_tol: float = 1e-10,
    *,
    x_bar=None,
    u_signal: Optional[InputSignal] = None,
    max_step: float = np.inf,
    first_step: Optional[float] = None,
    stop_when: Optional[StopCallback] = None,
    method: Optional[str] = None,
) -> Trajectory:
    """
    Integrate ẋ = (J − R) M x + G(x) u + u_c from x0 over [0, t_end].

    x_bar anchors the domain floor and the recorded S values (defaults to
    x0 for the floor, no S values). u_signal(t) replaces ū when given.
    stop_when(t, x) may end the run early with any StopReason.
    """
    _check_tolerance("rel_tol", rel_tol)
    _check_tolerance("abs_tol", abs_tol)
    return _integrate(sys, x0, t_end, rel_tol, abs_tol, x_bar=x_bar, u_signal=u_signal,
                      max_step=max_step, first_step=first_step, stop_when=stop_when,
                      method=method or config.RK_METHOD)


def _integrate(sys, x0, t_end, rel_tol, abs_tol, *, x_bar, u_signal, max_step, first_step,
               stop_when, method) -> Trajectory:
    if not t_end > 0.0:
        raise InputError(f"t_end must be positive, got {t_end}")
    x0 = check_state(sys, x0)
    if not in_domain(sys, x0):
        raise DomainError(f"Initial state {x0.tolist()} is outside the operating domain Ω⁺")
    ref = x0 if x_bar is None else check_state(sys, x_bar)

    mask = sys.channel_mask
    floor = DOMAIN_FLOOR * np.abs(sys.M @ ref)[mask]

    def margin(x: np.ndarray) -> float:
        # Distance above the floor; +inf without power channels
        if not mask.any():
            return np.inf
        return float(np.min((sys.M @ x)[mask] - floor))

    solver_cls = _solver_class(method)
    solver = solver_cls(_rhs(sys, u_signal), 0.0, x0, t_end, max_step=max_step,
                        rtol=rel_tol, atol=abs_tol, first_step=first_step)

    times = [0.0]
    states = [x0]
    reason = None
    message = ""
    if stop_when is not None:
        reason = stop_when(0.0, x0)

    while reason is None:
        t_prev = solver.t
        msg = solver.step()

        if solver.status == "failed" or (solver.step_size is not None
                                         and solver.step_size < UNDERFLOW_FACTOR * t_end
                                         and solver.status == "running"):
            reason = _collapse_reason(sys, states[-1], ref)
            message = msg or f"step size {solver.step_size:.3e} underflowed"
            logger.debug(f"Integration stopped at t = {t_prev:.6g}: {reason.value} ({message})")
            break

        x = np.array(solver.y)
        if not np.all(np.isfinite(x)):
            reason = StopReason.DIVERGED
            message = "non-finite state"
            break

        if margin(x) <= 0.0:
            t_exit, x_exit = _localize_exit(solver, t_prev, margin, t_end)
            times.append(t_exit)
            states.append(x_exit)
            reason = StopReason.LEFT_DOMAIN
            message = f"left Ω⁺ at t = {t_exit:.9g}"
            logger.debug(message)
            break

        if solver.t - t_prev < SLIVER_FACTOR * t_end and len(times) > 1:
            times[-1] = float(solver.t)
            states[-1] = x
        else:
            times.append(float(solver.t))
            states.append(x)

        if stop_when is not None:
            reason = stop_when(float(solver.t), x)
        if reason is None and solver.status == "finished":
            reason = StopReason.REACHED_T_END

    states_arr = np.vstack(states)
    traj_s = None if x_bar is None else s_values(sys, ref, states_arr)
    return Trajectory(
        times=np.asarray(times),
        states=states_arr,
        stop_reason=reason,
        s_values=traj_s,
        n_steps=len(times) - 1,
        message=message,
    )


def _collapse_reason(sys: PwhSystem, x: np.ndarray, ref: np.ndarray) -> StopReason:
    """Step collapse next to the boundary is the finite-time exit of a CPL."""
    mask = sys.channel_mask
    if mask.any():
        e = (sys.M @ x)[mask]
        e_ref = np.abs(sys.M @ ref)[mask]
        if np.any(e < NEAR_BOUNDARY * e_ref):
            return StopReason.LEFT_DOMAIN
    return StopReason.STEP_UNDERFLOW


def _localize_exit(solver, t_prev: float, margin: Callable[[np.ndarray], float], t_end: float):
    dense = solver.dense_output()
    t_hi = float(solver.t)

    def g(t: float) -> float:
        return margin(dense(t))

    if g(t_prev) > 0.0:
        t_exit = brentq(g, t_prev, t_hi, xtol=LOCALIZE_FACTOR * t_end)
        # Report the first time at or below the floor
        t_exit = min(t_hi, max(t_exit, np.nextafter(t_prev, np.inf)))
    else:
        t_exit = t_hi
    return float(t_exit), np.asarray(dense(t_exit))


def integrator_order_study(sys: PwhSystem, x0, t_end: float, steps: Sequence[float],
                           reference, method: Optional[str] = None) -> np.ndarray:
    """
    Run the pair with fixed steps h (error control disabled) and return the
    observed orders log2(err(h_k) / err(h_{k+1})) against `reference`, the
    exact state at t_end. Steps should halve from one entry to the next.
    """
    reference = check_state(sys, reference)
    errors = []
    for h in steps:
        traj = _integrate(sys, x0, t_end, 1e6, 1e6, x_bar=None, u_signal=None, max_step=h,
                          first_step=h, stop_when=None, method=method or config.RK_METHOD)
        err = float(np.linalg.norm(traj.final_state - reference))
        logger.debug(f"Fixed step {h:.4g}: {traj.n_steps} steps, error {err:.3e}")
        errors.append(err)
    errors = np.asarray(errors)
    return np.log2(errors[:-1] / errors[1:])
