import logging
from typing import Callable, Optional, Sequence

import numpy as np

from pwhlab.model.system import raw_vector_field
from pwhlab.numkernel import as_vector
from pwhlab.shifted import ShiftedContext, grad_s, in_omega_p_closure, supply_rate
from pwhlab.sim.integrator import s_values
from pwhlab.sim.schema import PassivityReport, Trajectory

logger = logging.getLogger(__name__)

VIOLATION_RTOL = 1e-9


def monitor_passivity(ctx: ShiftedContext, traj: Trajectory,
                      u_signal: Optional[Callable[[float], Sequence[float]]] = None) -> PassivityReport:
    """
    Check dS/dt ≤ yᵀ(u − ū) at every recorded step, with dS/dt = ∇S(x)ᵀẋ
    evaluated from the vector field. Steps outside Ω̄_p are skipped and
    listed in the report. u_signal defaults to the constant ū.
    """
    sys = ctx.sys
    n_points = len(traj.times)
    ds_dt = np.full(n_points, np.nan)
    supply = np.full(n_points, np.nan)
    skipped = []

    for k, (t, x) in enumerate(zip(traj.times, traj.states)):
        if not in_omega_p_closure(ctx, x):
            skipped.append(k)
            continue
        u = sys.u_bar if u_signal is None else as_vector(u_signal(float(t)), sys.n, "u")
        ds_dt[k] = float(grad_s(ctx, x) @ raw_vector_field(sys, x, u))
        supply[k] = supply_rate(ctx, x, u)

    if skipped:
        logger.warning(f"Passivity monitor skipped {len(skipped)} steps outside Ω̄_p (first at index {skipped[0]})")

    checked = ~np.isnan(ds_dt)
    max_violation = float(np.max(ds_dt[checked] - supply[checked])) if checked.any() else 0.0
    s_vals = traj.s_values
    if s_vals is None:
        s_vals = s_values(sys, ctx.x_bar, traj.states)
    tolerance = VIOLATION_RTOL * max(1.0, float(np.max(s_vals)))
    return PassivityReport(
        max_violation=max_violation,
        tolerance=tolerance,
        ds_dt=ds_dt,
        supply=supply,
        skipped_steps=tuple(skipped),
    )
