"""
Load Power Limits
=================
P_e_max: largest load with a real equilibrium.
P_s_max: largest load for which R + Z(x̄_s) > 0, both by the closed-form bound
and by bisection on the eigenvalue predicate.
"""

import logging
from dataclasses import dataclass
from typing import List, Optional

from scipy.optimize import bisect

from pwhlab.equilibrium.closed_form import single_port_equilibria
from pwhlab.equilibrium.formulas import p_max_existence, p_max_stability_formula
from pwhlab.model.builders import build_single_port
from pwhlab.model.reference import REFERENCE_STATED_P_S_MAX, is_reference_circuit
from pwhlab.model.schema import SinglePortParams
from pwhlab.numkernel import sym_eig_extremes
from pwhlab.shifted import ShiftedContext, r_plus_z

logger = logging.getLogger(__name__)

BISECTION_RTOL = 1e-6
DISCREPANCY_RTOL = 0.01


@dataclass(frozen=True)
class NumericBound:
    value: float
    saturated: bool


def stable_margin(p: SinglePortParams) -> Optional[float]:
    """λ_min(R + Z(x̄_s)) at the parameters' load, None without an equilibrium."""
    pair = single_port_equilibria(p)
    eq = pair.stable_candidate
    if eq is None:
        return None
    ctx = ShiftedContext(build_single_port(p), eq.x_bar)
    lam_min, _ = sym_eig_extremes(r_plus_z(ctx, eq.x_bar))
    return lam_min


def p_max_stability_numeric(p: SinglePortParams) -> NumericBound:
    """
    Supremum of P in (0, P_e_max] with λ_min(R + Z(x̄_s(P))) > 0, by bisection
    to 1e-6 relative. Saturates at P_e_max when the predicate never fails.
    """
    p_e_max = p_max_existence(p)

    def margin(load: float) -> float:
        value = stable_margin(p.model_copy(update={"P": load}))
        return -1.0 if value is None else value

    if p_e_max <= 0.0 or margin(0.0) <= 0.0:
        logger.info("No stable equilibrium even without load")
        return NumericBound(value=0.0, saturated=False)

    if margin(p_e_max) > 0.0:
        logger.info(f"Stability predicate holds up to P_e_max = {p_e_max:.6g} W")
        return NumericBound(value=p_e_max, saturated=True)

    root = bisect(margin, 0.0, p_e_max, xtol=BISECTION_RTOL * p_e_max, maxiter=200)
    logger.info(f"Numeric stability limit: {root:.6g} W")
    return NumericBound(value=float(root), saturated=False)


def _differs(a: float, b: float) -> bool:
    return abs(a - b) > DISCREPANCY_RTOL * max(abs(a), abs(b))


@dataclass(frozen=True)
class PowerLimits:
    p_e_max: float
    p_s_max_formula: float
    p_s_max_numeric: float
    numeric_saturated: bool
    p_s_max_stated: Optional[float]
    discrepancies: List[str]


def power_limits(p: SinglePortParams) -> PowerLimits:
    """All load limits side by side, with a note wherever two of them disagree by more than 1 %."""
    p_e_max = p_max_existence(p)
    formula = p_max_stability_formula(p)
    numeric = p_max_stability_numeric(p)
    stated = REFERENCE_STATED_P_S_MAX if is_reference_circuit(p) else None

    notes = []
    if _differs(formula, numeric.value):
        notes.append(
            f"discrepancy: closed-form P_s_max = {formula:.2f} W vs numeric bound {numeric.value:.2f} W"
        )
    if stated is not None and _differs(formula, stated):
        notes.append(
            f"discrepancy: closed-form P_s_max = {formula:.2f} W vs stated {stated:.2f} W for the reference circuit"
        )
    return PowerLimits(
        p_e_max=p_e_max,
        p_s_max_formula=formula,
        p_s_max_numeric=numeric.value,
        numeric_saturated=numeric.saturated,
        p_s_max_stated=stated,
        discrepancies=notes,
    )
