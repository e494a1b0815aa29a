"""
Closed-Form Equilibria
======================
Both concrete systems reduce to a scalar quadratic a·z² − b·z + c = 0 whose
larger root is the high-energy branch (s) and smaller root the low-energy
branch (u). The smaller root is taken from Vieta's product to avoid
cancellation. Every root is substituted back into the vector field.
"""

import logging
import math
from typing import Callable, Optional, Tuple

import numpy as np

from pwhlab.equilibrium.classify import make_equilibrium
from pwhlab.equilibrium.formulas import p_max_existence
from pwhlab.equilibrium.schema import Equilibrium, EquilibriumPair
from pwhlab.errors import NumericError
from pwhlab.model.builders import build_sg, build_single_port
from pwhlab.model.schema import SgParams, SinglePortParams
from pwhlab.model.system import PwhSystem, residual_norm

logger = logging.getLogger(__name__)

# Absolute bounds on ‖vector_field‖ at a substituted root
SINGLE_PORT_RESIDUAL = 1e-10
SG_RESIDUAL = 1e-12
DISCRIMINANT_FLOOR = 1e-12   # Relative to b², absorbs rounding at the double root


def _quadratic_roots(a: float, b: float, c: float) -> Tuple[float, Optional[float], Optional[float]]:
    """Roots of a·z² − b·z + c = 0 as (discriminant, larger, smaller)."""
    disc = b * b - 4.0 * a * c
    if disc < 0.0 and disc > -DISCRIMINANT_FLOOR * b * b:
        disc = 0.0
    if disc < 0.0:
        return disc, None, None
    big = (b + math.sqrt(disc)) / (2.0 * a)
    if disc == 0.0:
        return disc, big, big
    small = c / (a * big) if big != 0.0 else 0.0
    return disc, big, small


def _checked(sys: PwhSystem, state: np.ndarray, tol: float) -> Equilibrium:
    residual = residual_norm(sys, state)
    if residual > tol:
        raise NumericError(f"Closed-form equilibrium failed substitution: residual {residual:.3e} > {tol:.3e}")
    return make_equilibrium(sys, state)


def _branch(sys: PwhSystem, root: Optional[float], to_state: Callable[[float], np.ndarray],
            tol: float) -> Optional[Equilibrium]:
    # Charge and speed are physically positive; z <= 0 is rejected
    if root is None or root <= 0.0:
        return None
    return _checked(sys, to_state(root), tol)


def single_port_equilibria(p: SinglePortParams) -> EquilibriumPair:
    """
    Capacitor voltage from (1 + r_ℓ/r_p)·v̄² − v_eff·v̄ + r_ℓ·P = 0, then
    q̄ = C·v̄, ī = (v_g − v̄)/r_ℓ, φ̄ = L·ī.
    """
    sys = build_single_port(p)
    a = 1.0 + p.r_l / p.r_p
    disc, v_s, v_u = _quadratic_roots(a, p.v_eff, p.r_l * p.P)
    p_e_max = p_max_existence(p)

    if v_s is None:
        logger.debug(f"No real equilibrium: P = {p.P:.6g} W exceeds P_e_max = {p_e_max:.6g} W")
        return EquilibriumPair(None, None, disc, p_e_max)

    def to_state(v: float) -> np.ndarray:
        return np.array([p.L * (p.v_g - v) / p.r_l, p.C * v])

    pair = EquilibriumPair(
        stable_candidate=_branch(sys, v_s, to_state, SINGLE_PORT_RESIDUAL),
        unstable_candidate=_branch(sys, v_u, to_state, SINGLE_PORT_RESIDUAL),
        discriminant=disc,
        p_e_max=p_e_max,
    )
    logger.debug(f"Single-port equilibria: v_s = {v_s:.6g} V, v_u = {v_u:.6g} V")
    return pair


def sg_equilibria(p: SgParams) -> EquilibriumPair:
    """
    Rotor speed from (D_d + D_m)·ω̄² − (τ_m + D_d ω*)·ω̄ + P_e = 0;
    the state is the angular momentum M·ω̄.
    """
    sys = build_sg(p)
    disc, w_s, w_u = _quadratic_roots(p.damping, p.drive, p.P_e)
    if w_s is None:
        logger.debug(f"No real equilibrium: discriminant {disc:.6g} < 0")
        return EquilibriumPair(None, None, disc)

    def to_state(w: float) -> np.ndarray:
        return np.array([p.M_inertia * w])

    pair = EquilibriumPair(
        stable_candidate=_branch(sys, w_s, to_state, SG_RESIDUAL),
        unstable_candidate=_branch(sys, w_u, to_state, SG_RESIDUAL),
        discriminant=disc,
    )
    logger.debug(f"Generator equilibria: ω_s = {w_s:.6g}, ω_u = {w_u:.6g}")
    return pair
