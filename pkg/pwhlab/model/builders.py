"""
System Builders
===============
Concrete PwH systems: the single-port RLC circuit with a ZIP load, the
multi-port DC network and the synchronous generator (improved swing equation).
"""

import logging

import numpy as np

from pwhlab.errors import InputError
from pwhlab.model.schema import MultiportParams, SgParams, SinglePortParams
from pwhlab.model.system import PwhSystem
from pwhlab.model.validators import validate_positive_definite
from pwhlab.numkernel import as_matrix, solve_linear

logger = logging.getLogger(__name__)

INVERSE_RESIDUAL = 1e-10


def build_single_port(p: SinglePortParams) -> PwhSystem:
    """
    State x = (φ, q): inductor flux and capacitor charge.
    The capacitor (index 1) is always a power channel, also when P = 0.
    """
    return PwhSystem(
        J=np.array([[0.0, -1.0], [1.0, 0.0]]),
        R=np.diag([p.r_l, 1.0 / p.r_p]),
        M=np.diag([1.0 / p.L, 1.0 / p.C]),
        power_channels=(1,),
        u_bar=np.array([0.0, -p.P]),
        u_c=np.array([p.v_g, -p.i_load]),
        label="single_port",
        units="SI: flux [Wb], charge [C], power [W]",
    )


def _spd_inverse(name: str, a: np.ndarray) -> np.ndarray:
    validate_positive_definite(name, a)
    inv = solve_linear(a, np.eye(a.shape[0]))
    inv = 0.5 * (inv + inv.T)
    residual = float(np.max(np.abs(a @ inv - np.eye(a.shape[0]))))
    if residual > INVERSE_RESIDUAL * max(1.0, float(np.linalg.cond(a))):
        raise InputError(f"{name} is too ill-conditioned to invert (residual {residual:.3e})")
    return inv


def build_multiport(p: MultiportParams) -> PwhSystem:
    """
    State x = (φ, q) with φ ∈ ℝ^l inductor fluxes and q ∈ ℝ^c capacitor charges.

    M = blockdiag(L⁻¹, C⁻¹), J = [[0, Γ], [−Γᵀ, 0]], R = blockdiag(Z, Y).
    Only capacitors with a nonzero load power become power channels.
    """
    L = as_matrix(p.L_mat, "L")
    C = as_matrix(p.C_mat, "C")
    Z = as_matrix(p.Z_mat, "Z")
    Y = as_matrix(p.Y_mat, "Y")
    gamma = as_matrix(p.Gamma, "Gamma")
    l, c = L.shape[0], C.shape[0]

    L_inv = _spd_inverse("L", L)
    C_inv = _spd_inverse("C", C)
    validate_positive_definite("Z", Z)
    validate_positive_definite("Y", Y)

    n = l + c
    M = np.zeros((n, n))
    M[:l, :l] = L_inv
    M[l:, l:] = C_inv

    J = np.zeros((n, n))
    J[:l, l:] = gamma
    J[l:, :l] = -gamma.T

    R = np.zeros((n, n))
    R[:l, :l] = Z
    R[l:, l:] = Y

    loads = np.asarray(p.P_vec, dtype=float)
    u_bar = np.concatenate([np.zeros(l), -loads])
    channels = tuple(l + k for k in range(c) if loads[k] != 0.0)
    u_c = np.zeros(n) if p.u_c is None else np.asarray(p.u_c, dtype=float)

    logger.debug(f"Built multiport network: {l} inductors, {c} capacitors, {len(channels)} loads")
    return PwhSystem(
        J=J, R=R, M=M,
        power_channels=channels,
        u_bar=u_bar,
        u_c=u_c,
        label="multiport",
        units="SI: flux [Wb], charge [C], power [W]",
    )


def build_sg(p: SgParams) -> PwhSystem:
    """
    One-dimensional system in the angular momentum p = M ω:
    J = 0, R = D_m + D_d, ∇H = ω, ū = −P_e, u_c = τ_m + D_d ω*.
    """
    channels = (0,) if p.P_e != 0.0 else ()
    return PwhSystem(
        J=np.zeros((1, 1)),
        R=np.array([[p.damping]]),
        M=np.array([[1.0 / p.M_inertia]]),
        power_channels=channels,
        u_bar=np.array([-p.P_e]),
        u_c=np.array([p.drive]),
        label="sg",
        units="per-unit: angular momentum p = M*omega",
    )
