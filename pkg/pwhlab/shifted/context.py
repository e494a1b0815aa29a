"""
Shifted Machinery
=================
Around an equilibrium x̄ the dynamics read

    ẋ = (J − (R + Z(x))) ∇S(x) + G(x)(u − ū),   Z(x) = Ḡ diag(ū) G(x),

with S(x) = H(x) − (x − x̄)ᵀ∇H(x̄) − H(x̄) = ½ (x − x̄)ᵀ M (x − x̄) and passive
output y = Gᵀ(x)∇S(x).
"""

import logging
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from pwhlab.errors import InputError, PreconditionError
from pwhlab.model.system import (
    PwhSystem,
    check_state,
    equilibrium_tolerance,
    grad_h,
    hamiltonian,
    in_domain,
    input_gains,
    vector_field,
)
from pwhlab.numkernel import as_vector, cholesky_pd, pd_tolerance, sym_eig_extremes

logger = logging.getLogger(__name__)

SELF_CHECK_RTOL = 1e-12


@dataclass(frozen=True, eq=False)
class ShiftedContext:
    sys: PwhSystem
    x_bar: np.ndarray
    g_bar: np.ndarray = field(init=False)

    def __post_init__(self):
        x_bar = check_state(self.sys, self.x_bar)
        if not in_domain(self.sys, x_bar):
            raise InputError(f"x_bar = {x_bar.tolist()} is outside the operating domain")
        residual = float(np.linalg.norm(vector_field(self.sys, x_bar)))
        tol = equilibrium_tolerance(self.sys)
        if residual > tol:
            raise InputError(
                f"x_bar is not an equilibrium: residual {residual:.3e} exceeds {tol:.3e}"
            )
        x_bar.setflags(write=False)
        g_bar = input_gains(self.sys, x_bar)
        g_bar.setflags(write=False)
        object.__setattr__(self, "x_bar", x_bar)
        object.__setattr__(self, "g_bar", g_bar)

    @property
    def G_bar(self) -> np.ndarray:
        return np.diag(self.g_bar)


# --- STORAGE FUNCTION ---

def shifted_hamiltonian(ctx: ShiftedContext, x) -> float:
    """S(x) = ½ (x − x̄)ᵀ M (x − x̄), cross-checked against the Bregman form."""
    x = check_state(ctx.sys, x)
    d = x - ctx.x_bar
    s = 0.5 * float(d @ ctx.sys.M @ d)

    if __debug__:
        h_x = hamiltonian(ctx.sys, x)
        h_bar = hamiltonian(ctx.sys, ctx.x_bar)
        bregman = h_x - float(d @ grad_h(ctx.sys, ctx.x_bar)) - h_bar
        scale = max(1.0, abs(h_x), abs(h_bar))
        if abs(bregman - s) > SELF_CHECK_RTOL * scale:
            logger.warning(f"Shifted Hamiltonian forms disagree: {s!r} vs {bregman!r}")
    return s


def grad_s(ctx: ShiftedContext, x) -> np.ndarray:
    """∇S(x) = ∇H(x) − ∇H(x̄) = M (x − x̄)."""
    x = check_state(ctx.sys, x)
    return ctx.sys.M @ (x - ctx.x_bar)


# --- DISSIPATION STRUCTURE ---

def z_gains(ctx: ShiftedContext, x) -> np.ndarray:
    """Diagonal of Z(x): ū_i / ((Mx̄)_i (Mx)_i) on power channels."""
    return ctx.g_bar * ctx.sys.u_bar * input_gains(ctx.sys, x)


def z_matrix(ctx: ShiftedContext, x) -> np.ndarray:
    return np.diag(z_gains(ctx, x))


def r_plus_z(ctx: ShiftedContext, x) -> np.ndarray:
    return ctx.sys.R + z_matrix(ctx, x)


def shifted_rhs(ctx: ShiftedContext, x, u: Optional[Sequence[float]] = None) -> np.ndarray:
    """ẋ = (J − (R + Z(x))) ∇S(x) + G(x)(u − ū); u defaults to ū."""
    sys = ctx.sys
    g = input_gains(sys, x)
    u_in = sys.u_bar if u is None else as_vector(u, sys.n, "u")
    return (sys.J - r_plus_z(ctx, x)) @ grad_s(ctx, x) + g * (u_in - sys.u_bar)


def output_y(ctx: ShiftedContext, x) -> np.ndarray:
    """y = Gᵀ(x) ∇S(x); zero at x̄."""
    return input_gains(ctx.sys, x) * grad_s(ctx, x)


def supply_rate(ctx: ShiftedContext, x, u: Sequence[float]) -> float:
    """(y − ȳ)ᵀ(u − ū) with ȳ = 0."""
    u_in = as_vector(u, ctx.sys.n, "u")
    return float(output_y(ctx, x) @ (u_in - ctx.sys.u_bar))


def dissipation_rate(ctx: ShiftedContext, x) -> float:
    """−∇Sᵀ (R + Z(x)) ∇S, the value of dS/dt under constant input ū."""
    ds = grad_s(ctx, x)
    return float(-ds @ r_plus_z(ctx, x) @ ds)


# --- REGIONS ---

def in_omega_p(ctx: ShiftedContext, x) -> bool:
    """Ω_p: x ∈ Ω⁺ and R + Z(x) positive definite."""
    if not in_domain(ctx.sys, x):
        return False
    return cholesky_pd(r_plus_z(ctx, x)).positive_definite


def in_omega_p_closure(ctx: ShiftedContext, x) -> bool:
    """Ω̄_p: x ∈ Ω⁺ and λ_min(R + Z(x)) ≥ −pd_tolerance."""
    if not in_domain(ctx.sys, x):
        return False
    rz = r_plus_z(ctx, x)
    lam_min, _ = sym_eig_extremes(rz)
    return lam_min >= -pd_tolerance(rz)


def _require_pd_r(ctx: ShiftedContext) -> float:
    if not cholesky_pd(ctx.sys.R).positive_definite:
        raise PreconditionError("R must be positive definite for the Ω_Γ bounds")
    lam_min, _ = sym_eig_extremes(ctx.sys.R)
    return lam_min


def gamma_bounds(ctx: ShiftedContext) -> np.ndarray:
    """
    γ_i = −Ḡ_ii ū_i / λ_m{R}; zero off the power channels.
    Source channels (ū_i > 0) are clamped at 0 since Ω⁺ already bounds them.
    """
    lam_min = _require_pd_r(ctx)
    gamma = -ctx.g_bar * ctx.sys.u_bar / lam_min
    return np.maximum(gamma, 0.0)


def eta_bounds(ctx: ShiftedContext) -> np.ndarray:
    """η_i = −Ḡ_ii ū_i / R_ii for diagonal R; clamped at 0 like γ."""
    _require_pd_r(ctx)
    eta = -ctx.g_bar * ctx.sys.u_bar / np.diag(ctx.sys.R)
    return np.maximum(eta, 0.0)


def in_omega_gamma(ctx: ShiftedContext, x) -> bool:
    """Ω_Γ: x ∈ Ω⁺ and (Mx)_i > γ_i for every coordinate i (I included)."""
    gamma = gamma_bounds(ctx)
    if not in_domain(ctx.sys, x):
        return False
    return bool(np.all(grad_h(ctx.sys, x) > gamma))


def is_power_source_system(sys: PwhSystem) -> bool:
    """Every power channel injects power (ū ≥ 0); then Ω̄_p = Ω⁺."""
    return bool(np.all(sys.u_bar[sys.channel_mask] >= 0.0))

