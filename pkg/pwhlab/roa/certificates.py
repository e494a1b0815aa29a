"""
Region-of-Attraction Certificates
=================================
Every certificate is a sublevel set L_k = {x : S(x) < k} of the shifted
Hamiltonian, sized so that L_k stays inside Ω_Γ ⊂ Ω_p where S strictly
decreases. The generator admits an exact half-line estimate instead.
"""

import logging
from typing import Optional, Sequence

import numpy as np
from scipy.linalg import eigh

from pwhlab.equilibrium.schema import EquilibriumPair
from pwhlab.errors import CertificateUnavailableError, InputError, ModeUnavailableError
from pwhlab.model.schema import SgParams, SinglePortParams
from pwhlab.model.system import grad_h, in_domain
from pwhlab.numkernel import is_diagonal, pd_tolerance, solve_linear, sym_eig_extremes
from pwhlab.roa.schema import IndexSet, PrincipalAxes, RoaEstimate, RoaMode
from pwhlab.shifted import ShiftedContext, eta_bounds, gamma_bounds, r_plus_z, shifted_hamiltonian

logger = logging.getLogger(__name__)

Q_MIN_IDENTITY_RTOL = 1e-12


def _require_strict_passivity(ctx: ShiftedContext) -> None:
    rz = r_plus_z(ctx, ctx.x_bar)
    lam_min, _ = sym_eig_extremes(rz)
    if lam_min <= pd_tolerance(rz):
        raise CertificateUnavailableError(
            f"λ_min(R + Z(x̄)) = {lam_min:.6g} is not positive; no certificate"
        )


def _indices(ctx: ShiftedContext, index_set: IndexSet) -> Sequence[int]:
    if index_set is IndexSet.LITERAL:
        indices = range(ctx.sys.n)
    else:
        indices = ctx.sys.power_channels
    if len(indices) == 0:
        raise CertificateUnavailableError("Empty index set; the level is undefined")
    return list(indices)


def _require_inside(e_bar: np.ndarray, bounds: np.ndarray, indices: Sequence[int], name: str) -> None:
    outside = [i for i in indices if not e_bar[i] > bounds[i]]
    if outside:
        details = ", ".join(f"(Mx̄)_{i} = {e_bar[i]:.6g} ≤ {name}_{i} = {bounds[i]:.6g}" for i in outside)
        raise CertificateUnavailableError(f"x̄ is not inside Ω_Γ: {details}")


def _diagonal_semi_axes(ctx: ShiftedContext, k: float) -> Optional[np.ndarray]:
    if not is_diagonal(ctx.sys.M):
        return None
    return np.sqrt(2.0 * k / np.diag(ctx.sys.M))


def roa_general(ctx: ShiftedContext, refined: bool = False) -> RoaEstimate:
    """
    k_c = min_i (γ_i − (Mx̄)_i)² / (2 λ_M{M}).

    The literal index set covers every coordinate; ``refined`` restricts the
    minimum to the power channels, where Z(x) is nonzero.
    """
    sys = ctx.sys
    gamma = gamma_bounds(ctx)
    _require_strict_passivity(ctx)
    index_set = IndexSet.REFINED if refined else IndexSet.LITERAL
    indices = _indices(ctx, index_set)

    e_bar = grad_h(sys, ctx.x_bar)
    _require_inside(e_bar, gamma, indices, "γ")

    _, lam_max = sym_eig_extremes(sys.M)
    levels = [(gamma[i] - e_bar[i]) ** 2 / (2.0 * lam_max) for i in indices]
    j = int(np.argmin(levels))
    k = float(levels[j])
    logger.info(f"General certificate ({index_set.value}): k_c = {k:.6g} J, binding index {indices[j]}")
    return RoaEstimate(
        mode=RoaMode.GENERAL,
        x_bar=ctx.x_bar,
        level_k=k,
        gamma=gamma,
        ellipsoid_semi_axes=_diagonal_semi_axes(ctx, k),
        index_set=index_set,
        binding_index=indices[j],
    )


def roa_diagonal(ctx: ShiftedContext) -> RoaEstimate:
    """
    For diagonal M and R: k_d = min over power channels of S(ℓ^i), where ℓ^i
    is x̄ with coordinate i moved to the bound η_i / M_ii.
    """
    sys = ctx.sys
    if not (is_diagonal(sys.M) and is_diagonal(sys.R)):
        raise ModeUnavailableError("Diagonal certificate needs diagonal M and R; use roa_general")
    eta = eta_bounds(ctx)
    _require_strict_passivity(ctx)
    indices = _indices(ctx, IndexSet.REFINED)

    e_bar = grad_h(sys, ctx.x_bar)
    _require_inside(e_bar, eta, indices, "η")

    m_diag = np.diag(sys.M)
    levels = []
    for i in indices:
        corner = np.array(ctx.x_bar, dtype=float)
        corner[i] = eta[i] / m_diag[i]
        levels.append(shifted_hamiltonian(ctx, corner))
    j = int(np.argmin(levels))
    k = float(levels[j])
    logger.info(f"Diagonal certificate: k_d = {k:.6g} J, binding index {indices[j]}")
    return RoaEstimate(
        mode=RoaMode.DIAGONAL,
        x_bar=ctx.x_bar,
        level_k=k,
        eta=eta,
        ellipsoid_semi_axes=np.sqrt(2.0 * k / m_diag),
        index_set=IndexSet.REFINED,
        binding_index=indices[j],
    )


def q_min_single_port(p: SinglePortParams, q_bar_s: float) -> float:
    """Lowest certified capacitor charge q_min = P r_p C² / q̄_s."""
    if not q_bar_s > 0.0:
        raise InputError(f"q_bar_s must be positive, got {q_bar_s}")
    product = p.P * p.r_p * p.C ** 2
    q_min = product / q_bar_s
    if abs(q_min * q_bar_s - product) > Q_MIN_IDENTITY_RTOL * max(product, 1e-300):
        logger.warning(f"q_min identity check failed: {q_min * q_bar_s!r} vs {product!r}")
    return q_min


def sg_roa(p: SgParams, pair: EquilibriumPair) -> RoaEstimate:
    """Half-line {ω > ω̄_u}; without a low-speed equilibrium the whole of Ω⁺."""
    if pair.stable_candidate is None:
        raise CertificateUnavailableError("Generator has no real equilibrium")
    x_bar = pair.stable_candidate.x_bar
    if pair.unstable_candidate is None:
        threshold = 0.0
    else:
        threshold = float(pair.unstable_candidate.x_bar[0] / p.M_inertia)
    logger.info(f"Generator half-line certificate: ω > {threshold:.6g}")
    return RoaEstimate(mode=RoaMode.SG_HALF_LINE, x_bar=x_bar, threshold_omega=threshold)


def contains(est: RoaEstimate, ctx: ShiftedContext, x) -> bool:
    """Strict membership: S(x) < k, or ω > threshold for the half-line."""
    if not in_domain(ctx.sys, x):
        return False
    if est.mode is RoaMode.SG_HALF_LINE:
        return bool(grad_h(ctx.sys, x)[0] > est.threshold_omega)
    return shifted_hamiltonian(ctx, x) < est.level_k


def ellipsoid_principal_axes(est: RoaEstimate, ctx: ShiftedContext) -> PrincipalAxes:
    """Semi-axes √(2k/λ_j(M)) along the eigenvectors of M."""
    if not est.is_sublevel:
        raise ModeUnavailableError("Half-line certificates have no ellipsoid")
    eigvals, eigvecs = eigh(ctx.sys.M)
    return PrincipalAxes(semi_axes=np.sqrt(2.0 * est.level_k / eigvals), directions=eigvecs)


def bounding_box(est: RoaEstimate, ctx: ShiftedContext) -> np.ndarray:
    """Half-widths √(2k (M⁻¹)_ii) of the smallest box around the ellipsoid."""
    if not est.is_sublevel:
        raise ModeUnavailableError("Half-line certificates have no bounding box")
    m_inv = solve_linear(ctx.sys.M, np.eye(ctx.sys.n))
    return np.sqrt(2.0 * est.level_k * np.diag(m_inv))

