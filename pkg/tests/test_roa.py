import numpy as np
import pytest

from pwhlab.equilibrium import initial_guess, sg_equilibria, single_port_equilibria, solve_newton
from pwhlab.errors import CertificateUnavailableError, InputError, ModeUnavailableError
from pwhlab.model import PwhSystem, build_single_port
from pwhlab.model.reference import PRINTED_SG_SET
from pwhlab.roa import (
    IndexSet,
    RoaMode,
    bounding_box,
    contains,
    ellipsoid_principal_axes,
    q_min_single_port,
    roa_diagonal,
    roa_general,
    sg_roa,
)
from pwhlab.shifted import ShiftedContext, in_omega_p, shifted_hamiltonian

K_D_REFERENCE = 0.07611
Q_MIN_REFERENCE = 0.013096


def _multiport_ctx(sys):
    eq = solve_newton(sys, initial_guess(sys))
    return ShiftedContext(sys, eq.x_bar)


def _sublevel_samples(est, ctx, rng, count):
    """Uniform points of L_k by rejection in the bounding box."""
    half = bounding_box(est, ctx)
    out = []
    while len(out) < count:
        x = ctx.x_bar + rng.uniform(-1.0, 1.0, size=ctx.sys.n) * half
        if contains(est, ctx, x):
            out.append(x)
    return np.array(out)


# --- DIAGONAL CERTIFICATE ---

def test_reference_diagonal_certificate(circuit_ctx, circuit):
    est = roa_diagonal(circuit_ctx)
    assert est.mode is RoaMode.DIAGONAL
    assert est.level_k == pytest.approx(K_D_REFERENCE, rel=1e-3)
    q_bar = circuit_ctx.x_bar[1]
    q_min = q_min_single_port(circuit, q_bar)
    assert q_min == pytest.approx(Q_MIN_REFERENCE, rel=1e-3)
    assert est.level_k == pytest.approx((q_min - q_bar) ** 2 / (2.0 * circuit.C), rel=1e-10)
    assert est.binding_index == 1
    assert est.ellipsoid_semi_axes == pytest.approx(
        [np.sqrt(2.0 * circuit.L * est.level_k), np.sqrt(2.0 * circuit.C * est.level_k)], rel=1e-12
    )


def test_diagonal_certificate_without_load(circuit):
    p = circuit.model_copy(update={"P": 0.0})
    pair = single_port_equilibria(p)
    ctx = ShiftedContext(build_single_port(p), pair.stable_candidate.x_bar)
    est = roa_diagonal(ctx)
    q_bar = ctx.x_bar[1]
    assert est.level_k == pytest.approx(q_bar ** 2 / (2.0 * circuit.C), rel=1e-12)


def test_diagonal_mode_needs_diagonal_matrices(coupled_sys):
    with pytest.raises(ModeUnavailableError):
        roa_diagonal(_multiport_ctx(coupled_sys))


def test_no_certificate_beyond_stability_limit(circuit):
    p = circuit.model_copy(update={"P": 2000.0})
    pair = single_port_equilibria(p)
    ctx = ShiftedContext(build_single_port(p), pair.stable_candidate.x_bar)
    with pytest.raises(CertificateUnavailableError):
        roa_diagonal(ctx)
    # q_min ≥ q̄_s exactly when strict passivity fails
    assert q_min_single_port(p, ctx.x_bar[1]) >= ctx.x_bar[1]


def test_q_min_equivalence_with_passivity(circuit):
    for load in np.linspace(100.0, 2500.0, 20):
        p = circuit.model_copy(update={"P": float(load)})
        eq = single_port_equilibria(p).stable_candidate
        q_bar = eq.x_bar[1]
        assert (q_min_single_port(p, q_bar) < q_bar) == (eq.r_plus_z_min_eig > 0.0), load


def test_q_min_edge_cases(circuit):
    assert q_min_single_port(circuit.model_copy(update={"P": 0.0}), 0.03) == 0.0
    with pytest.raises(InputError):
        q_min_single_port(circuit, 0.0)


def test_certificate_shrinks_with_load(circuit):
    levels = []
    for load in np.linspace(50.0, 1770.0, 20):
        p = circuit.model_copy(update={"P": float(load)})
        pair = single_port_equilibria(p)
        ctx = ShiftedContext(build_single_port(p), pair.stable_candidate.x_bar)
        levels.append(roa_diagonal(ctx).level_k)
    assert all(a >= b for a, b in zip(levels, levels[1:]))


# --- GENERAL CERTIFICATE ---

def test_general_certificate_unavailable_on_reference(circuit_ctx):
    """λ_m{R} = r_ℓ pushes γ₂ to about 1.6 kV, so x̄ is outside Ω_Γ."""
    with pytest.raises(CertificateUnavailableError):
        roa_general(circuit_ctx)
    with pytest.raises(CertificateUnavailableError):
        roa_general(circuit_ctx, refined=True)


def test_general_certificate_on_multiport(multiport_sys):
    ctx = _multiport_ctx(multiport_sys)
    literal = roa_general(ctx)
    refined = roa_general(ctx, refined=True)
    diagonal = roa_diagonal(ctx)
    assert literal.index_set is IndexSet.LITERAL
    assert refined.index_set is IndexSet.REFINED
    assert 0.0 < literal.level_k <= refined.level_k
    assert literal.level_k <= diagonal.level_k
    e_bar = multiport_sys.M @ ctx.x_bar
    expected = min(e_bar[:2] ** 2) / (2.0 * 1e3)
    assert literal.level_k == pytest.approx(expected, rel=1e-12)
    assert literal.binding_index == 1


def test_general_certificate_without_load():
    """With ū = 0 the level is min_i (Mx̄)_i² / (2 λ_M{M})."""
    sys = PwhSystem(
        J=[[0.0, -1.0], [1.0, 0.0]],
        R=[[1.0, 0.0], [0.0, 2.0]],
        M=[[2.0, 0.0], [0.0, 4.0]],
        power_channels=(1,),
        u_bar=[0.0, 0.0],
        u_c=[5.0, 0.0],
    )
    x_bar = solve_newton(sys, [1.0, 0.5]).x_bar
    ctx = ShiftedContext(sys, x_bar)
    e_bar = sys.M @ x_bar
    est = roa_general(ctx)
    assert est.level_k == pytest.approx(min(e_bar ** 2) / 8.0, rel=1e-10)
    assert roa_diagonal(ctx).level_k == pytest.approx(4.0 * x_bar[1] ** 2 / 2.0, rel=1e-10)


def test_general_certificate_nondiagonal(coupled_sys):
    ctx = _multiport_ctx(coupled_sys)
    est = roa_general(ctx)
    assert np.isfinite(est.level_k) and est.level_k > 0.0
    assert est.ellipsoid_semi_axes is not None   # M is still diagonal


def test_empty_refined_index_set():
    sys = PwhSystem(J=[[0.0]], R=[[1.0]], M=[[1.0]], power_channels=(), u_bar=[0.0], u_c=[1.0])
    ctx = ShiftedContext(sys, np.array([1.0]))
    assert roa_general(ctx).level_k == pytest.approx(0.5)
    with pytest.raises(CertificateUnavailableError):
        roa_general(ctx, refined=True)


# --- SOUNDNESS AND GEOMETRY ---

def test_sublevel_sets_stay_in_strict_passivity_region(circuit_ctx, multiport_sys, coupled_sys, rng):
    certificates = [(roa_diagonal(circuit_ctx), circuit_ctx)]
    for sys in (multiport_sys, coupled_sys):
        ctx = _multiport_ctx(sys)
        certificates.append((roa_general(ctx), ctx))
    ctx = _multiport_ctx(multiport_sys)
    certificates.append((roa_diagonal(ctx), ctx))

    for est, ctx in certificates:
        for x in _sublevel_samples(est, ctx, rng, 1000):
            assert in_omega_p(ctx, x), (est.mode, x)


def test_contains_is_strict(circuit_ctx):
    est = roa_diagonal(circuit_ctx)
    assert contains(est, circuit_ctx, circuit_ctx.x_bar)
    corner = circuit_ctx.x_bar.copy()
    corner[1] = circuit_ctx.x_bar[1] - est.ellipsoid_semi_axes[1]
    assert shifted_hamiltonian(circuit_ctx, corner) == pytest.approx(est.level_k, rel=1e-12)
    shrunk = circuit_ctx.x_bar.copy()
    shrunk[1] = circuit_ctx.x_bar[1] - 0.999 * est.ellipsoid_semi_axes[1]
    outside = circuit_ctx.x_bar.copy()
    outside[1] = circuit_ctx.x_bar[1] - 1.001 * est.ellipsoid_semi_axes[1]
    assert contains(est, circuit_ctx, shrunk)
    assert not contains(est, circuit_ctx, outside)


def test_ellipsoid_identity(circuit_ctx, rng):
    est = roa_diagonal(circuit_ctx)
    half = 1.5 * bounding_box(est, circuit_ctx)
    for _ in range(1000):
        x = circuit_ctx.x_bar + rng.uniform(-1.0, 1.0, size=2) * half
        ratio = float(np.sum(((x - circuit_ctx.x_bar) / est.ellipsoid_semi_axes) ** 2))
        s_ratio = shifted_hamiltonian(circuit_ctx, x) / est.level_k
        assert ratio == pytest.approx(s_ratio, rel=1e-12)
        if abs(ratio - 1.0) > 1e-12:
            assert contains(est, circuit_ctx, x) == (ratio < 1.0)


def test_principal_axes_match_diagonal_semi_axes(circuit_ctx):
    est = roa_diagonal(circuit_ctx)
    axes = ellipsoid_principal_axes(est, circuit_ctx)
    assert sorted(axes.semi_axes) == pytest.approx(sorted(est.ellipsoid_semi_axes), rel=1e-12)
    assert bounding_box(est, circuit_ctx) == pytest.approx(est.ellipsoid_semi_axes, rel=1e-12)


# --- GENERATOR ---

def test_generator_half_line(sg_params, sg_pair, sg_sys):
    est = sg_roa(sg_params, sg_pair)
    assert est.mode is RoaMode.SG_HALF_LINE
    assert est.level_k is None
    assert est.threshold_omega == pytest.approx(107.48, abs=0.05)
    ctx = ShiftedContext(sg_sys, sg_pair.stable_candidate.x_bar)
    assert contains(est, ctx, np.array([0.2 * 108.0]))
    assert not contains(est, ctx, np.array([0.2 * 107.0]))


def test_generator_half_line_without_load(sg_params):
    p = sg_params.model_copy(update={"P_e": 0.0})
    est = sg_roa(p, sg_equilibria(p))
    assert est.threshold_omega == 0.0


def test_generator_without_equilibrium():
    with pytest.raises(CertificateUnavailableError):
        sg_roa(PRINTED_SG_SET, sg_equilibria(PRINTED_SG_SET))
