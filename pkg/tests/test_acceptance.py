"""Desk-scale reproductions of the reference studies, end to end."""

import numpy as np
import pytest

from pwhlab.equilibrium import initial_guess, solve_newton
from pwhlab.model import in_domain, load_model_file, vector_field
from pwhlab.pipelines import run_analysis
from pwhlab.roa import q_min_single_port, roa_diagonal, roa_general, sg_roa
from pwhlab.shifted import ShiftedContext, in_omega_p, shifted_hamiltonian, shifted_rhs
from pwhlab.sim import (
    IcClass,
    classify_samples,
    integrate,
    monitor_passivity,
    sample_certificate,
    simulate_ic,
    validate_roa,
)

from conftest import model_path


def _newton_ctx(sys):
    return ShiftedContext(sys, solve_newton(sys, initial_guess(sys)).x_bar)


def test_reference_certificate_has_no_counterexamples(circuit_sys, circuit_pair, circuit_ctx):
    report = validate_roa(circuit_sys, circuit_pair.stable_candidate, roa_diagonal(circuit_ctx), 200, seed=2024)
    assert report.n_converged == 200
    assert report.counterexamples == []


def test_some_states_below_q_min_collapse(circuit_sys, circuit_pair, circuit, circuit_ctx):
    q_min = q_min_single_port(circuit, circuit_ctx.x_bar[1])
    rng = np.random.default_rng(11)
    samples = np.column_stack([
        rng.uniform(0.0, 2.0 * circuit_ctx.x_bar[0], size=100),
        rng.uniform(0.05 * q_min, 0.95 * q_min, size=100),
    ])
    assert not any(in_omega_p(circuit_ctx, x) for x in samples)
    tags = [tag for tag, _ in classify_samples(circuit_sys, circuit_pair.stable_candidate, samples)]
    assert tags.count(IcClass.DIVERGED) >= 1


def test_shifted_form_matches_vector_field_for_every_builder(circuit_ctx, sg_sys, sg_pair, multiport_sys, rng):
    contexts = [circuit_ctx, ShiftedContext(sg_sys, sg_pair.stable_candidate.x_bar), _newton_ctx(multiport_sys)]
    for ctx in contexts:
        for _ in range(100):
            x = ctx.x_bar * rng.uniform(0.2, 2.0, size=ctx.sys.n)
            assert in_domain(ctx.sys, x)
            f = vector_field(ctx.sys, x)
            g = shifted_rhs(ctx, x)
            assert np.linalg.norm(g - f) <= 1e-12 * max(1.0, np.linalg.norm(f)), ctx.sys.label


def test_passivity_over_seeded_trajectories(circuit_sys, circuit_ctx):
    def step_load(t):
        return [0.0, -1000.0] if t < 5e-3 else [0.0, -1050.0]

    est = roa_diagonal(circuit_ctx)
    starts = sample_certificate(est, circuit_ctx, 10, np.random.default_rng(5))
    for i, x0 in enumerate(starts):
        signal = None if i % 2 == 0 else step_load
        traj = integrate(circuit_sys, x0, 0.02, x_bar=circuit_ctx.x_bar, u_signal=signal)
        report = monitor_passivity(circuit_ctx, traj, signal)
        assert report.passive, (i, report.max_violation)
        if signal is None:
            assert np.all(np.diff(traj.s_values) <= 1e-9)


def test_sublevel_inclusion_at_scale(circuit_ctx, multiport_sys):
    rng = np.random.default_rng(8)
    mp_ctx = _newton_ctx(multiport_sys)
    cases = [(roa_diagonal(circuit_ctx), circuit_ctx), (roa_general(mp_ctx), mp_ctx), (roa_diagonal(mp_ctx), mp_ctx)]
    for est, ctx in cases:
        samples = sample_certificate(est, ctx, 10_000, rng)
        outside = [x for x in samples if not in_omega_p(ctx, x)]
        assert outside == [], est.mode
        assert all(shifted_hamiltonian(ctx, x) < est.level_k for x in samples[:100])


def test_general_level_never_exceeds_diagonal(multiport_sys):
    ctx = _newton_ctx(multiport_sys)
    assert roa_general(ctx).level_k <= roa_diagonal(ctx).level_k


def test_generator_fates_and_forward_invariance(sg_sys, sg_pair, sg_params):
    eq = sg_pair.stable_candidate
    m = sg_params.M_inertia
    w_s = eq.x_bar[0] / m
    w_u = sg_pair.unstable_candidate.x_bar[0] / m
    assert sg_roa(sg_params, sg_pair).threshold_omega == pytest.approx(w_u)

    for w0 in np.linspace(w_u + 0.5, 1.99 * w_s, 6):
        tag, traj = simulate_ic(sg_sys, eq, [m * w0])
        assert tag is IcClass.CONVERGED, w0
        assert np.all(traj.states[:, 0] / m > w_u)

    for w0 in np.linspace(5.0, w_u - 0.5, 4):
        tag, _ = simulate_ic(sg_sys, eq, [m * w0])
        assert tag is IcClass.DIVERGED, w0


def test_analysis_is_reproducible():
    doc, sys = load_model_file(model_path("reference_circuit.json"))
    first = run_analysis(doc, sys, validate=5, seed=42)
    second = run_analysis(doc, sys, validate=5, seed=42)
    assert first.model_dump_json() == second.model_dump_json()
    assert first.power_limits.p_e_max == pytest.approx(2571.43, abs=0.01)
    assert first.power_limits.p_s_max_formula == pytest.approx(1777.78, abs=0.01)
