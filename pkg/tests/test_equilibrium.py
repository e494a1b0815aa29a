import math

import numpy as np
import pytest

from pwhlab.equilibrium import (
    StabilityClass,
    classify,
    initial_guess,
    make_equilibrium,
    p_max_existence,
    p_max_stability_formula,
    p_max_stability_numeric,
    power_limits,
    sg_equilibria,
    single_port_equilibria,
    solve_newton,
    stable_margin,
)
from pwhlab.errors import DomainError, NumericError
from pwhlab.model import build_single_port, in_domain, residual_norm
from pwhlab.model.reference import PRINTED_SG_SET, REFERENCE_CIRCUIT

V_S = (24.0 + math.sqrt(352.0)) / 2.8
V_U = 40.0 / (1.4 * V_S)


# --- SINGLE-PORT CLOSED FORM ---

def test_reference_equilibria(circuit_pair, circuit):
    s, u = circuit_pair.stable_candidate, circuit_pair.unstable_candidate
    assert s.x_bar[1] / circuit.C == pytest.approx(V_S, rel=1e-12)
    assert u.x_bar[1] / circuit.C == pytest.approx(V_U, rel=1e-12)
    assert s.x_bar[1] == pytest.approx(0.030544, rel=1e-4)
    assert s.x_bar[0] / circuit.L == pytest.approx((24.0 - V_S) / 0.04, rel=1e-12)
    assert circuit_pair.discriminant == pytest.approx(352.0, rel=1e-12)
    assert circuit_pair.p_e_max == pytest.approx(2571.43, abs=0.01)


def test_reference_equilibria_are_residual_checked(circuit_pair, circuit_sys):
    for eq in (circuit_pair.stable_candidate, circuit_pair.unstable_candidate):
        assert residual_norm(circuit_sys, eq.x_bar) < 1e-9
        assert eq.residual < 1e-9


def test_reference_classification(circuit_pair):
    s, u = circuit_pair.stable_candidate, circuit_pair.unstable_candidate
    assert s.classification is StabilityClass.SHIFTED_PASSIVE_STABLE
    assert s.spectral_abscissa < 0.0
    assert u.classification is StabilityClass.UNSTABLE
    assert u.spectral_abscissa > 0.0


def test_stable_point_power_balance(circuit_pair, circuit):
    x = circuit_pair.stable_candidate.x_bar
    i, v = x[0] / circuit.L, x[1] / circuit.C
    assert v * (i - v / circuit.r_p) == pytest.approx(circuit.P, rel=1e-6)


def test_no_equilibrium_above_existence_limit(circuit):
    pair = single_port_equilibria(circuit.model_copy(update={"P": 2600.0}))
    assert not pair.exists
    assert pair.discriminant < 0.0


def test_double_root_at_existence_limit(circuit):
    pair = single_port_equilibria(circuit.model_copy(update={"P": p_max_existence(circuit)}))
    assert pair.exists
    assert pair.stable_candidate.x_bar == pytest.approx(pair.unstable_candidate.x_bar, rel=1e-6)


def test_zero_load_keeps_only_high_branch(circuit):
    pair = single_port_equilibria(circuit.model_copy(update={"P": 0.0}))
    assert pair.unstable_candidate is None
    assert pair.stable_candidate.x_bar[1] / circuit.C == pytest.approx(24.0 / 1.4, rel=1e-12)
    assert pair.stable_candidate.classification is StabilityClass.SHIFTED_PASSIVE_STABLE


def test_zip_current_sink(circuit):
    p = circuit.model_copy(update={"i_load": 20.0})
    pair = single_port_equilibria(p)
    sys = build_single_port(p)
    v_s = pair.stable_candidate.x_bar[1] / p.C
    assert 1.4 * v_s ** 2 - p.v_eff * v_s + 0.04 * p.P == pytest.approx(0.0, abs=1e-9)
    assert residual_norm(sys, pair.stable_candidate.x_bar) < 1e-9
    assert pair.p_e_max < p_max_existence(circuit)


# --- GENERATOR CLOSED FORM ---

def test_generator_equilibria(sg_pair, sg_params, sg_sys):
    w_s = sg_pair.stable_candidate.x_bar[0] / sg_params.M_inertia
    w_u = sg_pair.unstable_candidate.x_bar[0] / sg_params.M_inertia
    assert w_s == pytest.approx(230.31, abs=0.05)
    assert w_u == pytest.approx(107.48, abs=0.05)
    assert residual_norm(sg_sys, sg_pair.stable_candidate.x_bar) < 1e-12 * (1 + abs(sg_sys.u_c[0]))
    assert sg_pair.stable_candidate.classification is StabilityClass.SHIFTED_PASSIVE_STABLE
    assert sg_pair.unstable_candidate.classification is StabilityClass.UNSTABLE


def test_printed_generator_set_has_no_equilibrium():
    assert not sg_equilibria(PRINTED_SG_SET).exists
    unit_speed = PRINTED_SG_SET.model_copy(update={"omega_star": 1.0})
    assert not sg_equilibria(unit_speed).exists


def test_generator_without_load(sg_params):
    pair = sg_equilibria(sg_params.model_copy(update={"P_e": 0.0}))
    assert pair.unstable_candidate is None
    assert pair.stable_candidate.x_bar[0] / sg_params.M_inertia == pytest.approx(sg_params.drive / sg_params.damping)


# --- NEWTON ---

def test_newton_agrees_with_closed_form(circuit_sys, circuit_pair, rng):
    """Random starts around either branch each land on one of the closed-form roots."""
    roots = [circuit_pair.stable_candidate.x_bar, circuit_pair.unstable_candidate.x_bar]
    for k in range(50):
        branch = roots[k % 2]
        start = np.array([branch[0] * rng.uniform(0.5, 1.5), branch[1] * rng.uniform(0.7, 1.3)])
        assert in_domain(circuit_sys, start)
        eq = solve_newton(circuit_sys, start)
        distance = min(np.linalg.norm(eq.x_bar - x) / np.linalg.norm(x) for x in roots)
        assert distance <= 1e-8, start


def test_newton_near_low_voltage_branch(circuit_sys, circuit_pair):
    x_u = circuit_pair.unstable_candidate.x_bar
    eq = solve_newton(circuit_sys, x_u * np.array([1.0, 1.1]))
    assert np.linalg.norm(eq.x_bar - x_u) <= 1e-8 * np.linalg.norm(x_u)
    assert eq.classification is StabilityClass.UNSTABLE
    assert eq.spectral_abscissa > 0.0


def test_newton_from_documented_start(circuit_sys, circuit):
    eq = solve_newton(circuit_sys, [0.01, 0.05])
    v = eq.x_bar[1] / circuit.C
    i = eq.x_bar[0] / circuit.L
    assert v == pytest.approx(V_S, rel=1e-9)
    assert i == pytest.approx(218.2, abs=0.1)
    assert v * (i - v / circuit.r_p) == pytest.approx(circuit.P, rel=1e-6)


def test_newton_on_multiport(multiport_sys):
    x0 = initial_guess(multiport_sys)
    assert in_domain(multiport_sys, x0)
    eq = solve_newton(multiport_sys, x0)
    assert eq.residual < 1e-8 * (1 + 48.0)
    v = eq.x_bar[2:] * 1e3
    assert np.all(v > 20.0)
    assert eq.classification is StabilityClass.SHIFTED_PASSIVE_STABLE


def test_newton_start_outside_domain(circuit_sys):
    with pytest.raises(DomainError):
        solve_newton(circuit_sys, [0.01, -0.01])


def test_newton_fails_without_equilibrium(circuit):
    sys = build_single_port(circuit.model_copy(update={"P": 3000.0}))
    with pytest.raises((NumericError, DomainError)):
        solve_newton(sys, [0.015, 0.02])


def test_make_equilibrium_rejects_non_equilibrium(circuit_sys):
    with pytest.raises(NumericError):
        make_equilibrium(circuit_sys, [0.015, 0.03])


def test_classify_matches_stored_tag(circuit_sys, circuit_pair):
    eq = circuit_pair.stable_candidate
    assert classify(circuit_sys, eq) is eq.classification


# --- POWER LIMITS ---

def test_existence_limit():
    assert p_max_existence(REFERENCE_CIRCUIT) == pytest.approx(2571.43, abs=0.01)


def test_stability_formula_as_printed():
    assert p_max_stability_formula(REFERENCE_CIRCUIT) == pytest.approx(1777.78, abs=0.01)


def test_numeric_stability_limit():
    bound = p_max_stability_numeric(REFERENCE_CIRCUIT)
    assert not bound.saturated
    assert bound.value == pytest.approx(1777.78, abs=0.01)


def test_stable_margin_changes_sign(circuit):
    assert stable_margin(circuit.model_copy(update={"P": 1700.0})) > 0.0
    assert stable_margin(circuit.model_copy(update={"P": 1850.0})) < 0.0
    assert stable_margin(circuit.model_copy(update={"P": 2600.0})) is None


def test_power_limits_report_discrepancy():
    limits = power_limits(REFERENCE_CIRCUIT)
    assert limits.p_s_max_stated == 2330.0
    assert len(limits.discrepancies) == 1
    assert "stated" in limits.discrepancies[0]


def test_power_limits_without_stated_value(circuit):
    limits = power_limits(circuit.model_copy(update={"P": 500.0}))
    assert limits.p_s_max_stated is None
    assert limits.discrepancies == []


def test_limits_vanish_when_current_sink_exceeds_source(circuit):
    """i_load·r_ℓ = 28 V > v_g leaves no positive source voltage at any load."""
    sunk = circuit.model_copy(update={"i_load": 700.0})
    assert sunk.v_eff == pytest.approx(-4.0)
    assert p_max_existence(sunk) == 0.0
    assert p_max_stability_formula(sunk) == 0.0
    bound = p_max_stability_numeric(sunk)
    assert bound.value == 0.0 and not bound.saturated
    assert not single_port_equilibria(sunk.model_copy(update={"P": 0.0})).exists
    limits = power_limits(sunk)
    assert limits.p_e_max == 0.0
    assert limits.discrepancies == []


def test_substitution_check_is_absolute(circuit_sys, circuit_pair):
    for eq in (circuit_pair.stable_candidate, circuit_pair.unstable_candidate):
        assert residual_norm(circuit_sys, eq.x_bar) <= 1e-10
        assert eq.residual <= 1e-10
