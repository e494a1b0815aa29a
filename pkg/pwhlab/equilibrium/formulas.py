from pwhlab.model.schema import SinglePortParams


def p_max_existence(p: SinglePortParams) -> float:
    """
    Largest load with a real equilibrium: r_p v_eff² / (4 r_ℓ (r_ℓ + r_p)).
    Zero when the current sink leaves no positive source voltage (v_eff ≤ 0).
    """
    if p.v_eff <= 0.0:
        return 0.0
    return p.r_p * p.v_eff ** 2 / (4.0 * p.r_l * (p.r_l + p.r_p))


def p_max_stability_formula(p: SinglePortParams) -> float:
    """Closed-form stability bound r_p v_eff² / (r_p + 2 r_ℓ)², reported as printed."""
    if p.v_eff <= 0.0:
        return 0.0
    return p.r_p * p.v_eff ** 2 / (p.r_p + 2.0 * p.r_l) ** 2
