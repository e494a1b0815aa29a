from pwhlab.shifted.context import (
    ShiftedContext,
    dissipation_rate,
    eta_bounds,
    gamma_bounds,
    grad_s,
    in_omega_gamma,
    in_omega_p,
    in_omega_p_closure,
    is_power_source_system,
    output_y,
    r_plus_z,
    shifted_hamiltonian,
    shifted_rhs,
    supply_rate,
    z_gains,
    z_matrix,
)

__all__ = [
    "ShiftedContext",
    "dissipation_rate",
    "eta_bounds",
    "gamma_bounds",
    "grad_s",
    "in_omega_gamma",
    "in_omega_p",
    "in_omega_p_closure",
    "is_power_source_system",
    "output_y",
    "r_plus_z",
    "shifted_hamiltonian",
    "shifted_rhs",
    "supply_rate",
    "z_gains",
    "z_matrix",
]
