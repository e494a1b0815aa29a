from pwhlab.equilibrium.classify import classify, make_equilibrium
from pwhlab.equilibrium.closed_form import sg_equilibria, single_port_equilibria
from pwhlab.equilibrium.formulas import p_max_existence, p_max_stability_formula
from pwhlab.equilibrium.newton import initial_guess, solve_newton
from pwhlab.equilibrium.power_limits import (
    NumericBound,
    PowerLimits,
    p_max_stability_numeric,
    power_limits,
    stable_margin,
)
from pwhlab.equilibrium.schema import Equilibrium, EquilibriumPair, StabilityClass

__all__ = [
    "Equilibrium",
    "EquilibriumPair",
    "NumericBound",
    "PowerLimits",
    "StabilityClass",
    "classify",
    "initial_guess",
    "make_equilibrium",
    "p_max_existence",
    "p_max_stability_numeric",
    "p_max_stability_formula",
    "power_limits",
    "sg_equilibria",
    "single_port_equilibria",
    "solve_newton",
    "stable_margin",
]
