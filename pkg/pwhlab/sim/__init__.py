from pwhlab.sim.integrator import integrate, integrator_order_study, s_values
from pwhlab.sim.monitor import monitor_passivity
from pwhlab.sim.schema import IcClass, PassivityReport, RoaValidationReport, StopReason, Trajectory
from pwhlab.sim.validation import (
    classify_ic,
    classify_samples,
    default_t_max,
    sample_certificate,
    simulate_ic,
    validate_roa,
)

__all__ = [
    "IcClass",
    "PassivityReport",
    "RoaValidationReport",
    "StopReason",
    "Trajectory",
    "classify_ic",
    "classify_samples",
    "default_t_max",
    "integrate",
    "integrator_order_study",
    "monitor_passivity",
    "s_values",
    "sample_certificate",
    "simulate_ic",
    "validate_roa",
]
