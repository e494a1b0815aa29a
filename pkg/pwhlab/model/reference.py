"""Reference parameter sets used by examples, docs and acceptance tests."""

import math

from pwhlab.model.schema import SgParams, SinglePortParams

# 24 V source, 78 uH / 2 mF filter, 1 kW constant power load
REFERENCE_CIRCUIT = SinglePortParams(v_g=24.0, r_l=0.04, r_p=0.1, L=78e-6, C=2e-3, P=1000.0)

# Quoted stability limit for REFERENCE_CIRCUIT; the closed-form bound gives 1777.78 W
REFERENCE_STATED_P_S_MAX = 2330.0

# Generator set as printed (omega* at 50 Hz); it has no real equilibrium
PRINTED_SG_SET = SgParams(M=0.2, D_m=1e-6, D_d=1e-4, tau_m=0.0027, omega_star=100.0 * math.pi, P_e=3.0)

# Same machine with a lighter load, which admits both equilibria
CONSISTENT_SG_SET = SgParams(M=0.2, D_m=1e-6, D_d=1e-4, tau_m=0.0027, omega_star=100.0 * math.pi, P_e=2.5)


def is_reference_circuit(p: SinglePortParams) -> bool:
    return all(
        math.isclose(getattr(p, name), getattr(REFERENCE_CIRCUIT, name), rel_tol=1e-12)
        for name in ("v_g", "r_l", "r_p", "L", "C", "P", "i_load")
    )
