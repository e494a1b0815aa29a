import logging
from typing import Tuple

import numpy as np

from pwhlab.equilibrium.schema import Equilibrium, StabilityClass
from pwhlab.errors import NumericError
from pwhlab.model.system import PwhSystem, check_state, equilibrium_tolerance, jacobian, residual_norm
from pwhlab.numkernel import pd_tolerance, spectral_abscissa, sym_eig_extremes
from pwhlab.shifted import ShiftedContext, r_plus_z

logger = logging.getLogger(__name__)

ABSCISSA_MARGIN = 1e-8


def _stability_data(sys: PwhSystem, x_bar: np.ndarray) -> Tuple[StabilityClass, float, float]:
    ctx = ShiftedContext(sys, x_bar)
    rz = r_plus_z(ctx, x_bar)
    lam_min, _ = sym_eig_extremes(rz)
    abscissa = spectral_abscissa(jacobian(sys, x_bar))

    if lam_min > pd_tolerance(rz):
        tag = StabilityClass.SHIFTED_PASSIVE_STABLE
    elif abscissa > ABSCISSA_MARGIN:
        tag = StabilityClass.UNSTABLE
    elif abscissa < -ABSCISSA_MARGIN:
        # Stable, but outside the shifted-passivity certificate
        tag = StabilityClass.LINEARLY_STABLE
    else:
        tag = StabilityClass.INCONCLUSIVE
    return tag, lam_min, abscissa


def classify(sys: PwhSystem, eq: Equilibrium) -> StabilityClass:
    """
    ShiftedPassiveStable if R + Z(x̄) > 0; otherwise decided by the sign of
    the spectral abscissa of the Jacobian, Inconclusive within ±1e-8.
    """
    tag, _, _ = _stability_data(sys, eq.x_bar)
    return tag


def make_equilibrium(sys: PwhSystem, x_bar) -> Equilibrium:
    """Wrap a residual-checked state as a classified Equilibrium."""
    x_bar = check_state(sys, x_bar)
    residual = residual_norm(sys, x_bar)
    tol = equilibrium_tolerance(sys)
    if residual > tol:
        raise NumericError(f"State is not an equilibrium: residual {residual:.3e} > {tol:.3e}")

    tag, lam_min, abscissa = _stability_data(sys, x_bar)
    logger.debug(f"Equilibrium {x_bar.tolist()}: {tag.value} (λ_min(R+Z)={lam_min:.4g}, abscissa={abscissa:.4g})")
    x_bar.setflags(write=False)
    return Equilibrium(
        x_bar=x_bar,
        residual=residual,
        classification=tag,
        r_plus_z_min_eig=lam_min,
        spectral_abscissa=abscissa,
    )
