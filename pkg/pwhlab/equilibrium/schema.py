from dataclasses import dataclass
from enum import Enum
from typing import Optional

import numpy as np


class StabilityClass(str, Enum):
    SHIFTED_PASSIVE_STABLE = "ShiftedPassiveStable"
    LINEARLY_STABLE = "LinearlyStable"
    UNSTABLE = "Unstable"
    INCONCLUSIVE = "Inconclusive"


@dataclass(frozen=True, eq=False)
class Equilibrium:
    x_bar: np.ndarray
    residual: float
    classification: StabilityClass
    r_plus_z_min_eig: float
    spectral_abscissa: float

    def to_dict(self) -> dict:
        return {
            "x_bar": self.x_bar.tolist(),
            "residual": self.residual,
            "classification": self.classification.value,
            "r_plus_z_min_eig": self.r_plus_z_min_eig,
            "spectral_abscissa": self.spectral_abscissa,
        }


@dataclass(frozen=True, eq=False)
class EquilibriumPair:
    """
    High-energy (s) and low-energy (u) branches of a two-root steady state.
    Both are absent when the discriminant is negative.
    """
    stable_candidate: Optional[Equilibrium]
    unstable_candidate: Optional[Equilibrium]
    discriminant: float
    p_e_max: Optional[float] = None

    @property
    def exists(self) -> bool:
        return self.stable_candidate is not None or self.unstable_candidate is not None
