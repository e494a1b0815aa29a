from dataclasses import dataclass
from enum import Enum
from typing import Optional, Tuple

import numpy as np


class RoaMode(str, Enum):
    GENERAL = "general"
    DIAGONAL = "diagonal"
    SG_HALF_LINE = "half_line"


class IndexSet(str, Enum):
    """Coordinates the general level minimizes over."""
    LITERAL = "literal"   # every coordinate
    REFINED = "refined"   # power channels only


@dataclass(frozen=True, eq=False)
class RoaEstimate:
    """
    Sublevel certificate L_k = {x : S(x) < k}, or the half-line ω > threshold
    for the generator. level_k is None in the half-line mode.
    """
    mode: RoaMode
    x_bar: np.ndarray
    level_k: Optional[float] = None
    gamma: Optional[np.ndarray] = None
    eta: Optional[np.ndarray] = None
    ellipsoid_semi_axes: Optional[np.ndarray] = None
    threshold_omega: Optional[float] = None
    index_set: Optional[IndexSet] = None
    binding_index: Optional[int] = None

    @property
    def is_sublevel(self) -> bool:
        return self.mode is not RoaMode.SG_HALF_LINE

    def to_dict(self) -> dict:
        def _list(a: Optional[np.ndarray]):
            return None if a is None else a.tolist()

        return {
            "mode": self.mode.value,
            "level_k": self.level_k,
            "x_bar": self.x_bar.tolist(),
            "gamma": _list(self.gamma),
            "eta": _list(self.eta),
            "ellipsoid_semi_axes": _list(self.ellipsoid_semi_axes),
            "threshold_omega": self.threshold_omega,
            "index_set": None if self.index_set is None else self.index_set.value,
            "binding_index": self.binding_index,
        }


@dataclass(frozen=True, eq=False)
class PrincipalAxes:
    semi_axes: np.ndarray
    directions: np.ndarray   # columns are unit eigenvectors of M

    def as_pairs(self) -> Tuple[Tuple[float, np.ndarray], ...]:
        return tuple((float(a), self.directions[:, j]) for j, a in enumerate(self.semi_axes))
