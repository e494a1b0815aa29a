from dataclasses import dataclass, field
from enum import Enum
from typing import List, Optional, Tuple

import numpy as np


class StopReason(str, Enum):
    REACHED_T_END = "ReachedTEnd"
    CONVERGED = "Converged"
    LEFT_DOMAIN = "LeftDomain"
    STEP_UNDERFLOW = "StepUnderflow"
    DIVERGED = "Diverged"


class IcClass(str, Enum):
    """Fate of one initial condition."""
    CONVERGED = "converged"
    DIVERGED = "diverged"
    TIMEOUT = "timeout"


@dataclass(frozen=True, eq=False)
class Trajectory:
    """
    Accepted steps of one integration. Every state lies in Ω⁺ except
    possibly the last one when stop_reason is LeftDomain.
    """
    times: np.ndarray
    states: np.ndarray   # shape (len(times), n)
    stop_reason: StopReason
    s_values: Optional[np.ndarray] = None
    n_steps: int = 0
    message: str = ""

    @property
    def t_stop(self) -> float:
        return float(self.times[-1])

    @property
    def final_state(self) -> np.ndarray:
        return self.states[-1]


@dataclass(frozen=True)
class RoaValidationReport:
    n_samples: int
    n_converged: int
    n_diverged: int
    n_timeout: int
    counterexamples: List[Tuple[float, ...]] = field(default_factory=list)
    boundary_margin: float = 0.0
    t_max: float = 0.0
    seed: Optional[int] = None

    @property
    def sound(self) -> bool:
        return not self.counterexamples

    def to_dict(self) -> dict:
        return {
            "n_samples": self.n_samples,
            "n_converged": self.n_converged,
            "n_diverged": self.n_diverged,
            "n_timeout": self.n_timeout,
            "counterexamples": [list(c) for c in self.counterexamples],
            "boundary_margin": self.boundary_margin,
            "t_max": self.t_max,
            "seed": self.seed,
        }


@dataclass(frozen=True, eq=False)
class PassivityReport:
    max_violation: float
    tolerance: float
    ds_dt: np.ndarray
    supply: np.ndarray
    skipped_steps: Tuple[int, ...] = ()

    @property
    def passive(self) -> bool:
        return self.max_violation <= self.tolerance
