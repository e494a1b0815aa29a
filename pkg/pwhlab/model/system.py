"""
PwH System
==========
ẋ = (J − R) M x + G(x) ū + u_c on Ω⁺ = {x : (Mx)_i > 0 for every power channel i},
with quadratic Hamiltonian H(x) = ½ xᵀ M x and G(x) = diag(1/(Mx)_i) on the
power channels (zero elsewhere).
"""

from dataclasses import dataclass
from typing import Optional, Sequence, Tuple

import numpy as np

from pwhlab.errors import DomainError
from pwhlab.model import validators
from pwhlab.numkernel import as_matrix, as_vector, is_diagonal


@dataclass(frozen=True, eq=False)
class PwhSystem:
    """Immutable system description. Arrays are stored read-only."""
    J: np.ndarray
    R: np.ndarray
    M: np.ndarray
    power_channels: Tuple[int, ...]
    u_bar: np.ndarray
    u_c: np.ndarray
    label: str = "raw"
    units: Optional[str] = None

    def __post_init__(self):
        J = as_matrix(self.J, "J")
        n = J.shape[0]
        R = as_matrix(self.R, "R")
        M = as_matrix(self.M, "M")
        for name, mat in (("J", J), ("R", R), ("M", M)):
            validators.validate_square(name, mat, n)
        validators.validate_skew(J)
        validators.validate_dissipation(R)
        validators.validate_positive_definite("M", M)

        channels = validators.validate_power_channels(self.power_channels, n)
        u_bar = as_vector(self.u_bar, n, "u_bar")
        u_c = as_vector(self.u_c, n, "u_c")
        validators.validate_u_bar(u_bar, channels)

        for name, value in (("J", J), ("R", R), ("M", M), ("u_bar", u_bar), ("u_c", u_c)):
            value.setflags(write=False)
            object.__setattr__(self, name, value)
        object.__setattr__(self, "power_channels", channels)

    @property
    def n(self) -> int:
        return self.J.shape[0]

    @property
    def inactive_channels(self) -> Tuple[int, ...]:
        """The index set I: channels without a power input."""
        return tuple(i for i in range(self.n) if i not in self.power_channels)

    @property
    def channel_mask(self) -> np.ndarray:
        mask = np.zeros(self.n, dtype=bool)
        mask[list(self.power_channels)] = True
        return mask

    @property
    def is_diagonal(self) -> bool:
        """Diagonal M and R, the structure required by the per-coordinate ROA bound."""
        return is_diagonal(self.M) and is_diagonal(self.R)

    @property
    def is_linear(self) -> bool:
        return not np.any(self.u_bar != 0.0)

    def summary(self) -> str:
        return (
            f"{self.label}: n={self.n}, power channels={list(self.power_channels)}, "
            f"u_bar={self.u_bar.tolist()}, u_c={self.u_c.tolist()}"
        )


# --- STATE FUNCTIONS ---

def _state(sys: PwhSystem, x) -> np.ndarray:
    return as_vector(x, sys.n, "x")


def hamiltonian(sys: PwhSystem, x) -> float:
    x = _state(sys, x)
    return 0.5 * float(x @ sys.M @ x)


def grad_h(sys: PwhSystem, x) -> np.ndarray:
    """∇H(x) = M x."""
    return sys.M @ _state(sys, x)


def in_domain(sys: PwhSystem, x) -> bool:
    """x ∈ Ω⁺: (Mx)_i > 0 on every power channel."""
    e = grad_h(sys, x)
    return bool(np.all(e[sys.channel_mask] > 0.0))


def _require_domain(sys: PwhSystem, x) -> np.ndarray:
    x = _state(sys, x)
    if not in_domain(sys, x):
        raise DomainError(f"State {x.tolist()} is outside the operating domain Ω⁺")
    return x


def input_gains(sys: PwhSystem, x) -> np.ndarray:
    """Diagonal of G(x): 1/(Mx)_i on power channels, 0 elsewhere."""
    x = _require_domain(sys, x)
    return _gains(sys, sys.M @ x)


def _gains(sys: PwhSystem, e: np.ndarray) -> np.ndarray:
    g = np.zeros(sys.n)
    mask = sys.channel_mask
    g[mask] = 1.0 / e[mask]
    return g


def input_matrix_g(sys: PwhSystem, x) -> np.ndarray:
    return np.diag(input_gains(sys, x))


def raw_vector_field(sys: PwhSystem, x: np.ndarray, u: Optional[np.ndarray] = None) -> np.ndarray:
    """
    Right-hand side without the domain check, for integrator stages that may
    probe slightly outside Ω⁺. `u` replaces ū when given.
    """
    e = sys.M @ x
    u_in = sys.u_bar if u is None else u
    g = np.zeros(sys.n)
    mask = sys.channel_mask
    with np.errstate(divide="ignore", invalid="ignore"):
        g[mask] = 1.0 / e[mask]
    return (sys.J - sys.R) @ e + g * u_in + sys.u_c


def vector_field(sys: PwhSystem, x, u: Optional[Sequence[float]] = None) -> np.ndarray:
    """ẋ = (J − R) M x + G(x) u + u_c with u = ū unless given."""
    x = _require_domain(sys, x)
    u_in = None if u is None else as_vector(u, sys.n, "u")
    return raw_vector_field(sys, x, u_in)


def jacobian(sys: PwhSystem, x) -> np.ndarray:
    """(J − R) M − D(x) M with D(x) = diag(ū_i / (Mx)_i²) on power channels."""
    x = _require_domain(sys, x)
    e = sys.M @ x
    d = np.zeros(sys.n)
    mask = sys.channel_mask
    d[mask] = sys.u_bar[mask] / e[mask] ** 2
    return (sys.J - sys.R) @ sys.M - np.diag(d) @ sys.M


def power_balance(sys: PwhSystem, x) -> float:
    """dH/dt along ẋ = f(x): −∇HᵀR∇H + Σ ū_i + ∇Hᵀu_c."""
    x = _require_domain(sys, x)
    e = sys.M @ x
    return float(-e @ sys.R @ e + np.sum(sys.u_bar[sys.channel_mask]) + e @ sys.u_c)


def residual_norm(sys: PwhSystem, x) -> float:
    return float(np.linalg.norm(vector_field(sys, x)))


def equilibrium_tolerance(sys: PwhSystem, factor: float = 1e-8) -> float:
    """Residual tolerance scaled by the constant offset: factor * (1 + ‖u_c‖)."""
    return factor * (1.0 + float(np.linalg.norm(sys.u_c)))


def check_state(sys: PwhSystem, x) -> np.ndarray:
    """Validate a state vector (finite, right length) and return a copy."""
    return _state(sys, x)
