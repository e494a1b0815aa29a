from typing import Sequence, Tuple

import numpy as np

from pwhlab.errors import InputError
from pwhlab.numkernel import cholesky_pd, is_skew, is_symmetric, sym_eig_extremes

SKEW_TOLERANCE = 1e-14
DISSIPATION_FLOOR = -1e-12


def validate_square(name: str, a: np.ndarray, n: int) -> None:
    if a.shape != (n, n):
        raise InputError(f"{name} must be {n}x{n}, got {a.shape[0]}x{a.shape[1]}")


def validate_skew(J: np.ndarray) -> None:
    """Ensure J + Jᵀ = 0 entrywise."""
    if not is_skew(J, SKEW_TOLERANCE):
        worst = float(np.max(np.abs(J + J.T)))
        raise InputError(f"J is not skew-symmetric (max |J + Jᵀ| = {worst:.3e})")


def validate_dissipation(R: np.ndarray) -> None:
    """Ensure R is symmetric positive semidefinite."""
    if not is_symmetric(R):
        raise InputError("R is not symmetric")
    lam_min, _ = sym_eig_extremes(R)
    if lam_min < DISSIPATION_FLOOR:
        raise InputError(f"R is not positive semidefinite (smallest eigenvalue {lam_min:.3e})")


def validate_positive_definite(name: str, a: np.ndarray) -> None:
    if not is_symmetric(a):
        raise InputError(f"{name} is not symmetric")
    if not cholesky_pd(a).positive_definite:
        raise InputError(f"{name} is not positive definite")


def validate_power_channels(channels: Sequence[int], n: int) -> Tuple[int, ...]:
    result = []
    for idx in channels:
        if isinstance(idx, bool) or int(idx) != idx:
            raise InputError(f"Power channel index {idx!r} is not an integer")
        if not 0 <= int(idx) < n:
            raise InputError(f"Power channel index {idx} out of range for n={n}")
        result.append(int(idx))
    if len(set(result)) != len(result):
        raise InputError(f"Duplicate power channel indices in {list(channels)}")
    return tuple(sorted(result))


def validate_u_bar(u_bar: np.ndarray, channels: Tuple[int, ...]) -> None:
    """Constant power may only act on power channels."""
    inactive = [i for i in range(u_bar.shape[0]) if i not in channels]
    bad = [i for i in inactive if u_bar[i] != 0.0]
    if bad:
        raise InputError(f"u_bar must be zero outside the power channels; nonzero at {bad}")
