"""
Phase Pipeline
==============
Classify a grid or a random cloud of initial conditions around the stable
equilibrium, keeping the trajectories for plotting.
"""

import logging
from dataclasses import dataclass
from typing import List, Optional, Tuple

import numpy as np

from pwhlab.errors import InputError
from pwhlab.model.system import PwhSystem, in_domain
from pwhlab.pipelines.analysis_pipeline import OperatingPoint, resolve_operating_point
from pwhlab.roa import RoaEstimate, RoaMode, bounding_box
from pwhlab.shifted import ShiftedContext
from pwhlab.sim import IcClass, Trajectory, classify_samples, default_t_max

logger = logging.getLogger(__name__)

SPAN_FACTOR = 3.0        # Plot box in certificate half-widths
FALLBACK_SPAN = 0.5      # Relative to |x̄| without a sublevel certificate


@dataclass(frozen=True, eq=False)
class PhaseResult:
    op: OperatingPoint
    samples: np.ndarray
    classes: List[IcClass]
    trajectories: List[Trajectory]
    lower: np.ndarray
    upper: np.ndarray
    t_max: float

    @property
    def certificate(self) -> Optional[RoaEstimate]:
        return self.op.primary_certificate

    @property
    def threshold(self) -> Optional[float]:
        """Half-line threshold in state units (angular momentum M·ω̄_u), comparable with x0_1."""
        est = self.certificate
        if est is None or est.mode is not RoaMode.SG_HALF_LINE:
            return None
        return est.threshold_omega / float(self.op.sys.M[0, 0])

    def rows(self) -> List[Tuple[Tuple[float, ...], str, float]]:
        return [
            (tuple(float(v) for v in x0), tag.value, traj.t_stop)
            for x0, tag, traj in zip(self.samples, self.classes, self.trajectories)
        ]


def phase_box(op: OperatingPoint) -> Tuple[np.ndarray, np.ndarray]:
    """Sampling box around x̄: a few certificate half-widths, or a fraction of |x̄|."""
    sys, x_bar = op.sys, op.stable.x_bar
    est = op.primary_certificate
    if est is not None and est.mode is RoaMode.SG_HALF_LINE:
        # The whole half-line up to twice the stable speed, plus the region below it
        return np.zeros(1), 2.0 * x_bar
    if est is not None:
        half = SPAN_FACTOR * bounding_box(est, ShiftedContext(sys, x_bar))
    else:
        half = FALLBACK_SPAN * np.maximum(np.abs(x_bar), 1e-12)
    return x_bar - half, x_bar + half


def grid_points(lower: np.ndarray, upper: np.ndarray, rows: int, cols: int) -> np.ndarray:
    """rows × cols grid for 2-D states; rows·cols evenly spaced points for 1-D states."""
    if rows <= 0 or cols <= 0:
        raise InputError(f"Empty grid {rows}x{cols}")
    n = lower.size
    if n == 1:
        count = rows * cols
        # Skip the lower edge, which is the boundary of Ω⁺ for the generator
        return np.linspace(lower[0], upper[0], count + 1)[1:].reshape(-1, 1)
    if n != 2:
        raise InputError(f"Grid sampling needs a 1- or 2-dimensional state, got n = {n}")
    xs = np.linspace(lower[0], upper[0], cols)
    ys = np.linspace(lower[1], upper[1], rows)
    gx, gy = np.meshgrid(xs, ys)
    return np.column_stack([gx.ravel(), gy.ravel()])


def run_phase(doc, sys: PwhSystem, grid: Optional[Tuple[int, int]] = None, samples: Optional[int] = None,
              t_max: Optional[float] = None, seed: Optional[int] = None, refined: bool = False) -> PhaseResult:
    """
    Classify initial conditions on a grid (1-D or 2-D states) or drawn
    uniformly from the sampling box (any n). Points outside Ω⁺ are dropped.
    """
    if (grid is None) == (samples is None):
        raise InputError("Give exactly one of a grid or a sample count")
    op = resolve_operating_point(doc, sys, refined)
    lower, upper = phase_box(op)

    if grid is not None:
        points = grid_points(lower, upper, *grid)
    else:
        if samples <= 0:
            raise InputError(f"Sample count must be positive, got {samples}")
        rng = np.random.default_rng(seed)
        points = rng.uniform(lower, upper, size=(samples, sys.n))

    inside = np.array([in_domain(sys, x) for x in points], dtype=bool)
    if not inside.all():
        logger.info(f"Dropping {int((~inside).sum())} initial conditions outside Ω⁺")
    points = points[inside]
    if len(points) == 0:
        raise InputError("No initial condition inside the operating domain")

    t_max = t_max or default_t_max(sys)
    results = classify_samples(sys, op.stable, points, t_max)
    classes = [tag for tag, _ in results]
    logger.info(
        f"Phase study: {classes.count(IcClass.CONVERGED)} converged, "
        f"{classes.count(IcClass.DIVERGED)} diverged, {classes.count(IcClass.TIMEOUT)} timed out"
    )
    return PhaseResult(
        op=op,
        samples=points,
        classes=classes,
        trajectories=[traj for _, traj in results],
        lower=lower,
        upper=upper,
        t_max=t_max,
    )
