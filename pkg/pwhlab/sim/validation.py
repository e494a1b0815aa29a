"""
Monte-Carlo Certificate Validation
==================================
Initial conditions are classified by where their trajectories end up:
inside the convergence ball around x̄ (Converged), outside Ω⁺ or beyond the
runaway radius (Diverged), or neither within t_max (Timeout).
"""

import logging
from concurrent.futures import ThreadPoolExecutor
from typing import List, Optional, Sequence, Tuple

import numpy as np

from pwhlab import config
from pwhlab.equilibrium.schema import Equilibrium
from pwhlab.errors import NumericError
from pwhlab.model.system import PwhSystem
from pwhlab.roa import RoaEstimate, RoaMode, bounding_box, contains
from pwhlab.shifted import ShiftedContext
from pwhlab.sim.integrator import integrate
from pwhlab.sim.schema import IcClass, RoaValidationReport, StopReason, Trajectory

logger = logging.getLogger(__name__)

CONVERGE_RADIUS = 1e-3
DIVERGE_RADIUS = 1e3
DEFAULT_T_MAX_CIRCUIT = 0.5
DEFAULT_T_MAX_SG = 2e5       # Slowest generator time constant is ~3.7e3 s
SG_SAMPLING_MARGIN = 0.01    # Relative gap kept above the half-line threshold
MAX_REJECTION_ROUNDS = 1000

CLASS_OF_STOP = {
    StopReason.CONVERGED: IcClass.CONVERGED,
    StopReason.LEFT_DOMAIN: IcClass.DIVERGED,
    StopReason.DIVERGED: IcClass.DIVERGED,
    StopReason.REACHED_T_END: IcClass.TIMEOUT,
    StopReason.STEP_UNDERFLOW: IcClass.TIMEOUT,
}


def default_t_max(sys: PwhSystem) -> float:
    return DEFAULT_T_MAX_SG if sys.label == "sg" else DEFAULT_T_MAX_CIRCUIT


def _radii(x_bar: np.ndarray) -> Tuple[float, float]:
    scale = 1.0 + float(np.linalg.norm(x_bar))
    return CONVERGE_RADIUS * scale, DIVERGE_RADIUS * scale


def simulate_ic(sys: PwhSystem, eq: Equilibrium, x0, t_max: Optional[float] = None,
                rel_tol: float = 1e-8, abs_tol: float = 1e-10) -> Tuple[IcClass, Trajectory]:
    """Integrate from x0 until it converges, diverges or t_max elapses."""
    t_max = t_max or default_t_max(sys)
    x_bar = eq.x_bar
    r_conv, r_div = _radii(x_bar)

    def stop_when(t: float, x: np.ndarray) -> Optional[StopReason]:
        dist = float(np.linalg.norm(x - x_bar))
        if dist <= r_conv:
            return StopReason.CONVERGED
        if dist > r_div:
            return StopReason.DIVERGED
        return None

    traj = integrate(sys, x0, t_max, rel_tol, abs_tol, x_bar=x_bar, stop_when=stop_when)
    return CLASS_OF_STOP[traj.stop_reason], traj


def classify_ic(sys: PwhSystem, eq: Equilibrium, x0, t_max: Optional[float] = None) -> IcClass:
    tag, _ = simulate_ic(sys, eq, x0, t_max)
    return tag


def classify_samples(sys: PwhSystem, eq: Equilibrium, samples: Sequence, t_max: Optional[float] = None,
                     workers: Optional[int] = None) -> List[Tuple[IcClass, Trajectory]]:
    """
    (class, trajectory) per sample, in input order. Samples are independent
    and run on a thread pool when more than one worker is configured.
    """
    workers = workers or config.WORKERS

    def run(x0) -> Tuple[IcClass, Trajectory]:
        return simulate_ic(sys, eq, x0, t_max)

    if workers <= 1 or len(samples) <= 1:
        return [run(x0) for x0 in samples]
    with ThreadPoolExecutor(max_workers=workers) as executor:
        return list(executor.map(run, samples))


def sample_certificate(est: RoaEstimate, ctx: ShiftedContext, n_samples: int,
                       rng: np.random.Generator, margin: float = 0.0) -> np.ndarray:
    """
    Uniform samples from the certificate set. Sublevel sets use rejection in
    the bounding box, shrunk to S < (1 − margin)·k; the half-line uses
    ω ∈ ((1 + margin)·threshold, 2·ω̄_s).
    """
    sys = ctx.sys
    if est.mode is RoaMode.SG_HALF_LINE:
        m = 1.0 / sys.M[0, 0]
        omega_bar = float(sys.M[0, 0] * ctx.x_bar[0])
        lo = (1.0 + margin) * est.threshold_omega
        omega = rng.uniform(lo, 2.0 * omega_bar, size=n_samples)
        return (m * omega).reshape(-1, 1)

    half = bounding_box(est, ctx)
    shrink = 1.0 - margin
    accepted: List[np.ndarray] = []
    for _ in range(MAX_REJECTION_ROUNDS):
        batch = ctx.x_bar + rng.uniform(-1.0, 1.0, size=(max(n_samples, 16), sys.n)) * half
        for x in batch:
            d = x - ctx.x_bar
            if 0.5 * float(d @ sys.M @ d) < shrink * est.level_k and contains(est, ctx, x):
                accepted.append(x)
                if len(accepted) == n_samples:
                    return np.vstack(accepted)
    raise NumericError(f"Rejection sampling produced only {len(accepted)} of {n_samples} points")


def validate_roa(sys: PwhSystem, eq: Equilibrium, est: RoaEstimate, n_samples: int,
                 seed: Optional[int] = None, t_max: Optional[float] = None,
                 margin: Optional[float] = None) -> RoaValidationReport:
    """Classify n_samples uniform points of the certificate; any non-converging one is a counterexample."""
    ctx = ShiftedContext(sys, eq.x_bar)
    if margin is None:
        margin = SG_SAMPLING_MARGIN if est.mode is RoaMode.SG_HALF_LINE else 0.0
    t_max = t_max or default_t_max(sys)
    rng = np.random.default_rng(seed)
    samples = sample_certificate(est, ctx, n_samples, rng, margin) if n_samples > 0 else np.empty((0, sys.n))

    results = classify_samples(sys, eq, samples, t_max)
    tags = [tag for tag, _ in results]
    counterexamples = sorted(
        tuple(float(v) for v in x0)
        for x0, tag in zip(samples, tags) if tag is not IcClass.CONVERGED
    )
    report = RoaValidationReport(
        n_samples=len(samples),
        n_converged=tags.count(IcClass.CONVERGED),
        n_diverged=tags.count(IcClass.DIVERGED),
        n_timeout=tags.count(IcClass.TIMEOUT),
        counterexamples=counterexamples,
        boundary_margin=margin,
        t_max=t_max,
        seed=seed,
    )
    logger.info(
        f"Validated {report.n_samples} samples: {report.n_converged} converged, "
        f"{report.n_diverged} diverged, {report.n_timeout} timed out"
    )
    if counterexamples:
        logger.warning(f"{len(counterexamples)} counterexamples inside the certificate")
    return report

