"""
Export Service
==============
File writers for trajectories, phase studies, sweeps and reports. Numbers
are printed with 17 significant digits so every file reloads losslessly.
"""

import csv
import logging
import os
from typing import List, Optional, Tuple

import numpy as np

from pwhlab import config
from pwhlab.errors import InputError, UnsupportedRenderError
from pwhlab.pipelines.analysis_pipeline import AnalysisReport
from pwhlab.pipelines.phase_pipeline import PhaseResult
from pwhlab.pipelines.sweep_pipeline import SweepResult
from pwhlab.roa import RoaMode, ellipsoid_principal_axes
from pwhlab.shifted import ShiftedContext
from pwhlab.sim import IcClass, Trajectory

logger = logging.getLogger(__name__)

CLASS_COLORS = {
    IcClass.CONVERGED: "#2e7d32",
    IcClass.DIVERGED: "#c62828",
    IcClass.TIMEOUT: "#9e9e9e",
}
SVG_SIZE = 640
SVG_PAD = 60
N_TICKS = 5


def fmt(value: Optional[float]) -> str:
    if value is None:
        return ""
    return f"{float(value):.17g}"


def _prepare(path: str) -> str:
    directory = os.path.dirname(path)
    if directory:
        os.makedirs(directory, exist_ok=True)
    return path


def resolve_output_path(path: str) -> str:
    """Bare file names go to the configured output directory."""
    if os.path.dirname(path):
        return path
    return os.path.join(config.OUTPUT_DIR, path)


# --- CSV ---

def write_trajectory_csv(path: str, traj: Trajectory) -> None:
    """Header `t,x1,...,xn,S`, one row per accepted step."""
    n = traj.states.shape[1]
    s_vals = traj.s_values if traj.s_values is not None else np.full(len(traj.times), np.nan)
    with open(_prepare(path), "w", newline="") as f:
        writer = csv.writer(f)
        writer.writerow(["t"] + [f"x{i + 1}" for i in range(n)] + ["S"])
        for t, x, s in zip(traj.times, traj.states, s_vals):
            writer.writerow([fmt(t)] + [fmt(v) for v in x] + [fmt(s)])
    logger.info(f"Wrote {len(traj.times)} trajectory rows to {path}")


def read_trajectory_csv(path: str) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Inverse of write_trajectory_csv: (times, states, S values)."""
    with open(path, "r", newline="") as f:
        reader = csv.reader(f)
        header = next(reader)
        if not header or header[0] != "t" or header[-1] != "S":
            raise InputError(f"{path} is not a trajectory file (header {header})")
        rows = [[float(v) for v in row] for row in reader if row]
    data = np.array(rows, dtype=float).reshape(-1, len(header))
    return data[:, 0], data[:, 1:-1], data[:, -1]


def write_phase_csv(path: str, result: PhaseResult) -> None:
    """Header `x0_1,...,x0_n,class,t_stop`, plus a threshold column (state units) for the half-line."""
    n = result.samples.shape[1]
    threshold = result.threshold
    header = [f"x0_{i + 1}" for i in range(n)] + ["class", "t_stop"]
    if threshold is not None:
        header.append("threshold")
    with open(_prepare(path), "w", newline="") as f:
        writer = csv.writer(f)
        writer.writerow(header)
        for x0, tag, t_stop in result.rows():
            row = [fmt(v) for v in x0] + [tag, fmt(t_stop)]
            if threshold is not None:
                row.append(fmt(threshold))
            writer.writerow(row)
    logger.info(f"Wrote {len(result.samples)} phase rows to {path}")


def write_sweep_csv(path: str, result: SweepResult) -> None:
    """Header `{param},existence,lambda_min,{k_d|threshold_omega}`; absent values stay empty."""
    with open(_prepare(path), "w", newline="") as f:
        writer = csv.writer(f)
        writer.writerow([result.param, "existence", "lambda_min", result.certificate_column])
        for row in result.rows:
            writer.writerow([fmt(row.value), str(row.existence).lower(), fmt(row.lambda_min), fmt(row.certificate)])
    logger.info(f"Wrote {len(result.rows)} sweep rows to {path}")


# --- JSON ---

def write_json_report(path: str, report: AnalysisReport) -> str:
    path = _prepare(resolve_output_path(path))
    with open(path, "w") as f:
        f.write(report.model_dump_json(indent=2))
    logger.info(f"Wrote analysis report to {path}")
    return path


# --- SVG ---

class _Frame:
    """Maps state coordinates to SVG pixels (y axis pointing up)."""

    def __init__(self, lower: np.ndarray, upper: np.ndarray):
        self.lower = lower
        self.span = np.where(upper - lower > 0.0, upper - lower, 1.0)
        self.inner = SVG_SIZE - 2 * SVG_PAD

    def px(self, x: float, y: float) -> Tuple[float, float]:
        u = SVG_PAD + (x - self.lower[0]) / self.span[0] * self.inner
        v = SVG_SIZE - SVG_PAD - (y - self.lower[1]) / self.span[1] * self.inner
        return u, v

    def scale(self) -> Tuple[float, float]:
        return self.inner / self.span[0], self.inner / self.span[1]


def _axes(frame: _Frame, upper: np.ndarray) -> List[str]:
    lo, inner = SVG_PAD, SVG_SIZE - SVG_PAD
    parts = [
        f'<rect x="{lo}" y="{lo}" width="{frame.inner}" height="{frame.inner}" fill="none" stroke="#000"/>'
    ]
    for value in np.linspace(frame.lower[0], upper[0], N_TICKS):
        u, _ = frame.px(value, frame.lower[1])
        parts.append(f'<line x1="{u:.2f}" y1="{inner}" x2="{u:.2f}" y2="{inner + 6}" stroke="#000"/>')
        parts.append(f'<text x="{u:.2f}" y="{inner + 20}" font-size="11" text-anchor="middle">{value:.4g}</text>')
    for value in np.linspace(frame.lower[1], upper[1], N_TICKS):
        _, v = frame.px(frame.lower[0], value)
        parts.append(f'<line x1="{lo - 6}" y1="{v:.2f}" x2="{lo}" y2="{v:.2f}" stroke="#000"/>')
        parts.append(f'<text x="{lo - 10}" y="{v + 4:.2f}" font-size="11" text-anchor="end">{value:.4g}</text>')
    parts.append(f'<text x="{SVG_SIZE / 2}" y="{SVG_SIZE - 15}" font-size="13" text-anchor="middle">x1</text>')
    parts.append(f'<text x="15" y="{SVG_SIZE / 2}" font-size="13" text-anchor="middle">x2</text>')
    return parts


def _ellipse(frame: _Frame, result: PhaseResult) -> List[str]:
    est = result.certificate
    if est is None or est.mode is RoaMode.SG_HALF_LINE:
        return []
    ctx = ShiftedContext(result.op.sys, result.op.stable.x_bar)
    axes = ellipsoid_principal_axes(est, ctx)
    cx, cy = frame.px(*ctx.x_bar)
    sx, sy = frame.scale()
    # Pixel-space ellipse from the principal axes: a linear image of the unit circle
    first = axes.directions[:, 0] * axes.semi_axes[0]
    second = axes.directions[:, 1] * axes.semi_axes[1]
    a, b = first[0] * sx, -first[1] * sy
    c, d = second[0] * sx, -second[1] * sy
    return [
        f'<ellipse cx="0" cy="0" rx="1" ry="1" fill="none" stroke="#1565c0" stroke-width="1.5" vector-effect="non-scaling-stroke" '
        f'transform="matrix({a:.6g} {b:.6g} {c:.6g} {d:.6g} {cx:.4f} {cy:.4f})"/>'
    ]


def write_phase_svg(path: str, result: PhaseResult) -> None:
    """Trajectory polylines colored by class, the certificate ellipse and axis ticks."""
    if result.samples.shape[1] != 2:
        raise UnsupportedRenderError(f"SVG rendering needs a 2-dimensional state, got n = {result.samples.shape[1]}")
    frame = _Frame(result.lower, result.upper)
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{SVG_SIZE}" height="{SVG_SIZE}" '
        f'viewBox="0 0 {SVG_SIZE} {SVG_SIZE}">',
        '<defs><clipPath id="plot">'
        f'<rect x="{SVG_PAD}" y="{SVG_PAD}" width="{frame.inner}" height="{frame.inner}"/>'
        '</clipPath></defs>',
        '<rect width="100%" height="100%" fill="#fff"/>',
        '<g clip-path="url(#plot)">',
    ]
    for tag, traj in zip(result.classes, result.trajectories):
        points = " ".join("{:.2f},{:.2f}".format(*frame.px(x[0], x[1])) for x in traj.states)
        parts.append(f'<polyline points="{points}" fill="none" stroke="{CLASS_COLORS[tag]}" stroke-width="1"/>')
    parts.extend(_ellipse(frame, result))
    ux, uy = frame.px(*result.op.stable.x_bar)
    parts.append(f'<circle cx="{ux:.2f}" cy="{uy:.2f}" r="3" fill="#000"/>')
    parts.append("</g>")
    parts.extend(_axes(frame, result.upper))
    parts.append("</svg>")

    with open(_prepare(path), "w") as f:
        f.write("\n".join(parts))
    logger.info(f"Wrote phase plot with {len(result.trajectories)} trajectories to {path}")
